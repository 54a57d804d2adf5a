"""Torus-type presentations: quasi shapes, visible and hidden pairs."""

import random
from fractions import Fraction

import pytest

from torusdecomp import (
    QQ,
    BaseIdentityFails,
    CurveNotPreserved,
    DecompositionError,
    InvisibleData23,
    InvisibleData24,
    PolyRing,
    ProjectiveTransform,
    QuasiTorusDecomposition,
    VisibleFactorization,
    VisibleQuarticDecomposition,
    ZeroC,
    build_invisible_23,
    build_invisible_24,
    canonicalize_visible,
    expand_visible,
    quasi_chain,
    quasi_step,
    solve_visible_quartic,
    transform_decomposition,
    verify_quasi,
    verify_visible_quartic,
)


def _passes(report):
    return all(row["status"] == "pass" for row in report)


def _row(report, name):
    for row in report:
        if row["name"] == name:
            return row
    raise AssertionError("no check named %r" % name)


def _xyz(tower=QQ):
    ring = PolyRing(tower, "X Y Z")
    return ring, ring.var("X"), ring.var("Y"), ring.var("Z")


def _three_cusp_quartic(tower=QQ):
    ring, X, Y, Z = _xyz(tower)
    s = X * X + Y * Y
    return (Z ** 4 - 6 * s * Z ** 2 + 8 * (X * X - 3 * Y * Y) * X * Z
            - 3 * s * s)


# ----- quasi decompositions


def test_verify_quasi_passes():
    ring = PolyRing(QQ, "x y")
    x, y = ring.var("x"), ring.var("y")
    f = y ** 2 - x ** 3
    d = QuasiTorusDecomposition(f, ring.one(), y, -x, 2, 3)
    report = verify_quasi(d)
    assert _passes(report)
    assert _row(report, "identity")["status"] == "pass"
    assert d.r == 0 and d.p == 1 and d.q == 1


def test_verify_quasi_reports_identity_failure():
    ring = PolyRing(QQ, "x y")
    x, y = ring.var("x"), ring.var("y")
    d = QuasiTorusDecomposition(y ** 2 - x ** 3 + 1, ring.one(), y, -x, 2, 3)
    report = verify_quasi(d)
    assert _row(report, "identity")["status"] == "fail"
    assert not _passes(report)


def test_verify_quasi_relaxed_exponents():
    ring = PolyRing(QQ, "x y")
    x, y = ring.var("x"), ring.var("y")
    f = y ** 2 + x ** 4
    strict = QuasiTorusDecomposition(f, ring.one(), y, x, 2, 4)
    report = verify_quasi(strict)
    assert _row(report, "exponents coprime")["status"] == "fail"
    relaxed = QuasiTorusDecomposition(f, ring.one(), y, x, 2, 4, relaxed=True)
    report = verify_quasi(relaxed)
    assert _passes(report)
    assert all(row["name"] != "exponents coprime" for row in report)


def test_verify_quasi_flags_shared_factor():
    ring = PolyRing(QQ, "x y")
    x, y = ring.var("x"), ring.var("y")
    # scale both components by x: the identity survives with f_r = x
    # absorbed, but the coprimality requirement breaks
    f = (y ** 2 - x ** 3) * x ** 6
    d = QuasiTorusDecomposition(f, ring.one(), y * x ** 3, -x ** 3, 2, 3)
    report = verify_quasi(d)
    assert _row(report, "identity")["status"] == "pass"
    assert _row(report, "coprime f_p f_q")["status"] == "fail"


# ----- the visible shape in general degree


def test_expand_visible():
    ring, X, Y, Z = _xyz()
    v = VisibleFactorization(2, 3, 1, 2, X, Y)
    j, G = expand_visible(v)
    assert j == 3
    assert G == X ** 3 + Y ** 2 * Z


def test_visible_factorization_guards():
    ring, X, Y, Z = _xyz()
    with pytest.raises(DecompositionError):
        VisibleFactorization(2, 3, 2, 1, ring.one(), ring.one())
    with pytest.raises(DecompositionError):
        # inner degree above the declared budget
        VisibleFactorization(2, 3, 1, 2, X ** 2, Y)
    v = VisibleFactorization(2, 3, 0, 0, Z ** 2, Z ** 3)
    with pytest.raises(DecompositionError):
        expand_visible(v)


# ----- quartic = conic/line presentations


def _parametric_row_one():
    T = QQ.extend("t")
    ring, X, Y, Z = _xyz(T)
    C = X ** 2 - Y ** 2 - Z ** 2
    t = T.gen("t")
    Q = C ** 2 + Y ** 3 * Z * ring.of(t)
    return Q, C, Y, T.one(), t


def test_verify_visible_quartic_passes():
    Q, C, L, u2, u1 = _parametric_row_one()
    report = verify_visible_quartic(Q, C, L, u2, u1)
    assert _passes(report)
    assert [row["name"] for row in report] == [
        "degrees", "units nonzero", "identity", "coprime conic line",
        "conic not through the whole of Z=0",
        "line not through the whole of Z=0"]


def test_verify_visible_quartic_detects_breakage():
    Q, C, L, u2, u1 = _parametric_row_one()
    ring = C.ring
    X = ring.var("X")
    bad = verify_visible_quartic(Q + X ** 4, C, L, u2, u1)
    assert _row(bad, "identity")["status"] == "fail"
    bad = verify_visible_quartic(Q, C, L, u2, C.tower.zero())
    assert _row(bad, "units nonzero")["status"] == "fail"
    bad = verify_visible_quartic(X ** 3, C, L, u2, u1)
    assert _row(bad, "degrees")["status"] == "fail"


def test_decomposition_container():
    Q, C, L, u2, u1 = _parametric_row_one()
    dec = VisibleQuarticDecomposition(Q, C, L, u2, u1)
    assert dec.curve() == Q
    assert dec.tower == C.tower
    assert dec == VisibleQuarticDecomposition(Q, C, L, u2, u1)
    s = str(dec)
    assert "^2" in s and "^3*Z" in s


def test_canonicalize_visible():
    Q, C, L, u2, u1 = _parametric_row_one()
    dec = VisibleQuarticDecomposition(Q, C, L, u2, u1)
    assert canonicalize_visible(dec) == dec
    tower = C.tower
    scaled = VisibleQuarticDecomposition(
        Q, C * 2, L * 3, u2 * Fraction(1, 4), u1 * Fraction(1, 27))
    canon = canonicalize_visible(scaled)
    assert canon == dec
    assert scaled.curve() == Q
    assert canonicalize_visible(canon) == canon


def test_solve_visible_quartic_parametric_row():
    Q, C, L, u2, u1 = _parametric_row_one()
    sols = solve_visible_quartic(Q)
    assert len(sols) == 1
    assert canonicalize_visible(sols[0]) == \
        VisibleQuarticDecomposition(Q, C, L, u2, u1)
    assert _passes(verify_visible_quartic(
        Q, sols[0].conic, sols[0].line, sols[0].unit2, sols[0].unit1))


def test_solve_visible_quartic_three_cusps():
    F = _three_cusp_quartic()
    sols = solve_visible_quartic(F)
    assert len(sols) == 3
    for dec in sols:
        rep = verify_visible_quartic(dec.quartic, dec.conic, dec.line,
                                     dec.unit2, dec.unit1)
        assert _passes(rep)
    rational = [dec for dec in sols
                if all(c.is_rational() for c in dec.conic.terms.values())]
    assert len(rational) == 1


def test_solve_visible_quartic_smooth_curve():
    ring, X, Y, Z = _xyz()
    assert solve_visible_quartic(X ** 4 + Y ** 4 + Z ** 4) == []


def test_transform_decomposition():
    F = _three_cusp_quartic()
    ring = F.ring
    X, Y, Z = ring.gens()
    C = X ** 2 + Y ** 2 + 4 * X * Z + Z ** 2
    L = X + Z * Fraction(1, 2)
    dec = VisibleQuarticDecomposition(F, C, L, QQ.of(-3), QQ.of(32))
    assert dec.curve() == F
    # the mirror Y -> -Y preserves both the curve and this presentation
    sigma = ProjectiveTransform(QQ, ((1, 0, 0), (0, -1, 0), (0, 0, 1)))
    moved = transform_decomposition(dec, sigma)
    assert canonicalize_visible(moved) == canonicalize_visible(dec)
    stretch = ProjectiveTransform(QQ, ((1, 0, 0), (0, 1, 0), (0, 0, 2)))
    with pytest.raises(CurveNotPreserved):
        transform_decomposition(dec, stretch)


# ----- the degree-raising recurrence


def test_quasi_step_known_values():
    ring = PolyRing(QQ, "x y")
    x, y = ring.var("x"), ring.var("y")
    gp, hp = quasi_step(x, y)
    # the step adjoins a square root of -3 for the odd component
    tower = gp.tower
    assert len(tower.steps) == 1
    assert gp == x ** 3 - y ** 2 * Fraction(4, 3)
    w = tower.gen(tower.names[-1])
    assert (w * w + 3).is_zero()
    lhs = hp * hp - gp ** 3
    rhs = (x ** 6) * (y ** 2 - x ** 3)
    assert (lhs - rhs).is_zero()


def test_quasi_step_random_pairs():
    rng = random.Random(77)
    ring = PolyRing(QQ, "x y")
    x, y = ring.var("x"), ring.var("y")
    for _ in range(5):
        g = ring.zero()
        h = ring.zero()
        for i in range(3):
            for j in range(3 - i):
                g = g + ring.of(rng.randint(-3, 3)) * x ** i * y ** j
                h = h + ring.of(rng.randint(-3, 3)) * x ** i * y ** j
        if g.is_zero():
            g = x
        gp, hp = quasi_step(g, h)
        lhs = hp * hp - gp ** 3
        rhs = g ** 6 * (h * h - g ** 3)
        assert (lhs - rhs).is_zero()


def test_quasi_chain_small():
    ring = PolyRing(QQ, "x y")
    x, y = ring.var("x"), ring.var("y")
    f = y ** 2 - x ** 3
    chain = quasi_chain(f, x, y, 2)
    assert len(chain) == 2
    assert len(chain.products) == 2
    for k in range(1, 3):
        g, h = chain.levels[k]
        prod = chain.products[k - 1]
        lhs = prod ** 6 * chain.f
        assert (lhs - (h * h - g ** 3)).is_zero()
    assert chain.sigma_contains(0, (0, 0))
    assert not chain.sigma_contains(0, (1, 1))


def test_quasi_chain_guards():
    ring = PolyRing(QQ, "x y")
    x, y = ring.var("x"), ring.var("y")
    with pytest.raises(BaseIdentityFails):
        quasi_chain(y ** 2 - x ** 3 + 1, x, y, 1)
    with pytest.raises(DecompositionError):
        quasi_chain(y ** 2 - x ** 3, x, y, 0)


# ----- hidden pairs


def test_build_invisible_23_three_cusp_pair():
    T = QQ.extend("i", (1, 0, 1)).extend("t", (-4, 0, 0, 0, 0, 0, 1))
    ring, X, Y, Z = _xyz(T)
    i, t = T.gen("i"), T.gen("t")
    l1 = (X - Y * i) * t
    l2 = (X + Y * i) * (-(t * t))
    data = InvisibleData23(l1, l2, ring.zero(), T.zero(),
                           t ** 3 * Fraction(1, 2))
    F2, F3, G = build_invisible_23(data)
    assert (F2 ** 3 - F3 ** 2) == Z ** 2 * G
    assert (G + _three_cusp_quartic(T)).is_zero()
    assert data.c1() == -(t * t) * i
    assert not data.c1().is_zero()


def test_invisible_23_guards():
    ring, X, Y, Z = _xyz()
    with pytest.raises(DecompositionError):
        InvisibleData23(ring.zero(), X, Y, 0, 1)
    with pytest.raises(DecompositionError):
        # components must stay off Z
        InvisibleData23(Z, X, Y, 0, 1)
    d = InvisibleData23(X, Y, X, 0, 1, epsilon=-1)
    assert d.l1 == -X


def test_build_invisible_24():
    ring, X, Y, Z = _xyz()
    data = InvisibleData24(-X ** 2 + Y ** 2, ring.zero(), QQ.of(-1), QQ.of(3))
    c = data.c()
    assert c == 2
    F2, F4, G = build_invisible_24(data)
    assert (F2 ** 4 - F4 ** 2) == Z ** 4 * G * 4
    assert G == F2 ** 2 - Z ** 4
    with pytest.raises(ZeroC):
        build_invisible_24(InvisibleData24(X ** 2, ring.zero(),
                                           QQ.of(1), QQ.of(1)))

"""Local singularity analysis: germs, Milnor numbers, classification."""

from fractions import Fraction

import pytest

from torusdecomp import (
    QQ,
    InvalidIncidence,
    LineContained,
    LocalIncidence,
    LocalType,
    NONEXISTENT_ROWS,
    NonIsolated,
    NonReducedCurve,
    PointNotOnCurve,
    PolyRing,
    ProjPoint,
    QLClass,
    SingError,
    TABLE_ROWS,
    classify_QL,
    classify_singularity,
    conic_rank,
    lemma_oracle_invisible23,
    lemma_oracle_invisible24,
    lemma_oracle_visible,
    line_intersection_multiplicity,
    milnor_number,
    multiplicity,
    partial_derivative,
    singular_points,
    type_label,
)


def _xyz():
    ring = PolyRing(QQ, "X Y Z")
    return ring, ring.var("X"), ring.var("Y"), ring.var("Z")


def _origin():
    return ProjPoint(QQ, (0, 0, 1))


def _three_cusp_quartic():
    ring, X, Y, Z = _xyz()
    s = X * X + Y * Y
    return (Z ** 4 - 6 * s * Z ** 2 + 8 * (X * X - 3 * Y * Y) * X * Z
            - 3 * s * s)


# ----- an independent check on Milnor numbers: row-reduce the truncated
# Jacobian quotient and read off its dimension


def _rank(rows):
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        piv = None
        for k in range(r, len(rows)):
            if rows[k][col] != 0:
                piv = k
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col] != 0:
                f = rows[k][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def jacobian_quotient_dimension(f, cutoff):
    """Dimension of k[x,y] / (f_x, f_y, all monomials past cutoff).

    For an isolated singularity at the origin this stabilizes at the
    Milnor number once the cutoff passes the ideal's co-length.
    """
    fx = partial_derivative(f, "x")
    fy = partial_derivative(f, "y")
    monos = [(i, d - i) for d in range(cutoff + 1) for i in range(d + 1)]
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for g in (fx, fy):
        for a, b in monos:
            row = [Fraction(0)] * len(monos)
            hit = False
            for e, c in g.terms.items():
                t = (e[0] + a, e[1] + b)
                if t in index:
                    row[index[t]] = c.as_rational()
                    hit = True
            if hit:
                rows.append(row)
    return len(monos) - _rank(rows)


def test_milnor_chain_of_cusps():
    ring, X, Y, Z = _xyz()
    germ_ring = PolyRing(QQ, "x y")
    x, y = germ_ring.var("x"), germ_ring.var("y")
    P = _origin()
    for n in range(1, 8):
        F = X ** 2 * Z ** (n - 1) + Y ** (n + 1)
        assert milnor_number(F, P) == n
        g = x ** 2 + y ** (n + 1)
        assert jacobian_quotient_dimension(g, 10) == n
        assert jacobian_quotient_dimension(g, 11) == n


def test_milnor_e6_germ():
    ring, X, Y, Z = _xyz()
    F = X ** 3 * Z + Y ** 4
    assert milnor_number(F, _origin()) == 6
    germ_ring = PolyRing(QQ, "x y")
    x, y = germ_ring.var("x"), germ_ring.var("y")
    g = x ** 3 + y ** 4
    assert jacobian_quotient_dimension(g, 10) == 6
    assert jacobian_quotient_dimension(g, 11) == 6


def test_milnor_guards():
    ring, X, Y, Z = _xyz()
    with pytest.raises(PointNotOnCurve):
        milnor_number(X ** 2 + Y * Z, ProjPoint(QQ, (1, 1, 1)))
    with pytest.raises(NonIsolated):
        milnor_number(X ** 2 * Y ** 2, _origin())


def test_multiplicity():
    ring, X, Y, Z = _xyz()
    cusp = Y ** 2 * Z - X ** 3
    assert multiplicity(cusp, _origin()) == 2
    assert multiplicity(cusp, ProjPoint(QQ, (1, 1, 1))) == 1
    assert multiplicity(cusp, ProjPoint(QQ, (1, 2, 1))) == 0
    assert multiplicity(Y ** 3 * Z + X ** 4, _origin()) == 3


def test_line_intersection_multiplicity():
    ring, X, Y, Z = _xyz()
    C = X ** 2 - Y * Z
    P = _origin()
    assert line_intersection_multiplicity(C, Y, P) == 2
    assert line_intersection_multiplicity(C, X, P) == 1
    with pytest.raises(LineContained):
        line_intersection_multiplicity(X * Y, X, P)
    with pytest.raises(SingError):
        # the point must lie on the line
        line_intersection_multiplicity(C, X + Z, P)


def test_classify_plain_germs():
    ring, X, Y, Z = _xyz()
    P = _origin()
    node = X ** 2 * Z - Y ** 2 * Z + X ** 3
    assert classify_singularity(node, P) == LocalType.a(1)
    cusp = Y ** 2 * Z - X ** 3
    assert classify_singularity(cusp, P) == LocalType.a(2)
    tacnode = Y ** 2 * Z ** 2 - X ** 4
    assert classify_singularity(tacnode, P) == LocalType.a(3)
    assert classify_singularity(Y ** 3 * Z + X ** 4, P) == LocalType.e6()


def test_classify_star_of_lines():
    ring, X, Y, Z = _xyz()
    quartic = X ** 3 * Y - X * Y ** 3
    assert classify_singularity(quartic, _origin()) == LocalType.lines(4)


def test_classify_smooth_with_tangency():
    ring, X, Y, Z = _xyz()
    C = X ** 2 - Y * Z
    P = _origin()
    assert classify_singularity(C, P) == LocalType.smooth()
    assert classify_singularity(C, P, line=Y) == LocalType.smooth(2)
    assert classify_singularity(C, P, line=X) == LocalType.smooth(1)
    with pytest.raises(PointNotOnCurve):
        classify_singularity(C, ProjPoint(QQ, (1, 0, 0)))


def test_classify_unsupported_germ():
    ring, X, Y, Z = _xyz()
    F = X ** 3 * Z ** 2 + Y ** 5
    tpe = classify_singularity(F, _origin())
    assert tpe.kind == "unsupported"
    assert tpe.mult == 3
    assert tpe.milnor == 8


def test_proj_point_basics():
    P = ProjPoint(QQ, (2, 0, 2))
    assert P == ProjPoint(QQ, (1, 0, 1))
    assert str(P) == "[1:0:1]"
    assert not P.at_infinity
    Q = ProjPoint(QQ, (3, 1, 0))
    assert Q.at_infinity
    assert str(Q) == "[3:1:0]"
    with pytest.raises(SingError):
        ProjPoint(QQ, (0, 0, 0))


def test_singular_points_three_cusps():
    F = _three_cusp_quartic()
    locus = singular_points(F)
    assert not locus.unresolved
    assert len(locus) == 3
    labels = [type_label(t, pt.at_infinity) for pt, t in locus.points]
    assert labels == ["a2", "a2", "a2"]
    pts = [pt for pt, _t in locus.points]
    assert any(pt == ProjPoint(pt.tower, (1, 0, 1)) for pt in pts)
    # the other two cusps are conjugate over a quadratic extension
    assert any(len(pt.tower.steps) > 0 for pt in pts)


def test_singular_points_rejects_nonreduced():
    ring, X, Y, Z = _xyz()
    with pytest.raises(NonReducedCurve):
        singular_points((X ** 2 + Y * Z) ** 2)


def test_conic_rank():
    ring, X, Y, Z = _xyz()
    assert conic_rank(X ** 2 + Y ** 2 + Z ** 2) == 3
    assert conic_rank(X * Y) == 2
    assert conic_rank((X + Y) ** 2) == 1
    with pytest.raises(SingError):
        conic_rank(X ** 3)


def test_visible_oracle_values():
    def inc(i1, i2, smooth=True):
        return LocalIncidence(i1, i2, smooth)

    assert lemma_oracle_visible(inc(0, 0), False, False) is None
    assert lemma_oracle_visible(inc(1, 0), True, False) == LocalType.a(2)
    assert lemma_oracle_visible(inc(2, 0), True, False) == LocalType.a(5)
    assert lemma_oracle_visible(inc(0, 1), False, True) == LocalType.smooth(2)
    assert lemma_oracle_visible(inc(0, 2), False, True) == LocalType.smooth(4)
    assert lemma_oracle_visible(inc(1, 1), True, True) == LocalType.a(3)
    assert lemma_oracle_visible(inc(1, 2), True, True) == LocalType.a(4)
    assert lemma_oracle_visible(inc(2, 1), True, True) == LocalType.a(6)
    assert lemma_oracle_visible(inc(1, 0, False), True, False) == \
        LocalType.e6()
    assert lemma_oracle_visible(inc(1, 1, False), True, True) == \
        LocalType.lines(4)


def test_visible_oracle_guards():
    with pytest.raises(InvalidIncidence):
        lemma_oracle_visible(LocalIncidence(2, 2, True), True, True)
    with pytest.raises(InvalidIncidence):
        lemma_oracle_visible(LocalIncidence(3, 0, True), True, False)
    with pytest.raises(InvalidIncidence):
        # flags must agree with the multiplicities
        lemma_oracle_visible(LocalIncidence(1, 0, True), False, False)


def test_invisible_oracles():
    assert lemma_oracle_invisible23(True) == \
        ({"a2": 3}, {"a2": 1, "a5": 1})
    assert lemma_oracle_invisible23(True, bitangent=True) == ({"a2": 3},)
    assert lemma_oracle_invisible23(False) == \
        ({"a2": 2, "a2inf": 1}, {"a5": 1, "a2inf": 1})
    assert lemma_oracle_invisible24(0, True) == LocalType.a(1)
    assert lemma_oracle_invisible24(1, True) == LocalType.a(3)
    assert lemma_oracle_invisible24(2, True) == LocalType.a(7)
    assert lemma_oracle_invisible24(1, False) == LocalType.lines(4)
    with pytest.raises(InvalidIncidence):
        lemma_oracle_invisible24(3, True)


def test_table_rows():
    assert len(TABLE_ROWS) == 19
    assert NONEXISTENT_ROWS == {13, 16}
    assert TABLE_ROWS[5] == ({"a2": 3}, "i")
    assert TABLE_ROWS[18] == ({"a7inf": 1}, "v")
    assert TABLE_ROWS[19] == ({"a3inf": 2, "a1": 1}, "iii")


def test_classify_QL_frozen_rows():
    ring, X, Y, Z = _xyz()
    cls = classify_QL(Y ** 3 * Z + X ** 4)
    assert cls == QLClass(12, {"e6": 1}, "iv")
    assert str(cls) == "class 12 (e6, case iv)"
    cls5 = classify_QL(_three_cusp_quartic())
    assert cls5 == QLClass(5, {"a2": 3}, "i")
    assert str(cls5) == "class 5 (3*a2, case i)"


def test_classify_QL_smooth_and_guards():
    ring, X, Y, Z = _xyz()
    smooth = classify_QL(X ** 4 + Y ** 4 + Z ** 4)
    assert smooth.index is None
    assert str(smooth) == "none (smooth, case None)"
    with pytest.raises(SingError):
        classify_QL(X ** 3 + Y ** 3 + Z ** 3)
    with pytest.raises(NonReducedCurve):
        classify_QL((X ** 2 + Y * Z) ** 2)


def test_type_label():
    assert type_label(LocalType.a(2), False) == "a2"
    assert type_label(LocalType.a(3), True) == "a3inf"
    assert type_label(LocalType.e6(), False) == "e6"
    assert type_label(LocalType.lines(4), True) == "lines4"

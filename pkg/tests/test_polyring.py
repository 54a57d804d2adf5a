"""Multivariate polynomial layer: arithmetic, substitution, elimination."""

import random
from fractions import Fraction

import pytest
import sympy

from torusdecomp import (
    QQ,
    InexactDivision,
    PolyError,
    PolyRing,
    ProjectiveTransform,
    SingularTransform,
    evaluate,
    exact_divide,
    factor_linear,
    gcd_multi,
    partial_derivative,
    resultant,
    specialize,
    substitute,
    transform,
)


def _xyz():
    ring = PolyRing(QQ, "X Y Z")
    return ring, ring.var("X"), ring.var("Y"), ring.var("Z")


def test_construction_and_str():
    ring, X, Y, Z = _xyz()
    p = 2 * X ** 2 - 2 * Y ** 2 - Z * Z
    assert str(p) == "2*X^2 - 2*Y^2 - Z^2"
    assert str((X + Y) ** 2) == "X^2 + 2*X*Y + Y^2"
    assert str(ring.zero()) == "0"
    assert str(ring.of(Fraction(1, 2)) * X) == "1/2*X"


def test_arithmetic_identities():
    ring, X, Y, Z = _xyz()
    assert (X + Y) * (X - Y) == X ** 2 - Y ** 2
    p = X ** 3 + Y * Z - 4
    assert (p - p).is_zero()
    assert (p ** 0).terms == ring.one().terms
    cube = (X + Y) ** 3
    assert cube.coeff((2, 1, 0)) == 3
    assert cube.coeff((0, 3, 0)).is_one()


def test_inspection_helpers():
    ring, X, Y, Z = _xyz()
    p = X ** 3 + X * Y ** 2 + Z
    assert p.total_degree() == 3
    assert p.degree_in("Y") == 2
    assert not p.is_homogeneous()
    assert (X ** 3 + X * Y ** 2).is_homogeneous()
    exps, c = (X ** 3 + X * Y ** 2).leading_term()
    assert exps == (3, 0, 0) and c.is_one()
    assert p.coeff_in("X", 1) == Y ** 2
    assert ring.of(7).constant_value() == 7


def test_exact_divide():
    ring, X, Y, Z = _xyz()
    assert exact_divide(X ** 2 - Y ** 2, X - Y) == X + Y
    q = exact_divide((X + 2 * Z) ** 3, (X + 2 * Z) ** 2)
    assert q == X + 2 * Z
    with pytest.raises(InexactDivision):
        exact_divide(X ** 2 + Y ** 2, X - Y)
    with pytest.raises(InexactDivision):
        exact_divide(X, ring.zero())


def test_substitute_variables():
    ring, X, Y, Z = _xyz()
    p = X ** 2 + Y * Z
    q = substitute(p, {"X": Y + Z})
    assert q == Y ** 2 + 2 * Y * Z + Z ** 2 + Y * Z
    # unbound variables map to themselves
    assert substitute(p, {}) == p


def test_substitute_into_another_ring():
    ring, X, Y, Z = _xyz()
    aff = PolyRing(QQ, "x y")
    x, y = aff.var("x"), aff.var("y")
    p = X ** 2 * Z + Y ** 3
    q = substitute(p, {"X": x, "Y": y, "Z": aff.one()}, ring=aff)
    assert q == x ** 2 + y ** 3


def test_substitute_routes_tower_generators():
    T = QQ.extend("t")
    ring = PolyRing(T, "X Y Z")
    X = ring.var("X")
    p = ring.of(T.gen("t")) * X ** 2 + X
    q = substitute(p, {"t": 3})
    assert q.tower == QQ
    assert q == 3 * q.ring.var("X") ** 2 + q.ring.var("X")


def test_specialize_respects_algebraic_steps():
    T = QQ.extend("t")
    T2 = T.extend("r", (-T.gen("t"), 0, 1))
    ring = PolyRing(T2, "X Y Z")
    p = ring.of(T2.gen("r")) * ring.var("X")
    # r's defining polynomial mentions t, so t cannot be specialized away
    with pytest.raises(PolyError):
        specialize(p, {"t": 4})
    with pytest.raises(PolyError):
        specialize(p, {"r": 2})


def test_specialize_value_in_taller_tower():
    T = QQ.extend("s")
    ring = PolyRing(T, "X Y Z")
    p = ring.of(T.gen("s")) * ring.var("X")
    G = QQ.extend("i", (1, 0, 1))
    q = specialize(p, {"s": G.gen("i")})
    assert q.tower == G
    assert q == q.ring.of(G.gen("i")) * q.ring.var("X")


def test_evaluate():
    ring, X, Y, Z = _xyz()
    p = X ** 2 - Y * Z
    assert evaluate(p, (2, 1, 3)) == 1
    assert evaluate(p, {"X": 0, "Y": 1, "Z": 1}) == -1
    assert evaluate(p, (Fraction(1, 2), 0, 5)) == Fraction(1, 4)


def test_partial_derivative_and_euler():
    ring, X, Y, Z = _xyz()
    assert partial_derivative(X ** 3 * Y, "X") == 3 * X ** 2 * Y
    F = X ** 4 + X * Y ** 2 * Z + Z ** 4
    euler = (X * partial_derivative(F, "X")
             + Y * partial_derivative(F, "Y")
             + Z * partial_derivative(F, "Z"))
    assert euler == 4 * F


def test_transform_pullback_convention():
    ring, X, Y, Z = _xyz()
    # points act as row vectors, so variables pull back through columns
    M = ProjectiveTransform(QQ, ((0, 1, 0), (1, 0, 0), (0, 0, 1)))
    assert transform(X, M) == Y
    assert M.apply_point((1, 2, 3)) == (2, 1, 3)
    N = ProjectiveTransform(QQ, ((1, 0, 0), (0, 1, 0), (1, 0, 1)))
    p = X ** 2 * Z + Y ** 3
    assert transform(p, M.compose(N)) == transform(transform(p, N), M)


def test_transform_inverse_roundtrip():
    ring, X, Y, Z = _xyz()
    M = ProjectiveTransform(QQ, ((1, 2, 0), (0, 1, 0), (3, 0, 1)))
    p = X ** 4 - Y ** 3 * Z + X * Y * Z ** 2
    assert transform(transform(p, M), M.inverse()) == p
    assert M.compose(M.inverse()) == ProjectiveTransform.identity(QQ)
    with pytest.raises(SingularTransform):
        ProjectiveTransform(QQ, ((1, 2, 0), (2, 4, 0), (0, 0, 1)))


def _random_binary(rng, ring, dmax):
    x, y = ring.var("x"), ring.var("y")
    p = ring.zero()
    for i in range(dmax + 1):
        for j in range(dmax + 1 - i):
            p = p + ring.of(rng.randint(-4, 4)) * x ** i * y ** j
    return p


def _to_sympy(p, symbols):
    out = sympy.Integer(0)
    for e, c in p.terms.items():
        mono = sympy.Rational(c.as_rational())
        for s, k in zip(symbols, e):
            mono *= s ** k
        out += mono
    return out


def test_resultant_matches_sympy():
    rng = random.Random(4021)
    ring = PolyRing(QQ, "x y")
    xs, ys = sympy.symbols("x y")
    done = 0
    while done < 15:
        p = _random_binary(rng, ring, 3)
        q = _random_binary(rng, ring, 2)
        if p.degree_in("y") < 1 or q.degree_in("y") < 1:
            continue
        if p.degree_in("y") < q.degree_in("y"):
            p, q = q, p
        ours = resultant(p, q, "y")
        reference = sympy.resultant(_to_sympy(p, (xs, ys)),
                                    _to_sympy(q, (xs, ys)), ys)
        assert sympy.expand(_to_sympy(ours, (xs, ys)) - reference) == 0
        done += 1


def test_resultant_known_values():
    ring = PolyRing(QQ, "x y")
    x, y = ring.var("x"), ring.var("y")
    assert resultant(x ** 2 + y, x + 2, "x") == y + 4
    # shared root forces a zero resultant
    assert resultant((x - y) * (x + 1), (x - y) * (x + 2), "x").is_zero()


def test_gcd_multi():
    ring, X, Y, Z = _xyz()
    g = X + Y
    a = g * (X - Y)
    b = g * (X + 2 * Z)
    d = gcd_multi(a, b)
    assert d.total_degree() == 1
    assert exact_divide(a, d) is not None
    assert (d * d.tower.of(1)) == g or d == g
    coprime = gcd_multi(X + Y, X + Z)
    assert coprime.is_constant()
    # repeated factor carries through
    d2 = gcd_multi(g ** 2 * X, g ** 2 * Z)
    assert d2.total_degree() == 2


def test_factor_linear():
    ring, X, Y, Z = _xyz()
    p = (X - 2 * Y) ** 2 * (X + 3 * Y)
    facs, rem = factor_linear(p)
    assert rem.is_constant()
    assert sorted(m for _f, m in facs) == [1, 2]
    rebuilt = ring.of(rem)
    for f, m in facs:
        rebuilt = rebuilt * f ** m
    assert rebuilt == p


def test_factor_linear_adjoins_square_roots():
    ring, X, Y, Z = _xyz()
    p = X ** 2 - 2 * Y ** 2
    facs, rem = factor_linear(p, adjoin=True)
    assert sum(m for _f, m in facs) == 2
    tower = rem.tower
    assert len(tower.steps) == 1
    rebuilt = facs[0][0].ring.of(rem.constant_value())
    for f, m in facs:
        rebuilt = rebuilt * f ** m
    assert rebuilt == p._lift_to(tower)

"""Degeneration machinery on top of the quartic decompositions.

Two constructions live here.  A SexticFamily deforms the sextic
F2'^2 + F1'^3 Z^3-shape attached to a quartic decomposition so that the
t = 0 member is the quartic plus a double line, while every member keeps
a double point on that line.  A QuarticFamily is one of four explicit
parameter families of quartics whose specializations walk between
configuration classes; degeneration_check classifies a specialization
and compares against the claimed class.
"""

from fractions import Fraction

from .fieldtower import ExtensionStep, QQ, lift, tower_extend
from .localsing import ProjPoint, SingError, affine_germ, classify_QL
from .polyring import (
    PolyRing,
    evaluate,
    gcd_multi,
    partial_derivative,
    substitute,
)


class KConditionFails(Exception):
    """A deformation form K vanishes at (0, 1)."""


class BasePointMultiplicityFails(Exception):
    """The family does not keep an order-2 point at the base point."""


def _check(name, ok, detail=""):
    return {"name": name, "status": "pass" if ok else "fail",
            "detail": detail}


def _fresh_name(tower, base):
    taken = {s.name for s in tower.steps}
    if base not in taken:
        return base
    k = 1
    while "%s%d" % (base, k) in taken:
        k += 1
    return "%s%d" % (base, k)


def _int_root(n, k):
    """Exact integer k-th root, or None."""
    if n < 0:
        if k % 2 == 0:
            return None
        r = _int_root(-n, k)
        return None if r is None else -r
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo ** k == n else None


def _rational_root(q, k):
    num = _int_root(int(q.numerator), k)
    if num is None:
        return None
    den = _int_root(int(q.denominator), k)
    if den is None:
        return None
    return Fraction(int(num), int(den))


def _root_gen(tower, value, k, prefname):
    """An element whose k-th power is value, adjoining a generator when no
    rational root exists and no step of the tower already provides one."""
    if value.is_zero():
        raise ValueError("roots of zero are not unit data")
    if value.is_rational():
        r = _rational_root(value.as_rational(), k)
        if r is not None:
            return tower, tower.of(r)
    for step in tower.steps:
        if not step.is_algebraic or len(step.minpoly) != k + 1:
            continue
        if any(not c.is_zero() for c in step.minpoly[1:k]):
            continue
        if lift(step.minpoly[0], tower) == -value:
            return tower, tower.gen(step.name)
    name = _fresh_name(tower, prefname)
    minpoly = (-value,) + (0,) * (k - 1) + (1,)
    bigger = tower_extend(tower, ExtensionStep(name, minpoly))
    return bigger, bigger.gen(name)


def decomposition_radical_parts(dec):
    """Rewrite u2 C^2 + u1 L^3 Z as F2'^2 + F1'^3 Z by folding the units
    into the components, adjoining a square or cube root when needed."""
    tower = dec.tower
    T, s2 = _root_gen(tower, tower.of(dec.unit2), 2, "r")
    T, s3 = _root_gen(T, T.of(dec.unit1), 3, "w")
    conic = dec.conic if dec.conic.tower == T else dec.conic._lift_to(T)
    line = dec.line if dec.line.tower == T else dec.line._lift_to(T)
    if s2.tower != T:
        s2 = lift(s2, T)
    F2p = conic * s2
    F1p = line * s3
    ring = conic.ring
    Q = dec.quartic if dec.quartic.tower == T else dec.quartic._lift_to(T)
    Zv = ring.var(ring.vars[2])
    if not (F2p * F2p + F1p ** 3 * Zv - Q).is_zero():
        raise ArithmeticError("radical presentation failed to verify")
    return F1p, F2p


# ----- sextic line-degeneration families


class SexticFamily:
    """H2 = F1' Z + t X K1 and H3 = F2' Z + t X K2; the sextic
    H3^2 + H2^3 restricts at t = 0 to Z^2 (F2'^2 + F1'^3 Z) and carries a
    double point at [0:1:0] for every parameter value."""

    __slots__ = ("F1p", "F2p", "K1", "K2", "param", "H2", "H3", "sextic",
                 "quartic", "base_point")

    def __init__(self, F1p, F2p, K1, K2, param, H2, H3, sextic, quartic,
                 base_point):
        self.F1p = F1p
        self.F2p = F2p
        self.K1 = K1
        self.K2 = K2
        self.param = param
        self.H2 = H2
        self.H3 = H3
        self.sextic = sextic
        self.quartic = quartic
        self.base_point = base_point

    @property
    def tower(self):
        return self.sextic.tower

    def at(self, value):
        """The member sextic at a concrete parameter value."""
        return substitute(self.sextic, {self.param: value})

    def report(self):
        ring = self.quartic.ring
        Zv = ring.var(ring.vars[2])
        checks = []
        limit = substitute(self.sextic, {self.param: 0})
        checks.append(_check(
            "limit is the quartic plus a double line",
            (limit - self.quartic * Zv * Zv).is_zero()))
        germ = affine_germ(self.sextic, self.base_point)
        order = min(sum(e) for e in germ.terms) if not germ.is_zero() else -1
        checks.append(_check(
            "base point has order 2 for every parameter value",
            order == 2, "order %s" % order))
        return checks

    def __str__(self):
        return "sextic family in %s: H3^2 + H2^3 with H2 = %s, H3 = %s" % (
            self.param, self.H2, self.H3)


def build_sextic_family(F1p, F2p, K1, K2, param=None):
    """Deform the sextic attached to the decomposition data (F1p, F2p)
    along the degree-1 and degree-2 forms K1, K2 in X, Y."""
    ring = F2p.ring
    names = ring.vars
    if F1p.ring.vars != names or K1.ring.vars != names \
            or K2.ring.vars != names:
        raise ValueError("all inputs must share one variable set")
    if F1p.total_degree() != 1 or not F1p.is_homogeneous():
        raise ValueError("F1' must be a linear form")
    if F2p.total_degree() != 2 or not F2p.is_homogeneous():
        raise ValueError("F2' must be a quadratic form")
    for K, d, label in ((K1, 1, "K1"), (K2, 2, "K2")):
        if K.total_degree() != d or not K.is_homogeneous():
            raise ValueError("%s must be homogeneous of degree %d"
                             % (label, d))
        if K.degree_in(names[2]) > 0:
            raise ValueError("%s must not involve %s" % (label, names[2]))
    tower = F2p.tower
    if F1p.tower != tower:
        if tower.is_prefix_of(F1p.tower):
            tower = F1p.tower
        elif not F1p.tower.is_prefix_of(tower):
            raise ValueError("F1' and F2' live in unrelated towers")

    def up(p):
        return p if p.tower == tower else p._lift_to(tower)

    F1p, F2p, K1, K2 = up(F1p), up(F2p), up(K1), up(K2)
    one = tower.one()
    zero = tower.zero()
    for K, label in ((K1, "K1"), (K2, "K2")):
        if evaluate(K, (zero, one, zero)).is_zero():
            raise KConditionFails("%s vanishes at (0, 1)" % label)
    pname = _fresh_name(tower, param or "t")
    T = tower_extend(tower, ExtensionStep(pname))
    t = T.gen(pname)
    F1l, F2l, K1l, K2l = (p._lift_to(T) for p in (F1p, F2p, K1, K2))
    lring = F2l.ring
    Xv = lring.var(names[0])
    Zv = lring.var(names[2])
    H2 = F1l * Zv + Xv * K1l * t
    H3 = F2l * Zv + Xv * K2l * t
    sextic = H3 * H3 + H2 ** 3
    quartic = F2p * F2p + F1p ** 3 * F2p.ring.var(names[2])
    limit = substitute(sextic, {pname: 0})
    if not (limit - quartic * quartic.ring.var(names[2]) ** 2).is_zero():
        raise ArithmeticError("limit member disagrees with the quartic")
    base = ProjPoint(T, (0, 1, 0))
    germ = affine_germ(sextic, base)
    order = min(sum(e) for e in germ.terms) if not germ.is_zero() else -1
    if order != 2:
        raise BasePointMultiplicityFails(
            "base point order is %s, not 2" % order)
    return SexticFamily(F1p, F2p, K1, K2, pname, H2, H3, sextic, quartic,
                        base)


# ----- the four explicit quartic families


class QuarticFamily:
    """An explicit quartic with parameters; families 1, 3 and 4 carry a
    structural form conic^2 + line^3 Z, family 2 is stored as printed and
    flagged best-effort."""

    __slots__ = ("fid", "params", "poly", "conic", "line", "best_effort")

    def __init__(self, fid, params, poly, conic=None, line=None,
                 best_effort=False):
        self.fid = fid
        self.params = params
        self.poly = poly
        self.conic = conic
        self.line = line
        self.best_effort = best_effort

    @property
    def tower(self):
        return self.poly.tower

    def __str__(self):
        return "family %d in (%s): %s" % (
            self.fid, ", ".join(self.params), self.poly)


_FAMILY_PARAMS = {1: ("s", "t", "u"), 2: ("s", "t", "u"),
                  3: ("s", "t"), 4: ("s", "t")}

# claimed memberships, as (parameter values, configuration class)
FAMILY_CLAIMS = {
    1: (((0, 0, 0), 12), ((0, 1, 0), 11), ((0, 1, 1), 7),
        ((1, 0, 1), 2), ((0, 0, 1), 8), ((1, 1, 1), 1)),
    2: (((0, 1, 1), 3), ((0, 1, 0), 5), ((1, 0, 1), 2),
        ((0, 0, 1), 4), ((1, 1, 1), 1)),
    3: (((0, 0), 9), ((0, 1), 6), ((1, 1), 1)),
    4: (((0, 0), 10), ((0, 1), 2), ((2, 1), 1)),
}

BEST_EFFORT_FAMILIES = frozenset((2,))


def quartic_family(fid):
    if fid not in _FAMILY_PARAMS:
        raise ValueError("no family %r; families are 1..4" % (fid,))
    names = _FAMILY_PARAMS[fid]
    T = QQ
    for n in names:
        T = tower_extend(T, ExtensionStep(n))
    ring = PolyRing(T, "X Y Z")
    X, Y, Z = ring.gens()
    s = T.gen("s")
    t = T.gen("t")
    if fid == 1:
        u = T.gen("u")
        poly = (Z ** 4 * s ** 4 - Y * Z ** 3 * s ** 2 * u * 2
                + ((Y ** 2 * t ** 2 - X ** 2) * s ** 2 * 2
                   + Y ** 2 * u ** 2) * Z ** 2
                + (Y ** 2 + (X ** 2 - Y ** 2 * t ** 2) * u * 2) * Y * Z
                + (X ** 2 - Y ** 2 * t ** 2) ** 2)
        conic = X ** 2 - Y ** 2 * t ** 2 + Y * Z * u - Z ** 2 * s ** 2
        line = Y
    elif fid == 2:
        u = T.gen("u")
        poly = (Z ** 4 * s * (s + 2) - X * Z ** 3 * s * 3
                + (X ** 2 * (s * 3 + u * 8 + s * u * 8)
                   - Y ** 2 * (s + 1) * (u * 8 + 3))
                * Z ** 2 * Fraction(1, 4)
                - ((X ** 2 - Y ** 2 * t ** 2) * u
                   + (X ** 2 - Y ** 2 * t ** 2 * 9))
                * X * Z * Fraction(1, 8)
                + (X ** 2 - Y ** 2 * t ** 2) ** 2
                * (u * 8 + 3) ** 2 * Fraction(1, 64))
        return QuarticFamily(fid, names, poly, best_effort=True)
    elif fid == 3:
        l1 = X - Y * s - Y
        poly = (Z ** 4 * (t ** 3 + 1) + l1 * Z ** 3 * t ** 2 * 3
                + (l1 ** 2 * t * 3 - (X ** 2 - Y ** 2) * 2) * Z ** 2
                + l1 ** 3 * Z + (X ** 2 - Y ** 2) ** 2)
        conic = X ** 2 - Y ** 2 - Z ** 2
        line = l1 + Z * t
    else:
        conic = Y ** 2 * s ** 2 - X ** 2 - (X + Y) * Z
        line = X - Y * t
        poly = conic * conic + line ** 3 * Z
    if not (poly - (conic * conic + line ** 3 * Z)).is_zero():
        raise ArithmeticError("family %d display does not match its "
                              "structural form" % fid)
    return QuarticFamily(fid, names, poly, conic, line)


def family_specialize(fam, values):
    """The member quartic at the given parameter values."""
    binding = _value_binding(fam, values)
    return substitute(fam.poly, binding)


def _value_binding(fam, values):
    if not isinstance(values, dict):
        seq = tuple(values)
        if len(seq) != len(fam.params):
            raise ValueError("family %d takes %d parameters, got %d"
                             % (fam.fid, len(fam.params), len(seq)))
        return dict(zip(fam.params, seq))
    missing = [n for n in fam.params if n not in values]
    if missing:
        raise ValueError("missing parameter values: %s"
                         % ", ".join(missing))
    return {n: values[n] for n in fam.params}


def is_reduced(Q):
    """No repeated component: the quartic is coprime to its gradient."""
    if Q.is_zero():
        return False
    g = Q
    for v in Q.ring.vars:
        g = gcd_multi(g, partial_derivative(Q, v))
    return g.is_constant()


def degeneration_check(fam, values, expected):
    """Specialize, classify and compare against the expected class; the
    outcome is a report, never an exception, so best-effort families can
    state their failures."""
    report = []
    try:
        binding = _value_binding(fam, values)
    except ValueError as err:
        report.append(_check("parameters assigned", False, str(err)))
        return report
    report.append(_check("parameters assigned", True,
                         ", ".join("%s = %s" % (n, binding[n])
                                   for n in fam.params)))
    member = substitute(fam.poly, binding)
    red = is_reduced(member)
    report.append(_check("member is reduced", red,
                         "" if red else "repeated component"))
    if not red:
        return report
    try:
        got = classify_QL(member)
    except SingError as err:
        report.append(_check("member classified", False, str(err)))
        return report
    report.append(_check("member classified", True, str(got)))
    report.append(_check(
        "class matches the claim", got == expected,
        "got %s, claimed class %s" % (got, expected)))
    return report

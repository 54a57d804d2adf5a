"""Quasi and visible torus decompositions of plane curves.

Verification of the defining identities, expansion of visible shapes,
construction of the two hidden quartic shapes, a constraint solver that
finds all visible decompositions of a quartic compatible with a
singularity assignment, equivariant transport of decompositions, and the
quadratic-cubic recurrence that stacks quasi decompositions.
"""

from itertools import combinations
from math import comb, gcd as _int_gcd

from .fieldtower import (
    FieldElement,
    ExtensionStep,
    TowerMismatch,
    tower_extend,
    lift,
    try_invert,
    exact_quotient,
)
from .polyring import (
    exact_divide,
    substitute,
    evaluate,
    gcd_multi,
    partial_derivative,
    transform,
)
from .localsing import (
    ProjPoint,
    SingError,
    affine_germ,
    singular_points,
)


class DecompositionError(Exception):
    pass


class NonMonomialResidual(DecompositionError):
    def __init__(self, message, system=None):
        super().__init__(message)
        self.system = system


class CurveNotPreserved(DecompositionError):
    pass


class BaseIdentityFails(DecompositionError):
    pass


class ZeroC(DecompositionError):
    pass


def _check(name, ok, detail=""):
    return {"name": name, "status": "pass" if ok else "fail",
            "detail": detail}


def _all_pass(report):
    return all(c["status"] == "pass" for c in report)


# ----- quasi decompositions


class QuasiTorusDecomposition:
    """f_r^(ab) f = f_p^a + f_q^b with declared exponents a, b."""

    __slots__ = ("f", "f_r", "f_p", "f_q", "a", "b", "relaxed")

    def __init__(self, f, f_r, f_p, f_q, a, b, relaxed=False):
        self.f = f
        self.f_r = f_r
        self.f_p = f_p
        self.f_q = f_q
        self.a = int(a)
        self.b = int(b)
        self.relaxed = bool(relaxed)

    @property
    def r(self):
        d = self.f_r.total_degree()
        return max(d, 0)

    @property
    def p(self):
        return self.f_p.total_degree()

    @property
    def q(self):
        return self.f_q.total_degree()


def verify_quasi(d):
    """Checks the quasi identity and side conditions; failures are report
    rows, not exceptions."""
    report = []
    a, b = d.a, d.b
    report.append(_check("exponents", a >= 2 and b >= 2,
                         "a = %d, b = %d" % (a, b)))
    if not d.relaxed:
        report.append(_check("exponents coprime", _int_gcd(a, b) == 1,
                             "gcd(%d, %d) = %d" % (a, b, _int_gcd(a, b))))
    lhs = d.f_r ** (a * b) * d.f
    rhs = d.f_p ** a + d.f_q ** b
    diff = lhs - rhs
    report.append(_check("identity", diff.is_zero(),
                         "" if diff.is_zero() else
                         "difference has %d terms" % len(diff.terms)))
    if not d.relaxed:
        pairs = (("f", d.f, "f_r", d.f_r), ("f", d.f, "f_p", d.f_p),
                 ("f", d.f, "f_q", d.f_q), ("f_r", d.f_r, "f_p", d.f_p),
                 ("f_r", d.f_r, "f_q", d.f_q), ("f_p", d.f_p, "f_q", d.f_q))
        for na, pa, nb, pb in pairs:
            if pa.is_constant() or pb.is_constant():
                report.append(_check("coprime %s %s" % (na, nb), True,
                                     "constant component"))
                continue
            g = gcd_multi(pa, pb)
            ok = g.total_degree() <= 0
            report.append(_check("coprime %s %s" % (na, nb), ok,
                                 "" if ok else "common factor %s" % g))
    return report


# ----- visible factorizations


class VisibleFactorization:
    """F_p = F'_(p-r) Z^r, F_q = F'_(q-s) Z^s; F_p^q + F_q^p = Z^(rq) G."""

    __slots__ = ("p", "q", "r", "s", "inner_p", "inner_q")

    def __init__(self, p, q, r, s, inner_p, inner_q):
        self.p = int(p)
        self.q = int(q)
        self.r = int(r)
        self.s = int(s)
        self.inner_p = inner_p
        self.inner_q = inner_q
        if self.s * self.p < self.r * self.q:
            raise DecompositionError("requires s*p >= r*q")
        if inner_p.total_degree() > self.p - self.r or \
                inner_q.total_degree() > self.q - self.s:
            raise DecompositionError("component degree exceeds declaration")


def expand_visible(v):
    """Expands the visible shape, pulls the exact power of Z out, and
    returns (j, G) with j = r*q."""
    ring = v.inner_p.ring
    Zv = ring.var(ring.vars[2])
    Fp = v.inner_p * Zv ** v.r
    Fq = v.inner_q * Zv ** v.s
    S = Fp ** v.q + Fq ** v.p
    j = v.r * v.q
    G = exact_divide(S, Zv ** j) if j else S
    if G.is_constant():
        raise DecompositionError("degenerate shape: G is constant")
    shadow = substitute(G, {ring.vars[2]: ring.zero()})
    if shadow.is_zero():
        raise DecompositionError("Z divides G; the shape is not reduced "
                                 "at infinity")
    return j, G


class VisibleQuarticDecomposition:
    """Q = unit2*conic^2 + unit1*line^3*Z, all exact over `tower`."""

    __slots__ = ("quartic", "conic", "line", "unit2", "unit1")

    def __init__(self, quartic, conic, line, unit2, unit1):
        self.quartic = quartic
        self.conic = conic
        self.line = line
        self.unit2 = unit2
        self.unit1 = unit1

    @property
    def tower(self):
        return self.conic.tower

    def curve(self):
        ring = self.conic.ring
        Zv = ring.var(ring.vars[2])
        return self.conic ** 2 * self.unit2 + \
            self.line ** 3 * Zv * self.unit1

    def __eq__(self, other):
        if not isinstance(other, VisibleQuarticDecomposition):
            return NotImplemented
        return self.conic == other.conic and self.line == other.line and \
            self.unit2 == other.unit2 and self.unit1 == other.unit1

    def __str__(self):
        return "(%s)*(%s)^2 + (%s)*(%s)^3*%s" % (
            self.unit2, self.conic, self.unit1, self.line,
            self.conic.ring.vars[2])


def verify_visible_quartic(Q, F2p, F1p, unit2=1, unit1=1):
    """Exact identity Q = unit2*F2p^2 + unit1*F1p^3*Z plus degree and
    coprimality checks."""
    report = []
    tower = Q.tower
    for other in (F2p.tower, F1p.tower):
        if tower.is_prefix_of(other):
            tower = other
    Ql = Q._lift_to(tower) if Q.tower != tower else Q
    C = F2p._lift_to(tower) if F2p.tower != tower else F2p
    L = F1p._lift_to(tower) if F1p.tower != tower else F1p
    u2 = unit2 if isinstance(unit2, FieldElement) else tower.of(unit2)
    u1 = unit1 if isinstance(unit1, FieldElement) else tower.of(unit1)
    u2 = lift(u2, tower) if u2.tower != tower else u2
    u1 = lift(u1, tower) if u1.tower != tower else u1
    report.append(_check("degrees", Ql.total_degree() == 4 and
                         C.total_degree() == 2 and L.total_degree() == 1,
                         "deg Q = %d, deg conic = %d, deg line = %d"
                         % (Ql.total_degree(), C.total_degree(),
                            L.total_degree())))
    report.append(_check("units nonzero",
                         not u2.is_zero() and not u1.is_zero(), ""))
    ring = C.ring
    Zv = ring.var(ring.vars[2])
    diff = Ql - (C ** 2 * u2 + L ** 3 * Zv * u1)
    report.append(_check("identity", diff.is_zero(),
                         "" if diff.is_zero() else
                         "difference has %d terms" % len(diff.terms)))
    g = gcd_multi(C, L)
    report.append(_check("coprime conic line", g.total_degree() <= 0,
                         "" if g.total_degree() <= 0 else
                         "common factor %s" % g))
    for name, comp in (("conic", C), ("line", L)):
        shadow = substitute(comp, {ring.vars[2]: ring.zero()})
        report.append(_check("%s not through the whole of Z=0" % name,
                             not shadow.is_zero(), ""))
    return report


# ----- hidden (2,3) and (2,4) shapes


def _require_binary(p, max_deg, what):
    ring = p.ring
    if len(ring.vars) != 3:
        raise DecompositionError("%s must live in the projective ring"
                                 % what)
    if p.degree_in(ring.vars[2]) > 0:
        raise DecompositionError("%s must not involve %s"
                                 % (what, ring.vars[2]))
    if p.total_degree() > max_deg:
        raise DecompositionError("%s has degree > %d" % (what, max_deg))


class InvisibleData23:
    """Data for F2 = l1^2 + l2 Z + a00 Z^2,
    F3 = l1^3 + (3/2) l1 l2 Z + l3 Z^2 + b00 Z^3.

    The sign epsilon multiplies l1 (its square is sign-blind, its cube is
    not); it is stored folded into l1.
    """

    __slots__ = ("l1", "l2", "l3", "a00", "b00")

    def __init__(self, l1, l2, l3, a00, b00, epsilon=1):
        if l1.is_zero():
            raise DecompositionError("l1 must be nonzero")
        for p, what in ((l1, "l1"), (l2, "l2"), (l3, "l3")):
            _require_binary(p, 1, what)
        if epsilon not in (1, -1):
            raise DecompositionError("epsilon must be +1 or -1")
        self.l1 = l1 if epsilon == 1 else -l1
        self.l2 = l2
        self.l3 = l3
        tower = l1.tower
        self.a00 = a00 if isinstance(a00, FieldElement) else tower.of(a00)
        self.b00 = b00 if isinstance(b00, FieldElement) else tower.of(b00)

    def c1(self):
        return evaluate(self.l2, (self.l2.tower.zero(), self.l2.tower.one(),
                                  self.l2.tower.zero()))

    def c2(self):
        return evaluate(self.l3, (self.l3.tower.zero(), self.l3.tower.one(),
                                  self.l3.tower.zero()))


def build_invisible_23(d):
    """Constructs the (2,3) hidden pair and the quartic G with
    F2^3 - F3^2 = Z^2 G."""
    ring = d.l1.ring
    Zv = ring.var(ring.vars[2])
    half3 = ring.of(d.l1.tower.of(3) * try_invert(d.l1.tower.of(2)))
    F2 = d.l1 ** 2 + d.l2 * Zv + Zv ** 2 * d.a00
    F3 = d.l1 ** 3 + d.l1 * d.l2 * Zv * half3 + d.l3 * Zv ** 2 + \
        Zv ** 3 * d.b00
    S = F2 ** 3 - F3 ** 2
    G = exact_divide(S, Zv ** 2)
    return F2, F3, G


class InvisibleData24:
    """Data for F2 = conic_part + linear_part Z + a00 Z^2 and
    F4 = F2^2 - c Z^4 with c = b00 - a00^2."""

    __slots__ = ("conic_part", "linear_part", "a00", "b00")

    def __init__(self, conic_part, linear_part, a00, b00):
        _require_binary(conic_part, 2, "conic_part")
        _require_binary(linear_part, 1, "linear_part")
        tower = conic_part.tower
        self.conic_part = conic_part
        self.linear_part = linear_part
        self.a00 = a00 if isinstance(a00, FieldElement) else tower.of(a00)
        self.b00 = b00 if isinstance(b00, FieldElement) else tower.of(b00)

    def c(self):
        return self.b00 - self.a00 * self.a00


def build_invisible_24(d):
    """Constructs the (2,4) hidden pair and G = F2^2 - (c/2) Z^4; the law
    F2^4 - F4^2 = 2c Z^4 G is asserted exactly."""
    c = d.c()
    if c.is_zero():
        raise ZeroC("b00 - a00^2 must be nonzero")
    ring = d.conic_part.ring
    Zv = ring.var(ring.vars[2])
    F2 = d.conic_part + d.linear_part * Zv + Zv ** 2 * d.a00
    F4 = F2 ** 2 - Zv ** 4 * c
    chalf = c * try_invert(c.tower.of(2))
    G = F2 ** 2 - Zv ** 4 * chalf
    law = F2 ** 4 - F4 ** 2 - Zv ** 4 * G * (c + c)
    if not law.is_zero():
        raise DecompositionError("internal: (2,4) law failed")
    shadow = substitute(G, {ring.vars[2]: ring.zero()})
    if shadow.is_zero():
        raise DecompositionError("Z divides G; degenerate data")
    return F2, F4, G


# ----- the visible-quartic constraint solver

_CONIC_BASIS = ((2, 0, 0), (1, 1, 0), (0, 2, 0),
                (1, 0, 1), (0, 1, 1), (0, 0, 2))
_LINE_BASIS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))

# roles a singular point can play; iota1 is its share of the conic-line
# intersection budget
_INNER_KINDS = {
    "a2": (1, "square"),
    "a5": (2, "square+line"),
    "e6": (2, "cube"),
    "a3inf": (1, "square"),
    "a4inf": (1, "square"),
    "a6inf": (2, "square+line"),
}


def _mono_value(exps, P):
    out = None
    for e, c in zip(exps, P):
        if e:
            v = c ** e
            out = v if out is None else out * v
    return P[0].tower.one() if out is None else out


def _mono_grad(exps, k, P):
    tower = P[0].tower
    if exps[k] == 0:
        return tower.zero()
    ne = list(exps)
    ne[k] -= 1
    return _mono_value(tuple(ne), P) * tower.of(exps[k])


def _eval_row(basis, P):
    return [_mono_value(e, P) for e in basis]


def _grad_rows(basis, P):
    return [[_mono_grad(e, k, P) for e in basis] for k in range(3)]


def _parallel_rows(vec_rows, w):
    """Rows asserting that a coefficient-linear vector is parallel to the
    known vector w."""
    out = []
    n = len(vec_rows[0])
    for i in range(3):
        for j in range(i + 1, 3):
            row = [vec_rows[i][k] * w[j] - vec_rows[j][k] * w[i]
                   for k in range(n)]
            out.append(row)
    return out


def _row_combine(target, row, fac1, fac2):
    return [a * fac1 - b * fac2 for a, b in zip(target, row)]


def _nullspace(rows, ncols, tower):
    """Fraction-free echelon; returns the nullspace basis (may be empty or
    multi-dimensional)."""
    ech = []  # (pivot_col, row)
    for row in rows:
        row = list(row)
        for pcol, prow in ech:
            if not row[pcol].is_zero():
                row = _row_combine(row, prow, prow[pcol], row[pcol])
        lead = None
        for k in range(ncols):
            if not row[k].is_zero():
                lead = k
                break
        if lead is not None:
            ech.append((lead, row))
    ech.sort(key=lambda t: t[0])
    pivots = [pc for pc, _r in ech]
    free = [k for k in range(ncols) if k not in pivots]
    basis = []
    for fcol in free:
        sol = [tower.zero()] * ncols
        sol[fcol] = tower.one()
        for pc, prow in reversed(ech):
            s = tower.zero()
            for k in range(pc + 1, ncols):
                if not sol[k].is_zero() and not prow[k].is_zero():
                    s = s + prow[k] * sol[k]
            # keep it division-free: scale the partial solution by the
            # pivot, then the pivot variable absorbs -s
            if s.is_zero():
                sol[pc] = tower.zero()
                continue
            sol = [v * prow[pc] for v in sol]
            sol[pc] = -s
        basis.append(sol)
    return basis


def _strip_content(p):
    """Divide out a coefficient that divides every other coefficient;
    fraction-free elimination tends to leave such common factors behind."""
    if p.is_zero():
        return p
    for cand in p.terms.values():
        quots = {e: exact_quotient(v, cand) for e, v in p.terms.items()}
        if all(q is not None for q in quots.values()):
            out = p.ring.zero()
            for e, q in quots.items():
                if not q.is_zero():
                    out = out + p.ring.monomial(e, q)
            return out
    return p


def _germ_direction(Q, P, order):
    """The direction (as a projective line through P) whose `order`-th power
    is the lowest form of the germ of Q at P; None when the form is not a
    perfect power."""
    f = affine_germ(Q, P)
    tower = f.tower
    m = min(sum(e) for e in f.terms)
    if m != order:
        return None
    cs = [f.coeff((order - i, i)) for i in range(order + 1)]
    # candidate ratio (alpha : beta) with form ~ (alpha x + beta y)^order
    if not cs[0].is_zero():
        alpha, beta = cs[0] * tower.of(order), cs[1]
    elif not cs[order].is_zero():
        alpha, beta = cs[order - 1], cs[order] * tower.of(order)
    else:
        return None
    # verify the perfect power claim by cross-multiplication
    for i in range(order + 1):
        lhs = cs[i] * (alpha ** order)
        rhs = cs[0] * tower.of(comb(order, i)) * \
            (alpha ** (order - i)) * (beta ** i)
        if not cs[0].is_zero():
            if lhs != rhs:
                return None
        else:
            lhs = cs[i] * (beta ** order)
            rhs = cs[order] * tower.of(comb(order, i)) * \
                (alpha ** (order - i)) * (beta ** i)
            if lhs != rhs:
                return None
    a, b, c = P.coords
    if not c.is_zero():
        # chart x = X - aZ, y = Y - bZ
        return (alpha, beta, -(a * alpha + b * beta))
    if not b.is_zero():
        # chart x = X - aY, y = Z
        return (alpha, -a * alpha, beta)
    # chart x = Y, y = Z
    return (tower.zero(), alpha, beta)


def _binary_sqrt(b, ring):
    """Monic-free square root of a binary quartic up to a unit: returns a
    binary quadratic s with b ~ s^2, or None."""
    tower = ring.tower
    cs = [b.coeff((4 - i, i, 0)) for i in range(5)]
    lo = 0
    while lo <= 4 and cs[lo].is_zero():
        lo += 1
    if lo > 4:
        return None
    hi = 4
    while cs[hi].is_zero():
        hi -= 1
    # cs[i] multiplies X^(4-i) Y^i: lo counts Y-powers stripped from the
    # left end (X-heavy side)
    ylow = lo
    xlow = 4 - hi
    if ylow % 2 or xlow % 2:
        return None
    core = cs[lo:hi + 1]
    width = hi - lo
    if width == 0:
        xc, yc = (4 - lo) // 2, lo // 2
        return ring.monomial((xc, yc, 0))
    if width == 2:
        c2, c1, c0 = core
        if not c2.is_zero():
            alpha, beta = c2 + c2, c1
        else:
            alpha, beta = c1, c0 + c0
        # verify (alpha X + beta Y)^2 ~ core
        if (alpha * alpha * c1 != (alpha * beta + alpha * beta) * c2 or
                alpha * alpha * c0 != beta * beta * c2 or
                beta * beta * c1 != (alpha * beta + alpha * beta) * c0):
            return None
        lin = ring.monomial((1, 0, 0), alpha) + ring.monomial((0, 1, 0), beta)
        return lin * ring.monomial(((4 - hi) // 2, lo // 2, 0))
    if width != 4:
        return None
    b4, b3, b2, b1, b0 = core
    four = tower.of(4)
    alpha = b4 * b4 * tower.of(8)
    beta = b4 * b3 * four
    gamma = b4 * b2 * four - b3 * b3
    s = ring.monomial((2, 0, 0), alpha) + ring.monomial((1, 1, 0), beta) + \
        ring.monomial((0, 2, 0), gamma)
    t = s * s
    tc = [t.coeff((4 - i, i, 0)) for i in range(5)]
    for i in range(5):
        for j in range(5):
            if tc[i] * core[j] != tc[j] * core[i]:
                return None
    return s


def _vector_to_poly(vec, basis, ring):
    out = ring.zero()
    for c, e in zip(vec, basis):
        if not c.is_zero():
            out = out + ring.monomial(e, c)
    return out


def _monic_poly(p):
    """(p/c, c) with c the graded-lex leading coefficient, when the
    division stays inside the tower; (p, None) otherwise."""
    if p.is_zero():
        return p, None
    lead = max(p.terms, key=lambda e: (sum(e), e))
    c = p.coeff(lead)
    if c.is_one():
        return p, None
    inv = try_invert(c)
    if inv is not None:
        return p * inv, c
    quots = {e: exact_quotient(v, c) for e, v in p.terms.items()}
    if all(q is not None for q in quots.values()):
        out = p.ring.zero()
        for e, q in quots.items():
            if not q.is_zero():
                out = out + p.ring.monomial(e, q)
        return out, c
    return p, None


def _affine_solve(columns, rhs, tower):
    """Unique solution of sum_k x_k columns[k] = rhs, all entries exact;
    returns None when inconsistent, raises NonMonomialResidual when the
    solution is not unique or needs a fraction."""
    n = len(columns)
    rows = []
    for i in range(len(rhs)):
        rows.append([col[i] for col in columns] + [-rhs[i]])
    basis = _nullspace(rows, n + 1, tower)
    if len(basis) == 0:
        return None
    if len(basis) > 1:
        raise NonMonomialResidual(
            "residual system is underdetermined (%d-parameter solution)"
            % (len(basis) - 1), system=rows)
    vec = basis[0]
    last = vec[n]
    if last.is_zero():
        return None
    sol = []
    for v in vec[:n]:
        q = exact_quotient(v, last)
        if q is None:
            raise NonMonomialResidual(
                "residual solution leaves the coefficient tower",
                system=rows)
        sol.append(q)
    return sol


def _match_decomposition(Q, cpolys, L):
    """Finish Q = u2 C^2 + u1 L^3 Z where C ranges over the span of
    cpolys (one or two generators).  The quadratic unknowns are first
    linearized; their single monomial relation fixes the ratio inside the
    pencil projectively, so no entry of the scaled nullspace vector ever
    needs to be inverted."""
    ring = L.ring
    tower = ring.tower
    Zv = ring.var(ring.vars[2])
    L3Z = L ** 3 * Zv
    if len(cpolys) == 1:
        C = _strip_content(cpolys[0])
    else:
        C0, C1 = cpolys
        prods = [C0 * C0, C0 * C1 + C0 * C1, C1 * C1]
        monos = set(Q.terms) | set(L3Z.terms)
        for p in prods:
            monos |= set(p.terms)
        monos = sorted(monos, key=lambda e: (sum(e), e), reverse=True)
        rows = []
        for m in monos:
            rows.append([p.coeff(m) for p in prods]
                        + [L3Z.coeff(m), -Q.coeff(m)])
        basis = _nullspace(rows, 5, tower)
        if len(basis) == 0:
            return None
        if len(basis) > 1:
            raise NonMonomialResidual(
                "residual system is underdetermined (%d-parameter solution)"
                % (len(basis) - 1), system=rows)
        v00, v01, v11, w, last = basis[0]
        if last.is_zero():
            return None
        if v01 * v01 != v00 * v11:
            return None
        if v01.is_zero() and v11.is_zero():
            C = C0 * v00
        else:
            C = C0 * v01 + C1 * v11
        if C.is_zero():
            return None
        C = _strip_content(C)
    C2 = C * C
    monos = sorted(set(Q.terms) | set(L3Z.terms) | set(C2.terms),
                   key=lambda e: (sum(e), e), reverse=True)
    columns = [[C2.coeff(m) for m in monos], [L3Z.coeff(m) for m in monos]]
    sol = _affine_solve(columns, [Q.coeff(m) for m in monos], tower)
    if sol is None:
        return None
    u2, u1 = sol
    if u2.is_zero() or u1.is_zero():
        return None
    if not (Q - (C2 * u2 + L3Z * u1)).is_zero():
        return None
    return C, u2, u1


def _type_key(tpe, at_inf):
    if tpe.kind == "a":
        return "a%d%s" % (tpe.n, "inf" if at_inf else "")
    if tpe.kind == "e6":
        return "e6%s" % ("inf" if at_inf else "")
    return tpe.kind


def _reexpress(e, src_tower, dst_tower):
    """Rebuild an element of src_tower inside dst_tower by generator name;
    raises KeyError when a generator is missing."""
    out = dst_tower.zero()
    for exps, q in e._terms.items():
        term = dst_tower.of(q)
        for k, ex in enumerate(exps):
            if ex:
                term = term * dst_tower.gen(src_tower.steps[k].name) ** ex
        out = out + term
    return out


_SAMPLE_VALUES = (2, 3, 5, 7, 11, 13, 17, 19)


def _locus_for_solver(Q):
    """Typed singular points of Q plus the tower they live in.

    Over a purely algebraic tower this is singular_points directly.  With
    transcendental parameters in play the parameters are specialized at
    sample values to locate candidate points, the algebraic extensions
    the points need are transplanted onto the parametric tower, and every
    candidate is then verified exactly on the parametric curve; a sample
    that hits a non-generic parameter value fails those exact checks and
    the next sample is tried.
    """
    tower = Q.tower
    trans = [s.name for s in tower.steps if not s.is_algebraic]
    if not trans:
        locus = singular_points(Q)
        if locus.unresolved:
            raise DecompositionError("singular locus did not resolve: %s"
                                     % "; ".join(locus.unresolved))
        return list(locus.points), locus.tower
    grads = [partial_derivative(Q, v) for v in Q.ring.vars]
    last_error = "no samples tried"
    for start in range(len(_SAMPLE_VALUES) - len(trans) + 1):
        values = _SAMPLE_VALUES[start:start + len(trans)]
        binding = dict(zip(trans, values))
        Qs = substitute(Q, binding)
        try:
            locus = singular_points(Qs)
        except SingError as err:
            last_error = str(err)
            continue
        if locus.unresolved:
            last_error = "; ".join(locus.unresolved)
            continue
        spec_tower = locus.tower
        base_steps = len(Qs.tower.steps)
        par_tower = tower
        try:
            for step in spec_tower.steps[base_steps:]:
                coeffs = [_reexpress(c, spec_tower, par_tower)
                          for c in step.minpoly]
                par_tower = tower_extend(par_tower,
                                         ExtensionStep(step.name, coeffs))
        except (KeyError, TowerMismatch):
            last_error = "extension depends on the specialized values"
            continue
        Qp = Q._lift_to(par_tower) if Q.tower != par_tower else Q
        typed = []
        ok = True
        for pt, tpe in locus.points:
            try:
                coords = tuple(_reexpress(c, spec_tower, par_tower)
                               for c in pt.lifted(spec_tower).coords)
            except (KeyError, TowerMismatch):
                ok = False
                break
            if not evaluate(Qp, coords).is_zero():
                ok = False
                break
            for gp in grads:
                gl = gp._lift_to(par_tower) if gp.tower != par_tower else gp
                if not evaluate(gl, coords).is_zero():
                    ok = False
                    break
            if not ok:
                break
            typed.append((ProjPoint(par_tower, coords), tpe))
        if ok and typed:
            return typed, par_tower
        if ok and not typed:
            return [], par_tower
        last_error = "a specialized point failed the exact parametric check"
    raise DecompositionError("could not resolve the parametric singular "
                             "locus: %s" % last_error)


def solve_visible_quartic(Q, inner=None, incidences=None):
    """All decompositions Q = u2 C^2 + u1 L^3 Z compatible with an
    assignment of the singular points of Q.

    With inner=None every admissible assignment is tried; passing a list
    of points restricts the conic-line intersection to exactly those.
    The residual system after the linear stage must be solvable by exact
    division; anything else raises NonMonomialResidual.
    """
    if Q.total_degree() != 4 or not Q.is_homogeneous():
        raise DecompositionError("expected a homogeneous quartic")
    points, tower = _locus_for_solver(Q)
    Ql = Q._lift_to(tower) if Q.tower != tower else Q
    ring = Ql.ring
    nz = ring.vars[2]
    # the conic restricted to Z = 0 must square to the quartic's binary part
    bform = substitute(Ql, {nz: ring.zero()})
    if bform.is_zero():
        return []
    s = _binary_sqrt(bform, ring)
    if s is None:
        return []
    typed = []
    for pt, tpe in points:
        key = _type_key(tpe, pt.at_infinity)
        if key in _INNER_KINDS:
            typed.append((pt, key, False))
        elif key in ("a1", "a2"):
            typed.append((pt, key, True))
        else:
            return []
    if incidences is not None:
        assignments = [incidences]
    else:
        mandatory = []
        optional = []
        budget = 2
        for pt, key, _outer_ok in typed:
            if key == "a2":
                optional.append(pt)
            elif key == "a1":
                continue
            else:
                mandatory.append((pt, key))
                budget -= _INNER_KINDS[key][0]
        if budget < 0:
            return []
        if inner is not None:
            wanted = list(inner)
            pick = [p for p in optional if any(p == w for w in wanted)]
            for w in wanted:
                matched = any(w == p for p, k in mandatory) or \
                    any(w == p for p in pick)
                if not matched:
                    return []
            if len(pick) != budget:
                return []
            chosen_sets = [pick]
        else:
            chosen_sets = [list(c) for c in combinations(optional, budget)]
        assignments = []
        for chosen in chosen_sets:
            a = [(p, k) for p, k in mandatory]
            a.extend((p, "a2") for p in chosen)
            assignments.append(a)
    out = []
    for assignment in assignments:
        dec = _solve_assignment(Ql, ring, tower, s, assignment)
        if dec is not None and not any(dec == d for d in out):
            out.append(dec)
    return out


def _solve_assignment(Ql, ring, tower, s, assignment):
    c_rows = []
    l_rows = []
    # conic binary part parallel to the square root of Q at infinity
    svec = [s.coeff((2, 0, 0)), s.coeff((1, 1, 0)), s.coeff((0, 2, 0))]
    id_rows = [[tower.zero()] * 6 for _ in range(3)]
    for k in range(3):
        id_rows[k][k] = tower.one()
    c_rows.extend(_parallel_rows(id_rows, svec))
    for P, kind in assignment:
        P = P.lifted(tower) if P.tower != tower else P
        c_rows.append(_eval_row(_CONIC_BASIS, P.coords))
        l_rows.append(_eval_row(_LINE_BASIS, P.coords))
        iota, mode = _INNER_KINDS[kind]
        if mode == "cube":
            # conic singular at P, line along the cube direction
            c_rows.extend(_grad_rows(_CONIC_BASIS, P.coords))
            w = _germ_direction(Ql, P, 3)
            if w is None:
                return None
            l_rows.extend(_parallel_rows(
                [[tower.one() if i == k else tower.zero() for i in range(3)]
                 for k in range(3)], w))
        else:
            w = _germ_direction(Ql, P, 2)
            if w is None:
                return None
            c_rows.extend(_parallel_rows(_grad_rows(_CONIC_BASIS, P.coords),
                                         w))
            if mode == "square+line":
                l_rows.extend(_parallel_rows(
                    [[tower.one() if i == k else tower.zero()
                      for i in range(3)] for k in range(3)], w))
    cbasis = _nullspace(c_rows, 6, tower)
    if not cbasis:
        return None
    if len(cbasis) > 2:
        raise NonMonomialResidual(
            "conic family has %d parameters; the residual system is not "
            "of monomial shape" % len(cbasis))
    lbasis = _nullspace(l_rows, 3, tower)
    if not lbasis:
        return None
    if len(lbasis) > 1:
        raise NonMonomialResidual(
            "line family has %d parameters; the residual system is not "
            "of monomial shape" % len(lbasis))
    L = _strip_content(_vector_to_poly(lbasis[0], _LINE_BASIS, ring))
    if L.is_zero():
        return None
    Lm, _ = _monic_poly(L)
    L = Lm
    if L.coeff((1, 0, 0)).is_zero() and L.coeff((0, 1, 0)).is_zero():
        return None
    cpolys = [_vector_to_poly(v, _CONIC_BASIS, ring) for v in cbasis]
    matched = _match_decomposition(Ql, cpolys, L)
    if matched is None:
        return None
    C, u2, u1 = matched
    if all(C.coeff(e).is_zero() for e in _CONIC_BASIS[:3]):
        return None
    Cm, scale = _monic_poly(C)
    if scale is not None:
        C, u2 = Cm, u2 * scale * scale
    return VisibleQuarticDecomposition(Ql, C, L, u2, u1)


# ----- equivariance


def transform_decomposition(dec, M):
    """Transports a decomposition along a projective transform that
    preserves its curve and the line at infinity."""
    if isinstance(dec, VisibleQuarticDecomposition):
        return _transform_visible(dec, M)
    if isinstance(dec, InvisibleData23):
        return _transform_invisible23(dec, M)
    raise DecompositionError("unsupported decomposition record")


def _line_scale(M, tower):
    if not M.matrix[0][2].is_zero() or not M.matrix[1][2].is_zero():
        raise CurveNotPreserved("the transform moves the line Z = 0")
    c = M.matrix[2][2]
    if c.is_zero():
        raise CurveNotPreserved("degenerate action on the line Z = 0")
    return c


def _transform_visible(dec, M):
    Q = dec.quartic
    Qm = transform(Q, M)
    mono = max(Q.terms, key=lambda e: (sum(e), e))
    mu = exact_quotient(Qm.coeff(mono), Q.coeff(mono))
    if mu is None or not (Qm - Q * mu).is_zero():
        raise CurveNotPreserved("the transform does not fix the quartic")
    c = _line_scale(M, Q.tower)
    Cm = transform(dec.conic, M)
    Lm = transform(dec.line, M)
    mu_inv = try_invert(mu)
    if mu_inv is None:
        raise CurveNotPreserved("curve scale factor is not invertible")
    u2 = dec.unit2 * mu_inv
    u1 = dec.unit1 * c * mu_inv
    rep = verify_visible_quartic(Q, Cm, Lm, u2, u1)
    if not _all_pass(rep):
        raise CurveNotPreserved("transported decomposition fails to verify")
    return VisibleQuarticDecomposition(Q, Cm, Lm, u2, u1)


def canonicalize_visible(dec):
    """Rescale the conic and the line to graded-lex monic form, folding
    the scale factors into the unit multipliers."""
    C, cs = _monic_poly(dec.conic)
    u2 = dec.unit2 if cs is None else dec.unit2 * cs * cs
    L, ls = _monic_poly(dec.line)
    u1 = dec.unit1 if ls is None else dec.unit1 * ls * ls * ls
    return VisibleQuarticDecomposition(dec.quartic, C, L, u2, u1)


def _transform_invisible23(dec, M):
    tower = dec.l1.tower
    c = _line_scale(M, tower)
    if not M.matrix[2][0].is_zero() or not M.matrix[2][1].is_zero():
        raise CurveNotPreserved("the transform does not preserve the "
                                "binary part of the data")
    l1 = transform(dec.l1, M)
    l2 = transform(dec.l2, M) * c
    l3 = transform(dec.l3, M) * (c * c)
    a00 = dec.a00 * c * c
    b00 = dec.b00 * c * c * c
    return InvisibleData23(l1, l2, l3, a00, b00)


# ----- the quadratic-cubic recurrence


def _tower_with_sqrtm3(tower):
    for step in tower.steps:
        if step.is_algebraic and len(step.minpoly) == 3:
            c0, c1, c2 = step.minpoly
            if c1.is_zero() and c0.is_rational() and \
                    c0.as_rational() == 3 and c2.is_rational() and \
                    c2.as_rational() == 1:
                return tower, step.name
    new = tower_extend(tower, ExtensionStep("sqrtm3", (3, 0, 1)))
    return new, "sqrtm3"


def quasi_step(g, h):
    """One recurrence step (g, h) -> (g', h') with
    h'^2 - g'^3 = g^6 (h^2 - g^3), asserted exactly."""
    gp, hp, _diff = _step_with_diff(g, h)
    return gp, hp


def _step_with_diff(g, h):
    tower = g.tower
    if h.tower != tower:
        if tower.is_prefix_of(h.tower):
            tower = h.tower
        elif not h.tower.is_prefix_of(tower):
            raise TowerMismatch("recurrence data in unrelated towers")
    tower, wname = _tower_with_sqrtm3(tower)
    g = g._lift_to(tower) if g.tower != tower else g
    h = h._lift_to(tower) if h.tower != tower else h
    ring = g.ring
    w = tower.gen(wname)
    third4 = tower.of(4) * try_invert(tower.of(3))
    ninth = try_invert(tower.of(9))
    A = h * h
    B = g ** 3
    gp = B - A * third4
    hp = h * (B * tower.of(9) - A * tower.of(8)) * (w * ninth)
    diff = hp * hp - gp ** 3
    expected = B * B * (A - B)
    if not (diff - expected).is_zero():
        raise DecompositionError("internal: recurrence identity failed")
    return gp, hp, diff


class QuasiChain:
    """Verified ladder of quasi decompositions: levels[i] = (g_i, h_i),
    with (prod of g_0..g_(i-1))^6 f = h_i^2 - g_i^3 at every level."""

    __slots__ = ("f", "levels", "products")

    def __init__(self, f, levels, products):
        self.f = f
        self.levels = levels
        self.products = products

    def __len__(self):
        return len(self.levels) - 1

    def sigma_contains(self, level, point):
        """Whether a point (a coordinate tuple) lies in the inner locus
        {g_level = 0} and {h_level = 0}."""
        g, h = self.levels[level]
        tower = g.tower
        pt = []
        for v in point:
            v = v if isinstance(v, FieldElement) else tower.of(v)
            if v.tower != tower:
                if v.tower.is_prefix_of(tower):
                    v = lift(v, tower)
                else:
                    g = g._lift_to(v.tower)
                    h = h._lift_to(v.tower)
                    tower = v.tower
                    pt = [lift(q, tower) for q in pt]
            pt.append(v)
        return evaluate(g, pt).is_zero() and evaluate(h, pt).is_zero()


def quasi_chain(f, g0, h0, N):
    """Iterates the recurrence N times from (g0, h0), verifying the level
    identity each time; the telescoped products give the full statement
    (prod g_k)^6 f = h^2 - g^3 exactly at every level."""
    if N < 1:
        raise DecompositionError("N must be >= 1")
    base = h0 * h0 - g0 ** 3 - f
    if not base.is_zero():
        raise BaseIdentityFails("f != h0^2 - g0^3")
    levels = [(g0, h0)]
    products = []
    g, h = g0, h0
    for i in range(N):
        gp, hp, _diff = _step_with_diff(g, h)
        # the step asserts h'^2 - g'^3 = g^6 (h^2 - g^3) by direct
        # computation; chained with the verified base identity this
        # telescopes exactly to (prod g_k)^6 f = h^2 - g^3 at every level
        levels.append((gp, hp))
        prod = levels[0][0]
        prod = prod._lift_to(gp.tower) if prod.tower != gp.tower else prod
        for gk, _hk in levels[1:i + 1]:
            gk = gk._lift_to(gp.tower) if gk.tower != gp.tower else gk
            prod = prod * gk
        products.append(prod)
        g, h = gp, hp
    return QuasiChain(f, levels, products)

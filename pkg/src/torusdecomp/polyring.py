"""Sparse multivariate polynomials over a FieldTower.

Projective work uses variables X, Y, Z; local charts use whatever names the
caller declares (x, z, u, v, ...).  Coefficients are FieldElements, so free
parameters live in the tower, not in the variable set, and an identity that
holds for all parameter values is a single symbolic equality.
"""

from .fieldtower import (
    FieldElement,
    FieldTower,
    QQ,
    TowerMismatch,
    _Q,
    _ZERO,
    _common_tower,
    exact_quotient,
    invert,
    lift,
    try_invert,
)


class PolyError(Exception):
    pass


class InexactDivision(PolyError):
    """Division left a remainder; a claimed factorization is false."""


class SingularTransform(PolyError):
    pass


def _grlex_key(exps):
    return (sum(exps), exps)


class PolyRing:
    """A variable set over a tower; hands out generators and constants."""

    def __init__(self, tower, names):
        if isinstance(names, str):
            names = names.split()
        self.tower = tower
        self.vars = tuple(names)
        if len(set(self.vars)) != len(self.vars):
            raise PolyError("repeated variable name")
        self._zero_exps = (0,) * len(self.vars)

    def zero(self):
        return MultiPoly(self, {})

    def one(self):
        return MultiPoly(self, {self._zero_exps: self.tower.one()})

    def of(self, value):
        if isinstance(value, MultiPoly):
            if value.ring.vars != self.vars:
                raise PolyError("variable sets differ")
            return value
        if isinstance(value, FieldElement):
            c = lift(value, self.tower) if value.tower != self.tower else value
        else:
            c = self.tower.of(value)
        if c.is_zero():
            return self.zero()
        return MultiPoly(self, {self._zero_exps: c})

    def var(self, name):
        k = self.vars.index(name)
        exps = [0] * len(self.vars)
        exps[k] = 1
        return MultiPoly(self, {tuple(exps): self.tower.one()})

    def gens(self):
        return tuple(self.var(n) for n in self.vars)

    def monomial(self, exps, coeff=None):
        c = self.tower.one() if coeff is None else self.tower.of(coeff) \
            if not isinstance(coeff, FieldElement) else coeff
        if c.is_zero():
            return self.zero()
        return MultiPoly(self, {tuple(exps): c})

    def with_tower(self, tower):
        return PolyRing(tower, self.vars)


class MultiPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    @property
    def tower(self):
        return self.ring.tower

    @property
    def vars(self):
        return self.ring.vars

    # ----- inspection

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(x == 0 for x in e) for e in self.terms)

    def constant_value(self):
        if not self.terms:
            return self.tower.zero()
        if not self.is_constant():
            raise PolyError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, v):
        if not self.terms:
            return -1
        k = self.ring.vars.index(v)
        return max(e[k] for e in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {sum(e) for e in self.terms}
        return len(degs) == 1

    def leading_term(self):
        """Graded-lex maximal (exps, coeff)."""
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.tower.zero())

    def coeff_in(self, v, d):
        """Coefficient of v^d, a polynomial with v-degree zero."""
        k = self.ring.vars.index(v)
        out = {}
        for e, c in self.terms.items():
            if e[k] == d:
                ne = list(e)
                ne[k] = 0
                out[tuple(ne)] = c
        return MultiPoly(self.ring, out)

    # ----- coercion

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if self.ring.vars != other.ring.vars:
                raise PolyError("variable sets differ")
            if self.tower == other.tower:
                return self, other
            if self.tower.is_prefix_of(other.tower):
                return self._lift_to(other.tower), other
            if other.tower.is_prefix_of(self.tower):
                return self, other._lift_to(self.tower)
            raise TowerMismatch("polynomials live in unrelated towers")
        if isinstance(other, (FieldElement, int)) or _is_rational(other):
            if isinstance(other, FieldElement) and other.tower != self.tower:
                if self.tower.is_prefix_of(other.tower):
                    ring = self.ring.with_tower(other.tower)
                    return self._lift_to(other.tower), ring.of(other)
                other = lift(other, self.tower)
            return self, self.ring.of(other)
        return None

    def _lift_to(self, tower):
        ring = self.ring.with_tower(tower)
        return MultiPoly(ring, {e: lift(c, tower)
                                for e, c in self.terms.items()})

    # ----- arithmetic

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return MultiPoly(a.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if not a.terms or not b.terms:
            return a.ring.zero()
        tower = a.tower
        ngen = len(tower.steps)
        # accumulate raw rational dicts per variable monomial; reduce once
        acc = {}
        for e1, c1 in a.terms.items():
            t1 = c1._terms
            for e2, c2 in b.terms.items():
                ve = tuple(x + y for x, y in zip(e1, e2))
                bucket = acc.get(ve)
                if bucket is None:
                    bucket = acc[ve] = {}
                for g1, q1 in t1.items():
                    qq = q1
                    for g2, q2 in c2._terms.items():
                        g = tuple(x + y for x, y in zip(g1, g2))
                        bucket[g] = bucket.get(g, _ZERO) + qq * q2
        terms = {}
        for ve, bucket in acc.items():
            red = tower._reduce_terms(bucket)
            if red:
                terms[ve] = FieldElement(tower, red)
        return MultiPoly(a.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.ring.vars,
                     tuple(sorted(self.terms.items(),
                                  key=lambda kv: kv[0]))))

    def __bool__(self):
        return bool(self.terms)

    # ----- printing (graded-lex descending, explicit * and ^)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.vars
        keys = sorted(self.terms, key=_grlex_key, reverse=True)
        parts = []
        for e in keys:
            c = self.terms[e]
            monos = []
            for k, x in enumerate(e):
                if x == 1:
                    monos.append(names[k])
                elif x > 1:
                    monos.append("%s^%d" % (names[k], x))
            mono = "*".join(monos)
            cs = str(c)
            simple = c.is_rational() or len(c._terms) == 1
            if not mono:
                parts.append(cs if simple else "(%s)" % cs)
            elif c.is_one():
                parts.append(mono)
            elif simple and cs == "-1":
                parts.append("-" + mono)
            elif simple:
                parts.append(cs + "*" + mono)
            else:
                parts.append("(%s)*%s" % (cs, mono))
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += " - " + p[1:]
            else:
                out += " + " + p
        return out

    def __repr__(self):
        return "<MultiPoly %s>" % self


def _is_rational(v):
    from fractions import Fraction
    return isinstance(v, Fraction) or type(v).__name__ == "mpq"


# ----- module-level operations


def poly_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** b
    if op == "exact_divide":
        return exact_divide(a, b)
    raise PolyError("unknown op %r" % op)


def exact_divide(a, b):
    """q with a = q*b, graded-lex leading-term division."""
    if isinstance(b, MultiPoly) and b.is_zero():
        raise InexactDivision("division by zero polynomial")
    pair = a._coerce(b)
    if pair is None:
        raise PolyError("cannot coerce divisor")
    a, b = pair
    if a.is_zero():
        return a
    lb_exps, lb_coef = b.leading_term()
    q = {}
    rem = dict(a.terms)
    ring = a.ring
    while rem:
        lr_exps = max(rem, key=_grlex_key)
        lr_coef = rem[lr_exps]
        diff = tuple(x - y for x, y in zip(lr_exps, lb_exps))
        if any(d < 0 for d in diff):
            raise InexactDivision("remainder %s" %
                                  MultiPoly(ring, rem))
        c = exact_quotient(lr_coef, lb_coef)
        if c is None:
            raise InexactDivision("leading coefficient does not divide")
        q[diff] = c
        for e, bc in b.terms.items():
            ne = tuple(x + y for x, y in zip(diff, e))
            cur = rem.get(ne)
            cur = -(c * bc) if cur is None else cur - c * bc
            if cur.is_zero():
                rem.pop(ne, None)
            else:
                rem[ne] = cur
    return MultiPoly(ring, q)


def substitute(p, bindings, ring=None):
    """Simultaneous substitution.

    Keys naming ring variables bind polynomials (unbound variables map to
    themselves); keys naming tower generators specialize parameters and are
    routed through specialize() first.
    """
    varkeys = {k: v for k, v in bindings.items() if k in p.ring.vars}
    genkeys = {k: v for k, v in bindings.items() if k not in p.ring.vars}
    for k in genkeys:
        if k not in p.tower._index:
            raise PolyError("unknown binding target %r" % k)
    if genkeys:
        p = specialize(p, genkeys)
    if not varkeys and ring is None:
        return p
    # locate target ring
    target = ring
    tower = p.tower
    vals = {}
    for k, v in varkeys.items():
        if isinstance(v, MultiPoly):
            if target is None:
                target = v.ring
            elif v.ring.vars != target.vars:
                raise PolyError("bindings disagree on variables")
            if tower.is_prefix_of(v.tower):
                tower = v.tower
            elif not v.tower.is_prefix_of(tower):
                raise TowerMismatch("binding tower unrelated")
            vals[k] = v
        else:
            vals[k] = v
    if target is None:
        target = p.ring
    target = target.with_tower(tower)
    for k in list(vals):
        v = vals[k]
        if isinstance(v, MultiPoly):
            vals[k] = v._lift_to(tower) if v.tower != tower else \
                MultiPoly(target, v.terms)
        else:
            vals[k] = target.of(v)
    for name in p.ring.vars:
        if name not in vals:
            if name not in target.vars:
                raise PolyError(
                    "unbound variable %r missing from target ring" % name)
            vals[name] = target.var(name)
    if p.tower != tower:
        p = p._lift_to(tower)
    out = target.zero()
    cache = {name: {0: target.one(), 1: vals[name]} for name in p.ring.vars}

    def power(name, n):
        c = cache[name]
        if n not in c:
            c[n] = power(name, n - 1) * vals[name]
        return c[n]

    for e, coef in p.terms.items():
        term = target.of(coef)
        for k, x in enumerate(e):
            if x:
                term = term * power(p.ring.vars[k], x)
        out = out + term
    return out


def specialize(p, assignment):
    """Evaluate transcendental tower generators at values.

    The generators named in the assignment drop out of the tower; values may
    be rationals, elements of the reduced tower, or elements of some other
    tower extending it (the result then lives in that taller tower).
    """
    tower = p.tower
    for name in assignment:
        k = tower._index.get(name)
        if k is None:
            raise PolyError("no generator named %r" % name)
        if tower.steps[k].minpoly is not None:
            raise PolyError("generator %r is algebraic" % name)
    removed = {tower._index[n] for n in assignment}
    kept = [i for i in range(len(tower.steps)) if i not in removed]
    # remaining algebraic steps must not reference specialized generators
    for i in kept:
        st = tower.steps[i]
        if st.minpoly is None:
            continue
        for c in st.minpoly:
            # minpoly coefficients live over the prefix tower of step i,
            # so their exponent tuples are shorter than the full tower's
            for exps in c._terms:
                if any(exps[r] for r in removed if r < len(exps)):
                    raise PolyError(
                        "a specialized generator is referenced by the "
                        "defining polynomial of %r" % st.name)
    base = FieldTower(tuple(_rebuild_step(tower, i, kept) for i in kept))
    final = base
    for v in assignment.values():
        if not isinstance(v, FieldElement):
            continue
        if v.tower == final or v.tower.is_prefix_of(final):
            continue
        if final.is_prefix_of(v.tower):
            final = v.tower
        else:
            raise TowerMismatch(
                "specialization value lives in an unrelated tower")
    for name in assignment:
        if name in final._index:
            raise PolyError(
                "specialization value reintroduces generator %r" % name)
    values = {}
    for name, v in assignment.items():
        values[name] = final.of(v)
    gen_image = {}
    for i in kept:
        name = tower.names[i]
        if name not in final._index:
            raise TowerMismatch("kept generator %r missing from the "
                                "value tower" % name)
        gen_image[i] = final.gen(name)
    ring = p.ring.with_tower(final)
    out_terms = {}
    powcache = {n: {1: values[n]} for n in values}

    def gpow(name, n):
        c = powcache[name]
        if n not in c:
            c[n] = gpow(name, n - 1) * values[name]
        return c[n]

    for ve, coef in p.terms.items():
        acc = final.zero()
        for gexps, q in coef._terms.items():
            scalar = final.of(q)
            for gi, x in enumerate(gexps):
                if not x:
                    continue
                name = tower.names[gi]
                if name in values:
                    scalar = scalar * gpow(name, x)
                else:
                    scalar = scalar * gen_image[gi] ** x
            acc = acc + scalar
        if not acc.is_zero():
            out_terms[ve] = acc
    return MultiPoly(ring, out_terms)


def _rebuild_step(tower, i, kept):
    st = tower.steps[i]
    if st.minpoly is None:
        return st
    from .fieldtower import ExtensionStep
    sub = FieldTower(tuple(_rebuild_step(tower, j, kept)
                           for j in kept if j < i))
    coeffs = []
    for c in st.minpoly:
        terms = {}
        for e, q in c._terms.items():
            ne = tuple(e[j] for j in kept if j < i)
            terms[ne] = q
        coeffs.append(FieldElement(sub, terms))
    return ExtensionStep(st.name, coeffs)


class ProjectiveTransform:
    """Invertible 3x3 matrix acting on points as row vectors: the image of
    (X:Y:Z) is (X:Y:Z)M, so variables pull back by var_j -> sum_i var_i*M[i][j].
    """

    def __init__(self, tower, rows):
        self.tower = tower
        self.matrix = tuple(tuple(tower.of(c) for c in row) for row in rows)
        if len(self.matrix) != 3 or any(len(r) != 3 for r in self.matrix):
            raise PolyError("transform needs a 3x3 matrix")
        if self.det().is_zero():
            raise SingularTransform("matrix is singular")

    def det(self):
        m = self.matrix
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    @classmethod
    def identity(cls, tower):
        one, zero = 1, 0
        return cls(tower, ((one, zero, zero),
                           (zero, one, zero),
                           (zero, zero, one)))

    def compose(self, other):
        """Transform acting as self then other (row-vector convention:
        matrix product self.matrix @ other.matrix)."""
        a, b = self.matrix, other.matrix
        tower = self.tower if len(self.tower.steps) >= len(other.tower.steps) \
            else other.tower
        rows = [[sum((a[i][k] * b[k][j] for k in range(3)),
                     tower.zero()) for j in range(3)] for i in range(3)]
        return ProjectiveTransform(tower, rows)

    def inverse(self):
        m = self.matrix
        d = self.det()
        dinv = invert(d)
        cof = [[None] * 3 for _ in range(3)]
        idx = ((1, 2), (0, 2), (0, 1))
        for i in range(3):
            for j in range(3):
                r = idx[i]
                c = idx[j]
                minor = m[r[0]][c[0]] * m[r[1]][c[1]] \
                    - m[r[0]][c[1]] * m[r[1]][c[0]]
                sign = 1 if (i + j) % 2 == 0 else -1
                cof[j][i] = minor * sign * dinv
        return ProjectiveTransform(self.tower, cof)

    def apply_point(self, point):
        """Image of a point given as a length-3 sequence (row vector)."""
        tower = self.tower
        pt = [tower.of(c) for c in point]
        return tuple(
            sum((pt[i] * self.matrix[i][j] for i in range(3)), tower.zero())
            for j in range(3))

    def __eq__(self, other):
        if not isinstance(other, ProjectiveTransform):
            return NotImplemented
        return all(self.matrix[i][j] == other.matrix[i][j]
                   for i in range(3) for j in range(3))


def transform(p, M):
    """Compose p with the coordinate change of M (pullback)."""
    if len(p.ring.vars) != 3:
        raise PolyError("transform expects a three-variable polynomial")
    tower = p.tower
    if tower != M.tower:
        if tower.is_prefix_of(M.tower):
            tower = M.tower
        elif not M.tower.is_prefix_of(tower):
            raise TowerMismatch("transform tower unrelated to polynomial")
    ring = p.ring.with_tower(tower)
    gens = ring.gens()
    bindings = {}
    for j, name in enumerate(ring.vars):
        img = ring.zero()
        for i in range(3):
            img = img + ring.of(M.matrix[i][j]) * gens[i]
        bindings[name] = img
    return substitute(p, bindings, ring=ring)


def partial_derivative(p, v):
    k = p.ring.vars.index(v)
    terms = {}
    for e, c in p.terms.items():
        if e[k] == 0:
            continue
        ne = list(e)
        ne[k] -= 1
        nc = c * e[k]
        if not nc.is_zero():
            terms[tuple(ne)] = nc
    return MultiPoly(p.ring, terms)


def evaluate(p, point):
    """Value at a point given per declared variable (sequence or map)."""
    if isinstance(point, dict):
        vals = [point[n] for n in p.ring.vars]
    else:
        vals = list(point)
    tower = p.tower
    vals = [v if isinstance(v, FieldElement) and v.tower == tower
            else (lift(v, tower) if isinstance(v, FieldElement)
                  and v.tower.is_prefix_of(tower) else tower.of(v))
            for v in vals]
    out = tower.zero()
    cache = [dict() for _ in vals]
    for e, c in p.terms.items():
        term = c
        for k, x in enumerate(e):
            if not x:
                continue
            pk = cache[k].get(x)
            if pk is None:
                pk = vals[k] ** x
                cache[k][x] = pk
            term = term * pk
        out = out + term
    return out


# ----- univariate views (internal helpers for resultant/gcd)


def _univ(p, v):
    """Coefficient list in v (degree-indexed), entries with v-degree zero."""
    k = p.ring.vars.index(v)
    if not p.terms:
        return []
    n = max(e[k] for e in p.terms)
    out = [dict() for _ in range(n + 1)]
    for e, c in p.terms.items():
        ne = list(e)
        d = ne[k]
        ne[k] = 0
        out[d][tuple(ne)] = c
    return [MultiPoly(p.ring, t) for t in out]


def _univ_trim(c):
    while c and c[-1].is_zero():
        c.pop()
    return c


def _from_univ(ring, v, coeffs):
    k = ring.vars.index(v)
    terms = {}
    for d, c in enumerate(coeffs):
        for e, q in c.terms.items():
            ne = list(e)
            ne[k] += d
            terms[tuple(ne)] = q
    return MultiPoly(ring, terms)


def _prem_full(a, b):
    """Pseudo remainder with the exact factor lc(b)^(deg a - deg b + 1)."""
    a = list(a)
    b = list(b)
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    e = da - db + 1
    while a and len(a) - 1 >= db:
        lead = a[-1]
        a = [c * lb for c in a]
        shift = len(a) - 1 - db
        for i in range(db + 1):
            a[shift + i] = a[shift + i] - lead * b[i]
        a.pop()
        _univ_trim(a)
        e -= 1
    if e > 0:
        ring = b[0].ring
        f = lb ** e
        a = [c * f for c in a]
    return a


def resultant(p, q, v):
    """Subresultant-PRS resultant, eliminating v.

    Sign convention: Res(p, q) = lc(p)^deg(q) * product of q over the roots
    of p.
    """
    pair = p._coerce(q)
    if pair is None:
        raise PolyError("cannot coerce resultant arguments")
    p, q = pair
    ring = p.ring
    A = _univ_trim(_univ(p, v))
    B = _univ_trim(_univ(q, v))
    if not A or not B:
        return ring.zero()
    da, db = len(A) - 1, len(B) - 1
    if da == 0 and db == 0:
        return ring.one()
    if da == 0:
        return A[0] ** db
    if db == 0:
        return B[0] ** da
    s = 1
    if da < db:
        A, B = B, A
        if (da % 2) and (db % 2):
            s = -s
    g = ring.one()
    h = ring.one()
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if (da % 2) and (db % 2):
            s = -s
        R = _prem_full(A, B)
        A = B
        if not R:
            return ring.zero()
        denom = g * (h ** delta)
        B = [exact_divide(c, denom) for c in R]
        g = A[-1]
        if delta == 0:
            # h unchanged when no degree gap
            pass
        elif delta == 1:
            h = g
        else:
            h = exact_divide(g ** delta, h ** (delta - 1))
        if len(B) - 1 == 0:
            break
    dA = len(A) - 1
    if dA == 0:
        # should not happen: loop keeps deg A > 0 until B is constant
        return B[0]
    if dA == 1:
        res = B[0]
    else:
        res = exact_divide(B[0] ** dA, h ** (dA - 1))
    if s < 0:
        res = -res
    return res


def content_and_primitive(coeffs):
    """Content (full gcd of the coefficient list) and primitive list."""
    nz = [c for c in coeffs if not c.is_zero()]
    if not nz:
        return None, coeffs
    content = nz[0]
    for c in nz[1:]:
        content = gcd_multi(content, c)
        if content.is_constant():
            break
    content = _normalize(content)
    if content.is_constant():
        return content, list(coeffs)
    return content, [exact_divide(c, content) if not c.is_zero() else c
                     for c in coeffs]


def _normalize(p):
    """Scale so the graded-lex leading coefficient is 1 when invertible."""
    if p.is_zero():
        return p
    _, lc = p.leading_term()
    inv = try_invert(lc)
    if inv is None:
        return p
    if lc.is_one():
        return p
    return p * p.ring.of(inv)


def gcd(p, q, v):
    """Primitive gcd as a univariate in v (contents not included)."""
    pair = p._coerce(q)
    if pair is None:
        raise PolyError("cannot coerce gcd arguments")
    p, q = pair
    if p.is_zero():
        return _normalize(q)
    if q.is_zero():
        return _normalize(p)
    A = _univ_trim(_univ(p, v))
    B = _univ_trim(_univ(q, v))
    if len(A) - 1 == 0 or len(B) - 1 == 0:
        return p.ring.one()
    if len(A) < len(B):
        A, B = B, A
    _, A = content_and_primitive(A)
    _, B = content_and_primitive(B)
    while True:
        R = _prem_full(A, B)
        if not R:
            break
        if len(R) - 1 == 0:
            return p.ring.one()
        A = B
        _, B = content_and_primitive(R)
    return _normalize(_from_univ(p.ring, v, B))


def gcd_multi(p, q):
    """Full multivariate gcd up to a unit of the tower."""
    if p.is_zero():
        return _normalize(q)
    if q.is_zero():
        return _normalize(p)
    if p.is_constant() or q.is_constant():
        return p.ring.one()
    shared = [vname for vname in p.ring.vars
              if p.degree_in(vname) > 0 and q.degree_in(vname) > 0]
    if not shared:
        return p.ring.one()
    v = shared[0]
    cp, pp = content_and_primitive(_univ_trim(_univ(p, v)))
    cq, pq = content_and_primitive(_univ_trim(_univ(q, v)))
    prim = gcd(_from_univ(p.ring, v, pp), _from_univ(p.ring, v, pq), v)
    cont = gcd_multi(cp, cq)
    return _normalize(prim * cont)


# ----- linear factor extraction


def _utrim(c):
    while c and c[-1].is_zero():
        c.pop()
    return c


def _umod(a, b):
    """a mod b for FieldElement coefficient lists; None when the leading
    coefficient of b cannot invert."""
    inv = try_invert(b[-1])
    if inv is None:
        return None
    a = list(a)
    while len(a) >= len(b):
        lead = a[-1] * inv
        shift = len(a) - len(b)
        for i in range(len(b)):
            a[shift + i] = a[shift + i] - lead * b[i]
        a.pop()
        _utrim(a)
    return a


def _ugcd(a, b):
    """Monic univariate gcd of coefficient lists, or None when a leading
    coefficient fails to invert."""
    a, b = _utrim(list(a)), _utrim(list(b))
    while b:
        r = _umod(a, b)
        if r is None:
            return None
        a, b = b, r
    if not a:
        return a
    inv = try_invert(a[-1])
    if inv is None:
        return None
    return [c * inv for c in a]


def _udiv_exact(a, b):
    """Exact quotient of coefficient lists (monic-invertible divisor)."""
    inv = invert(b[-1])
    a = list(a)
    q = [None] * (len(a) - len(b) + 1)
    while len(a) >= len(b):
        lead = a[-1] * inv
        shift = len(a) - len(b)
        q[shift] = lead
        for i in range(len(b)):
            a[shift + i] = a[shift + i] - lead * b[i]
        a.pop()
        _utrim(a)
    if a:
        raise PolyError("inexact univariate division")
    zero = b[-1].tower.zero()
    return [zero if c is None else c for c in q]


def linear_factors_univ(coeffs, tower, adjoin=False, suffix=""):
    """Roots (with multiplicity) of a univariate coefficient list of
    FieldElements.

    Returns (roots, tower, leftover) where roots is a list of
    (root, multiplicity), tower may have grown by square roots when
    adjoin is set, and leftover is the coefficient list of the unresolved
    cofactor over the final tower.
    """
    coeffs = [tower.of(c) if not isinstance(c, FieldElement) else
              (lift(c, tower) if c.tower != tower else c) for c in coeffs]
    _utrim(coeffs)
    roots = []

    def deflate(cs, r):
        # synthetic division by (x - r) via Horner
        out = []
        acc = None
        for c in reversed(cs):
            acc = c if acc is None else acc * r + c
            out.append(acc)
        return list(reversed(out[:-1])), out[-1]

    def add_root(r):
        nonlocal coeffs
        m = 0
        while len(coeffs) > 1:
            quot, rem = deflate(coeffs, r)
            if not rem.is_zero():
                break
            coeffs = quot
            m += 1
        if m:
            roots.append((r, m))
        return m

    def relift():
        nonlocal coeffs
        coeffs = [lift(c, tower) if c.tower != tower else c for c in coeffs]

    # strip root zero
    z = 0
    while coeffs and coeffs[0].is_zero():
        coeffs.pop(0)
        z += 1
    if z:
        roots.append((tower.zero(), z))

    while len(coeffs) > 1:
        if len(coeffs) == 2:
            inv = try_invert(coeffs[1])
            if inv is None:
                break
            add_root(-(coeffs[0] * inv))
            continue
        if len(coeffs) == 3:
            a, b, c0 = coeffs[2], coeffs[1], coeffs[0]
            ainv = try_invert(a)
            if ainv is None:
                break
            disc = b * b - 4 * a * c0
            sq = _square_root_in_tower(disc, tower)
            if sq is None and adjoin and not disc.is_zero():
                tower = tower.extend(_fresh_name(tower, "w" + suffix),
                                     [-disc, tower.zero(), tower.one()])
                sq = tower.gen(_last_name(tower))
                relift()
                a, b = coeffs[2], coeffs[1]
            if sq is None:
                break
            sq = lift(sq, tower) if sq.tower != tower else sq
            a = lift(a, tower) if a.tower != tower else a
            b = lift(b, tower) if b.tower != tower else b
            half = invert(tower.of(2) * a)
            add_root((-b + sq) * half)
            if len(coeffs) > 1:
                add_root((-b - sq) * half)
            break
        if all(c.is_rational() for c in coeffs):
            r = _rational_root(coeffs)
            if r is not None:
                add_root(tower.of(r))
                continue
        # squarefree reduction: roots of coeffs / gcd(coeffs, coeffs')
        deriv = [coeffs[i] * i for i in range(1, len(coeffs))]
        g = _ugcd(coeffs, deriv)
        if g is None or len(g) < 2:
            break
        sf = _udiv_exact(coeffs, g)
        sub_roots, tower, _ = linear_factors_univ(sf, tower, adjoin=adjoin,
                                                  suffix=suffix)
        relift()
        found = 0
        for r, _m in sub_roots:
            r = lift(r, tower) if r.tower != tower else r
            found += add_root(r)
        if not found:
            break
    return roots, tower, coeffs


def _fresh_name(tower, base):
    name = base
    i = 2
    while name in tower._index:
        name = "%s%d" % (base, i)
        i += 1
    return name


def _last_name(tower):
    return tower.names[-1]


def _rational_root(coeffs):
    """One rational root of a rational-coefficient list, or None."""
    from fractions import Fraction
    qs = [Fraction(int(c.as_rational().numerator),
                   int(c.as_rational().denominator))
          if not c.is_zero() else Fraction(0) for c in coeffs]
    # clear denominators
    den = 1
    for q in qs:
        den = den * q.denominator // _igcd(den, q.denominator)
    ints = [int(q * den) for q in qs]
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        return Fraction(0)
    for pnum in _divisors(abs(a0)):
        for qden in _divisors(abs(an)):
            for sign in (1, -1):
                cand = Fraction(sign * pnum, qden)
                acc = 0
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    return cand
    return None


def _igcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n, bound=10 ** 6):
    out = []
    d = 1
    while d * d <= n and d <= bound:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(x for x in out if x <= bound) or [1]


def _square_root_in_tower(e, tower):
    """Square root of e inside the tower when one is evident, else None.

    Rational squares are resolved exactly; a generator whose square is e is
    picked up; otherwise None.
    """
    if e.is_zero():
        return tower.zero()
    if e.is_rational():
        q = e.as_rational()
        if q < 0:
            pass
        else:
            num, den = q.numerator, q.denominator
            rn = _isqrt_exact(num)
            rd = _isqrt_exact(den)
            if rn is not None and rd is not None:
                return tower.of(_Q(rn) / _Q(rd))
    # look for a generator g with g^2 == e, or rational multiple thereof
    for name in tower.names:
        g = tower.gen(name)
        g2 = g * g
        if g2 == e:
            return g
        if not g2.is_zero():
            ratio = exact_quotient(e, g2)
            if ratio is not None and ratio.is_rational():
                q = ratio.as_rational()
                if q > 0:
                    rn = _isqrt_exact(q.numerator)
                    rd = _isqrt_exact(q.denominator)
                    if rn is not None and rd is not None:
                        return g * (_Q(rn) / _Q(rd))
    return None


def _isqrt_exact(n):
    n = int(n)
    if n < 0:
        return None
    r = int(n ** 0.5)
    for cand in (r - 1, r, r + 1, r + 2):
        if cand >= 0 and cand * cand == n:
            return cand
    if r > 2 ** 26:
        import math
        r = math.isqrt(n)
        if r * r == n:
            return r
    return None


def factor_linear(p, adjoin=False):
    """All linear factors of a homogeneous three-variable polynomial over
    the tower (optionally adjoining square roots), plus the remainder.

    Returns (factors, remainder) with factors a list of
    (linear MultiPoly, multiplicity); remainder has no linear factor over
    the final tower.  When adjoin grows the tower the returned polynomials
    live in the extended tower.
    """
    if not p.is_homogeneous():
        raise PolyError("factor_linear expects a homogeneous polynomial")
    if len(p.ring.vars) != 3:
        raise PolyError("factor_linear expects three variables")
    ring = p.ring
    tower = p.tower
    factors = []
    rem = p
    # variable factors first
    for k, name in enumerate(ring.vars):
        if rem.is_zero():
            break
        m = min(e[k] for e in rem.terms)
        if m > 0:
            var = ring.var(name)
            for _ in range(m):
                rem = exact_divide(rem, var)
            factors.append((var, m))
    if rem.is_constant():
        return factors, rem
    nx, ny, nz = ring.vars
    # direction candidates from the Z = 0 shadow, a nonzero binary form
    shadow = substitute(rem, {nz: ring.zero()})
    coeffs = []
    for cpoly in _univ(shadow, nx):
        if cpoly.is_zero():
            coeffs.append(tower.zero())
        else:
            coeffs.append(next(iter(cpoly.terms.values())))
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    x_degree = len(coeffs) - 1
    droots, tower, _leftover = linear_factors_univ(coeffs, tower,
                                                   adjoin=adjoin, suffix="a")
    if tower != rem.tower:
        ring = ring.with_tower(tower)
        rem = rem._lift_to(tower)
    # each root r gives the direction X - r*Y; a degree gap means the
    # shadow is divisible by Y, giving the direction Y
    directions = [("x_minus", r) for r, _m in droots]
    if x_degree < shadow.total_degree():
        directions.append(("y", None))
    for kind, r in directions:
        if rem.total_degree() < 1:
            break
        tower = rem.tower
        if kind == "x_minus":
            keep = (ny, nz)
            target = PolyRing(tower, (ny, nz, "_c"))
            r = lift(r, tower) if r.tower != tower else r
            bind = {nx: target.of(r) * target.var(ny)
                    - target.var("_c") * target.var(nz)}
        else:
            keep = (nx, nz)
            target = PolyRing(tower, (nx, nz, "_c"))
            bind = {ny: -target.var("_c") * target.var(nz)}
        img = substitute(rem, bind, ring=target)
        # the image must vanish identically in the kept variables, so
        # intersect the root sets of its coefficient polynomials in _c
        groups = {}
        for e, c in img.terms.items():
            groups.setdefault((e[0], e[1]), {})[(0, 0, e[2])] = c
        cpolys = [MultiPoly(target, g) for g in groups.values()]
        g = cpolys[0]
        for other in cpolys[1:]:
            if g.is_constant():
                break
            g = gcd(g, other, "_c")
        if g.is_constant() or g.is_zero():
            continue
        clist = []
        for d in range(g.degree_in("_c") + 1):
            cp = g.coeff_in("_c", d)
            clist.append(cp.constant_value())
        croots, tower2, _ = linear_factors_univ(clist, tower, adjoin=adjoin,
                                                suffix="b")
        if tower2 != tower:
            tower = tower2
            ring = ring.with_tower(tower)
            rem = rem._lift_to(tower)
        for cval, _mult in croots:
            cval = lift(cval, tower) if cval.tower != tower else cval
            if kind == "x_minus":
                rr = lift(r, tower) if r.tower != tower else r
                lin = ring.var(nx) - ring.of(rr) * ring.var(ny) \
                    + ring.of(cval) * ring.var(nz)
            else:
                lin = ring.var(ny) + ring.of(cval) * ring.var(nz)
            mult = 0
            while True:
                try:
                    rem2 = exact_divide(rem, lin)
                except InexactDivision:
                    break
                rem = rem2
                mult += 1
            if mult:
                factors.append((lin, mult))
    if factors:
        final_tower = rem.tower
        out = []
        for f, m in factors:
            out.append((f._lift_to(final_tower)
                        if f.tower != final_tower else f, m))
        factors = out
    return factors, rem

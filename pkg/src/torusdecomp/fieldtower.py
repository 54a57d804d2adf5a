"""Exact arithmetic in towers of extensions of the rationals.

A tower starts at Q and grows by named generators, each either
transcendental (a free parameter) or algebraic with a monic defining
polynomial over the levels below.  No irreducibility test is run on
adjunction; a reducible defining polynomial surfaces lazily as a
ZeroDivisor when an inversion walks into it.

Elements are stored in a canonical reduced form (degree in every algebraic
generator strictly below its defining degree, rational coefficients in
lowest terms), so equality of reduced forms is structural equality.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as _Q
except ImportError:
    _Q = Fraction

_ZERO = _Q(0)


class TowerError(Exception):
    pass


class DuplicateName(TowerError):
    pass


class NonMonicMinpoly(TowerError):
    pass


class TowerMismatch(TowerError):
    pass


class ZeroDivisor(TowerError):
    """Inversion hit zero or a non-unit of the quotient ring.

    witness carries the offending gcd (a FieldElement, polynomial in the
    generator being inverted against) when one exists.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotInvertible(TowerError):
    """The element is a non-unit of the polynomial part of the tower
    (positive degree in a transcendental generator)."""


def _as_rational(value):
    if isinstance(value, int):
        return _Q(value)
    if isinstance(value, Fraction):
        # a Fraction built from third-party integer types can carry
        # non-int parts that the fast constructor rejects
        return _Q(int(value.numerator), int(value.denominator))
    if isinstance(value, type(_Q(0))):
        return _Q(value)
    # gmpy2 integers pass through _Q
    try:
        return _Q(value)
    except (TypeError, ValueError):
        return None


class ExtensionStep:
    """One tower level: a name plus an optional monic defining polynomial.

    minpoly is a tuple of coefficients (constant term first, leading 1 last)
    whose entries are FieldElements of the tower below this step, or None
    for a transcendental generator.
    """

    __slots__ = ("name", "minpoly")

    def __init__(self, name, minpoly=None):
        self.name = name
        self.minpoly = None if minpoly is None else tuple(minpoly)

    @property
    def is_algebraic(self):
        return self.minpoly is not None

    def describe(self):
        if self.minpoly is None:
            return "%s: transcendental" % self.name
        parts = []
        deg = len(self.minpoly) - 1
        for i in range(deg, -1, -1):
            c = self.minpoly[i]
            if c.is_zero():
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c.is_one() else "%s*" % _coeff_str(c)
                mono = self.name if i == 1 else "%s^%d" % (self.name, i)
                parts.append(head + mono)
        return "%s: minpoly = %s" % (self.name, _join_signed(parts))


def _coeff_str(c):
    s = str(c)
    if c.is_rational() and "/" not in s and not s.startswith("-"):
        return s
    return "(%s)" % s if ("+" in s[1:] or "-" in s[1:] or "/" in s) else s


def _join_signed(parts):
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


class FieldTower:
    """Immutable sequence of ExtensionSteps over the rationals."""

    def __init__(self, steps=()):
        self.steps = tuple(steps)
        self.names = tuple(s.name for s in self.steps)
        self._index = {n: i for i, n in enumerate(self.names)}
        n = len(self.steps)
        self._rewrites = []
        sig = []
        for k, step in enumerate(self.steps):
            if step.minpoly is None:
                self._rewrites.append(None)
                sig.append((step.name, None))
                continue
            deg = len(step.minpoly) - 1
            rew = {}
            for i in range(deg):
                c = step.minpoly[i]
                for exps, q in c._terms.items():
                    key = list(exps) + [0] * (n - len(exps))
                    key[k] = i
                    key = tuple(key)
                    rew[key] = rew.get(key, _ZERO) - q
            rew = {e: q for e, q in rew.items() if q != 0}
            self._rewrites.append((deg, rew))
            sig.append((step.name,
                        tuple(tuple(sorted(c._terms.items()))
                              for c in step.minpoly)))
        self._sig = tuple(sig)

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self._sig == other._sig

    def __hash__(self):
        return hash(self._sig)

    def is_prefix_of(self, other):
        return self._sig == other._sig[:len(self._sig)]

    def describe(self):
        return [s.describe() for s in self.steps]

    def zero(self):
        return FieldElement(self, {})

    def one(self):
        return FieldElement(self, {(0,) * len(self.steps): _Q(1)})

    def of(self, value):
        if isinstance(value, FieldElement):
            return lift(value, self)
        q = _as_rational(value)
        if q is None:
            raise TowerMismatch("cannot coerce %r into the tower" % (value,))
        if q == 0:
            return self.zero()
        return FieldElement(self, {(0,) * len(self.steps): q})

    def gen(self, name):
        k = self._index.get(name)
        if k is None:
            raise TowerMismatch("no generator named %r" % name)
        exps = [0] * len(self.steps)
        exps[k] = 1
        return FieldElement(self, {tuple(exps): _Q(1)})

    def extend(self, name, minpoly=None):
        return tower_extend(self, ExtensionStep(name, minpoly))

    def _reduce_terms(self, terms):
        """Reduce a raw exponent->rational dict modulo the defining
        polynomials, top level first."""
        for k in range(len(self.steps) - 1, -1, -1):
            rw = self._rewrites[k]
            if rw is None:
                continue
            deg, rew = rw
            again = True
            while again:
                again = False
                for exps in list(terms.keys()):
                    e = exps[k]
                    if e < deg:
                        continue
                    c = terms.pop(exps)
                    if c == 0:
                        continue
                    base = list(exps)
                    base[k] = e - deg
                    for rexps, rq in rew.items():
                        nexps = tuple(b + r for b, r in zip(base, rexps))
                        terms[nexps] = terms.get(nexps, _ZERO) + c * rq
                    again = True
        return {e: q for e, q in terms.items() if q != 0}


QQ = FieldTower()


def tower_extend(tower, step):
    if step.name in tower._index:
        raise DuplicateName("generator %r already present" % step.name)
    if step.minpoly is not None:
        coeffs = [tower.of(c) for c in step.minpoly]
        if len(coeffs) < 3:
            raise NonMonicMinpoly("defining polynomial must have degree >= 2")
        if not coeffs[-1].is_one():
            raise NonMonicMinpoly("defining polynomial must be monic")
        step = ExtensionStep(step.name, coeffs)
    return FieldTower(tower.steps + (step,))


def lift(e, tower):
    """Re-express an element of a prefix tower in a taller tower."""
    if e.tower == tower:
        return e
    if not e.tower.is_prefix_of(tower):
        raise TowerMismatch("element does not live in a prefix of the tower")
    pad = len(tower.steps) - len(e.tower.steps)
    terms = {exps + (0,) * pad: q for exps, q in e._terms.items()}
    return FieldElement(tower, terms)


def _common_tower(a, b):
    if a.tower == b.tower:
        return a, b
    if a.tower.is_prefix_of(b.tower):
        return lift(a, b.tower), b
    if b.tower.is_prefix_of(a.tower):
        return a, lift(b, a.tower)
    raise TowerMismatch("elements live in unrelated towers")


class FieldElement:
    """Canonical reduced element of a FieldTower."""

    __slots__ = ("tower", "_terms")

    def __init__(self, tower, terms, reduced=True):
        self.tower = tower
        if not reduced:
            terms = tower._reduce_terms(dict(terms))
        self._terms = terms

    # ----- predicates

    def is_zero(self):
        return not self._terms

    def is_one(self):
        n = len(self.tower.steps)
        return self._terms == {(0,) * n: _Q(1)}

    def is_rational(self):
        return all(all(x == 0 for x in e) for e in self._terms)

    def as_rational(self):
        if not self._terms:
            return _Q(0)
        if not self.is_rational():
            raise TowerMismatch("element is not rational")
        return next(iter(self._terms.values()))

    def _top_level(self):
        """Index of the highest generator appearing, or -1."""
        top = -1
        for exps in self._terms:
            for k in range(len(exps) - 1, top, -1):
                if exps[k] > 0:
                    top = k
                    break
        return top

    # ----- arithmetic

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return _common_tower(self, other)
        q = _as_rational(other)
        if q is None:
            return None
        return self, self.tower.of(q)

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        terms = dict(a._terms)
        for e, q in b._terms.items():
            s = terms.get(e, _ZERO) + q
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return FieldElement(a.tower, terms)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.tower, {e: -q for e, q in self._terms.items()})

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
        if not a._terms or not b._terms:
            return a.tower.zero()
        terms = {}
        for e1, q1 in a._terms.items():
            for e2, q2 in b._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, _ZERO) + q1 * q2
        return FieldElement(a.tower, terms, reduced=False)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return invert(self) ** (-n)
        result = self.tower.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * invert(b)

    def __rtruediv__(self, other):
        return self.tower.of(other) * invert(self)

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a._terms == b._terms

    def __hash__(self):
        return hash((self.tower, tuple(sorted(self._terms.items()))))

    def __bool__(self):
        return bool(self._terms)

    # ----- printing

    def __str__(self):
        if not self._terms:
            return "0"
        names = self.tower.names
        keys = sorted(self._terms.keys(), key=lambda e: (sum(e), e),
                      reverse=True)
        parts = []
        for e in keys:
            q = self._terms[e]
            monos = []
            for k, x in enumerate(e):
                if x == 1:
                    monos.append(names[k])
                elif x > 1:
                    monos.append("%s^%d" % (names[k], x))
            if not monos:
                parts.append(str(q))
            elif q == 1:
                parts.append("*".join(monos))
            elif q == -1:
                parts.append("-" + "*".join(monos))
            else:
                parts.append(str(q) + "*" + "*".join(monos))
        return _join_signed(parts)

    def __repr__(self):
        return "<FieldElement %s>" % self


def reduce(e):
    """Canonical form of e.  Elements are kept reduced, so this is the
    identity on well-formed values; raw term dicts get normalized."""
    return FieldElement(e.tower, dict(e._terms), reduced=False)


def equals(a, b):
    if not isinstance(a, FieldElement) or not isinstance(b, FieldElement):
        raise TowerMismatch("equals expects two tower elements")
    a, b = _common_tower(a, b)
    return a._terms == b._terms


def _univariate_parts(e, k):
    """Split e into a dict degree-in-generator-k -> FieldElement free of
    generators >= k."""
    parts = {}
    for exps, q in e._terms.items():
        d = exps[k]
        rest = list(exps)
        rest[k] = 0
        rest = tuple(rest)
        bucket = parts.setdefault(d, {})
        bucket[rest] = bucket.get(rest, _ZERO) + q
    return {d: FieldElement(e.tower, {x: q for x, q in t.items() if q != 0})
            for d, t in parts.items()}


def _from_univariate(tower, k, coeffs):
    terms = {}
    for d, c in enumerate(coeffs):
        for exps, q in c._terms.items():
            e = list(exps)
            e[k] += d
            e = tuple(e)
            terms[e] = terms.get(e, _ZERO) + q
    return FieldElement(tower, terms, reduced=False)


def _poly_trim(c):
    while c and c[-1].is_zero():
        c.pop()
    return c


def _poly_divmod(num, den, tower):
    """Euclidean division of generator-k-univariate coefficient lists.
    Leading coefficient of den must invert."""
    num = list(num)
    q = [tower.zero()] * max(0, len(num) - len(den) + 1)
    inv_lead = invert(den[-1])
    while len(num) >= len(den) and num:
        if num[-1].is_zero():
            num.pop()
            continue
        shift = len(num) - len(den)
        factor = num[-1] * inv_lead
        q[shift] = q[shift] + factor
        for i, d in enumerate(den):
            num[shift + i] = num[shift + i] - factor * d
        _poly_trim(num)
    return q, num


def invert(e):
    """Multiplicative inverse, by extended Euclid against each defining
    polynomial from the top of the tower down."""
    if not isinstance(e, FieldElement):
        raise TowerMismatch("invert expects a tower element")
    if e.is_zero():
        raise ZeroDivisor("cannot invert zero", witness=e)
    k = e._top_level()
    if k < 0:
        return FieldElement(e.tower,
                            {(0,) * len(e.tower.steps):
                             1 / next(iter(e._terms.values()))})
    tower = e.tower
    step = tower.steps[k]
    if step.minpoly is None:
        raise NotInvertible(
            "positive degree in transcendental generator %r" % step.name)
    # extended Euclid in generator k over the tower below it
    parts = _univariate_parts(e, k)
    deg_e = max(parts)
    epoly = [parts.get(d, tower.zero()) for d in range(deg_e + 1)]
    mpoly = [lift(c, tower) for c in step.minpoly]
    r0, r1 = list(mpoly), list(epoly)
    t0, t1 = [tower.zero()], [tower.one()]
    while True:
        _poly_trim(r1)
        if not r1:
            witness = _from_univariate(tower, k, r0)
            raise ZeroDivisor(
                "non-unit modulo the defining polynomial of %r" % step.name,
                witness=witness)
        if len(r1) == 1:
            c_inv = invert(r1[0])
            terms = [c_inv * t for t in t1]
            return _from_univariate(tower, k, terms)
        q, rem = _poly_divmod(r0, r1, tower)
        r0, r1 = r1, rem
        # t_next = t0 - q*t1
        t_next = list(t0) + [tower.zero()] * max(
            0, len(q) + len(t1) - 1 - len(t0))
        for i, qi in enumerate(q):
            if qi.is_zero():
                continue
            for j, tj in enumerate(t1):
                t_next[i + j] = t_next[i + j] - qi * tj
        t0, t1 = t1, _poly_trim(t_next) or [tower.zero()]


def try_invert(e):
    """invert, with failure reported as None instead of an exception."""
    try:
        return invert(e)
    except (ZeroDivisor, NotInvertible):
        return None


def exact_quotient(a, b):
    """q with q*b == a, or None when b does not divide a.

    Handles divisors of positive degree in transcendental generators by
    univariate polynomial division in the topmost such generator; divisors
    that are zero divisors of the quotient ring report None.
    """
    if not isinstance(a, FieldElement) or not isinstance(b, FieldElement):
        raise TowerMismatch("exact_quotient expects two tower elements")
    a, b = _common_tower(a, b)
    if b.is_zero():
        return None
    if a.is_zero():
        return a
    inv = try_invert(b)
    if inv is not None:
        return a * inv
    k = b._top_level()
    if k < 0 or a._top_level() < k:
        return None
    tower = a.tower
    pa = _univariate_parts(a, k)
    pb = _univariate_parts(b, k)
    db = max(pb)
    lead_b = pb[db]
    qparts = {}
    rem = dict(pa)
    while rem:
        dr = max(rem)
        if dr < db:
            return None
        c = exact_quotient(rem[dr], lead_b)
        if c is None:
            return None
        qparts[dr - db] = c
        for d, pc in pb.items():
            nd = dr - db + d
            cur = rem.get(nd, tower.zero())
            cur = cur - c * pc
            if cur.is_zero():
                rem.pop(nd, None)
            else:
                rem[nd] = cur
    coeffs = [qparts.get(d, tower.zero()) for d in range(max(qparts) + 1)]
    return _from_univariate(tower, k, coeffs)

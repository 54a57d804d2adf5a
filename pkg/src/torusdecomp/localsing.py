"""Local analysis of plane curves over exact towers.

Singular locus by resultant elimination with radical (degree <= 2) root
adjunction, multiplicities and Milnor numbers of germs, intersection
multiplicities with lines, a small germ classifier (A_n, E_6, line stars),
the incidence oracles for decompositions of quartics, and the classifier
that places a quartic-plus-line-at-infinity configuration into one of the
nineteen admissible classes.
"""

from .fieldtower import (
    FieldElement,
    lift,
    try_invert,
    invert,
    TowerMismatch,
)
from .polyring import (
    MultiPoly,
    PolyRing,
    PolyError,
    InexactDivision,
    exact_divide,
    substitute,
    partial_derivative,
    evaluate,
    gcd_multi,
    factor_linear,
    linear_factors_univ,
    resultant,
    _univ,
    _utrim,
    _ugcd,
)


class SingError(Exception):
    pass


class NonReducedCurve(SingError):
    pass


class NonIsolated(SingError):
    pass


class LineContained(SingError):
    pass


class InvalidIncidence(SingError):
    pass


class PointNotOnCurve(SingError):
    pass


class UnresolvedSingularLocus(SingError):
    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class ProjPoint:
    """Projective point [x:y:z]; the last nonzero coordinate is scaled to 1
    whenever it inverts."""

    __slots__ = ("tower", "coords")

    def __init__(self, tower, coords):
        cs = [c if isinstance(c, FieldElement) else tower.of(c)
              for c in coords]
        if len(cs) != 3:
            raise SingError("projective points need three coordinates")
        for i, c in enumerate(cs):
            if c.tower != tower:
                cs[i] = lift(c, tower)
        if all(c.is_zero() for c in cs):
            raise SingError("all coordinates vanish")
        for i in (2, 1, 0):
            if not cs[i].is_zero():
                inv = try_invert(cs[i])
                if inv is not None:
                    cs = [c * inv for c in cs]
                break
        self.tower = tower
        self.coords = tuple(cs)

    @property
    def at_infinity(self):
        return self.coords[2].is_zero()

    def lifted(self, tower):
        if tower == self.tower:
            return self
        return ProjPoint(tower, [lift(c, tower) for c in self.coords])

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        a, b = self, other
        if a.tower != b.tower:
            if a.tower.is_prefix_of(b.tower):
                a = a.lifted(b.tower)
            elif b.tower.is_prefix_of(a.tower):
                b = b.lifted(a.tower)
            else:
                return False
        (x1, y1, z1), (x2, y2, z2) = a.coords, b.coords
        return (x1 * y2 - x2 * y1).is_zero() and \
            (x1 * z2 - x2 * z1).is_zero() and \
            (y1 * z2 - y2 * z1).is_zero()

    def __str__(self):
        return "[%s]" % ":".join(str(c) for c in self.coords)

    def __repr__(self):
        return "<ProjPoint %s>" % self


class LocalType:
    """Tagged germ type: a_n, e_6, a star of m lines, a smooth point with
    optional tangency order, or unsupported."""

    __slots__ = ("kind", "n", "tangency", "mult", "milnor")

    def __init__(self, kind, n=None, tangency=None, mult=None, milnor=None):
        self.kind = kind
        self.n = n
        self.tangency = tangency
        self.mult = mult
        self.milnor = milnor

    @classmethod
    def a(cls, n):
        return cls("a", n=n, mult=2, milnor=n)

    @classmethod
    def e6(cls):
        return cls("e6", mult=3, milnor=6)

    @classmethod
    def lines(cls, m):
        return cls("lines", n=m, mult=m)

    @classmethod
    def smooth(cls, tangency=None):
        return cls("smooth", tangency=tangency, mult=1, milnor=0)

    @classmethod
    def unsupported(cls, mult, milnor):
        return cls("unsupported", mult=mult, milnor=milnor)

    def __eq__(self, other):
        if not isinstance(other, LocalType):
            return NotImplemented
        return (self.kind, self.n, self.tangency) == \
            (other.kind, other.n, other.tangency)

    def __hash__(self):
        return hash((self.kind, self.n, self.tangency))

    def __str__(self):
        if self.kind == "a":
            return "a%d" % self.n
        if self.kind == "e6":
            return "e6"
        if self.kind == "lines":
            return "lines%d" % self.n
        if self.kind == "smooth":
            if self.tangency is not None:
                return "smooth(tangency %d)" % self.tangency
            return "smooth"
        return "unsupported(mult %s, milnor %s)" % (self.mult, self.milnor)

    def __repr__(self):
        return "<LocalType %s>" % self


class LocalIncidence:
    """Intersection data of the background conic with the cube line and the
    line at infinity at a point."""

    __slots__ = ("iota1", "iota2", "c2_smooth")

    def __init__(self, iota1, iota2, c2_smooth):
        self.iota1 = iota1
        self.iota2 = iota2
        self.c2_smooth = c2_smooth


class QLClass:
    """Configuration class: a row index 1..19 or None, with the computed
    singularity multiset and the infinity-behavior tag."""

    __slots__ = ("index", "signature", "case")

    def __init__(self, index, signature, case):
        self.index = index
        self.signature = signature
        self.case = case

    def __eq__(self, other):
        if isinstance(other, int):
            return self.index == other
        if other is None:
            return self.index is None
        if isinstance(other, QLClass):
            return (self.index, self.signature, self.case) == \
                (other.index, other.signature, other.case)
        return NotImplemented

    def __str__(self):
        sig = "+".join("%s%s" % ("" if m == 1 else "%d*" % m, lab)
                       for lab, m in sorted(self.signature.items())) \
            if self.signature else "smooth"
        if self.index is None:
            return "none (%s, case %s)" % (sig, self.case)
        return "class %d (%s, case %s)" % (self.index, sig, self.case)

    def __repr__(self):
        return "<QLClass %s>" % self


# ----- germs and local invariants


def affine_germ(F, P):
    """Local equation of F at P, P moved to the origin of a two-variable
    chart (x, y)."""
    tower = F.tower
    if P.tower != tower:
        if tower.is_prefix_of(P.tower):
            F = F._lift_to(P.tower)
            tower = P.tower
        elif P.tower.is_prefix_of(tower):
            P = P.lifted(tower)
        else:
            raise TowerMismatch("point tower unrelated to curve tower")
    local = PolyRing(tower, "x y")
    x, y = local.gens()
    a, b, c = P.coords
    nx, ny, nz = F.ring.vars
    if not c.is_zero():
        bind = {nx: x + local.of(a), ny: y + local.of(b), nz: local.one()}
    elif not b.is_zero():
        bind = {nx: x + local.of(a), ny: local.one(), nz: y}
    else:
        bind = {nx: local.one(), ny: x, nz: y}
    return substitute(F, bind, ring=local)


def multiplicity(F, P):
    """Order of the germ of F at P; 0 when P is off the curve."""
    f = affine_germ(F, P)
    if f.is_zero():
        raise SingError("zero polynomial has no multiplicity")
    m = min(sum(e) for e in f.terms)
    return m


def _lowest_form(f):
    m = min(sum(e) for e in f.terms)
    return MultiPoly(f.ring, {e: c for e, c in f.terms.items()
                              if sum(e) == m}), m


def milnor_number(F, P):
    """Milnor number at P via the order of the eliminant of the sheared
    partials, guarded by an explicit genericity certificate."""
    f = affine_germ(F, P)
    if not evaluate(f, (0, 0)).is_zero():
        raise PointNotOnCurve("point is not on the curve")
    local = f.ring
    x, y = local.gens()
    fx = partial_derivative(f, "x")
    fy = partial_derivative(f, "y")
    g = gcd_multi(fx, fy)
    if g.total_degree() > 0:
        if evaluate(g, (0, 0)).is_zero():
            raise NonIsolated("the partials share a factor through the point")
        fx = exact_divide(fx, g)
        fy = exact_divide(fy, g)
    if fx.is_constant() or fy.is_constant():
        # Jacobian ideal is the unit ideal near the origin
        return 0
    for k in range(40):
        p = substitute(fx, {"x": x + k * y}) if k else fx
        q = substitute(fy, {"x": x + k * y}) if k else fy
        if p.degree_in("y") < 1 or q.degree_in("y") < 1:
            continue
        # certificate 1: leading y-coefficients survive x = 0
        lp = _univ(p, "y")[-1]
        lq = _univ(q, "y")[-1]
        if evaluate(lp, (0, 0)).is_zero() or evaluate(lq, (0, 0)).is_zero():
            continue
        # certificate 2: the origin is the only common zero above x = 0
        p0 = [evaluate(c, (0, 0)) for c in _univ(p, "y")]
        q0 = [evaluate(c, (0, 0)) for c in _univ(q, "y")]
        u = _ugcd(p0, q0)
        if u is None:
            continue
        lead_zero = 0
        while lead_zero < len(u) and u[lead_zero].is_zero():
            lead_zero += 1
        if len(u) - 1 != lead_zero:
            continue
        r = resultant(p, q, "y")
        if r.is_zero():
            continue
        return min(e[0] for e in r.terms)
    raise SingError("no generic shear found")


def line_intersection_multiplicity(F, L, P):
    """Order of contact of F with the line L at P."""
    tower = F.tower
    for other in (L.tower, P.tower):
        if tower.is_prefix_of(other):
            tower = other
    F = F._lift_to(tower) if F.tower != tower else F
    L = L._lift_to(tower) if L.tower != tower else L
    P = P.lifted(tower) if P.tower != tower else P
    if not evaluate(L, P.coords).is_zero():
        raise SingError("point is not on the line")
    if not evaluate(F, P.coords).is_zero():
        return 0
    try:
        exact_divide(F, L)
        raise LineContained("the line is a component of the curve")
    except InexactDivision:
        pass
    a = L.coeff((1, 0, 0))
    b = L.coeff((0, 1, 0))
    c = L.coeff((0, 0, 1))
    candidates = [(b, -a, tower.zero()),
                  (c, tower.zero(), -a),
                  (tower.zero(), c, -b)]
    D = None
    px, py, pz = P.coords
    for d in candidates:
        if all(v.is_zero() for v in d):
            continue
        minors = (px * d[1] - py * d[0],
                  px * d[2] - pz * d[0],
                  py * d[2] - pz * d[1])
        if not all(m.is_zero() for m in minors):
            D = d
            break
    if D is None:
        raise SingError("degenerate line")
    sring = PolyRing(tower, ("s",))
    s = sring.var("s")
    bind = {}
    for i, name in enumerate(F.ring.vars):
        bind[name] = sring.of(P.coords[i]) + s * sring.of(D[i])
    g = substitute(F, bind, ring=sring)
    if g.is_zero():
        raise LineContained("the line is a component of the curve")
    return min(e[0] for e in g.terms)


def classify_singularity(F, P, line=None):
    """Decision tree on (multiplicity, Milnor number, leading form)."""
    f = affine_germ(F, P)
    if not evaluate(f, (0, 0)).is_zero():
        raise PointNotOnCurve("point is not on the curve")
    form, m = _lowest_form(f)
    if m == 1:
        if line is not None:
            return LocalType.smooth(
                line_intersection_multiplicity(F, line, P))
        return LocalType.smooth()
    if m == 2:
        mu = milnor_number(F, P)
        return LocalType.a(mu)
    # a star of lines: the germ coincides with its leading form and the
    # form splits into linear factors
    if f == form:
        lifted = _binary_to_three(form)
        facs, rem = factor_linear(lifted, adjoin=True)
        if rem.is_constant() and sum(mm for _, mm in facs) == m:
            return LocalType.lines(m)
    if m == 3:
        mu = None
        try:
            mu = milnor_number(F, P)
        except NonIsolated:
            mu = None
        if mu == 6 and _is_perfect_cube_form(form):
            return LocalType.e6()
        return LocalType.unsupported(3, mu)
    try:
        mu = milnor_number(F, P)
    except NonIsolated:
        mu = None
    return LocalType.unsupported(m, mu)


def _binary_to_three(form):
    ring3 = PolyRing(form.tower, (form.ring.vars[0], form.ring.vars[1], "_z"))
    terms = {(e[0], e[1], 0): c for e, c in form.terms.items()}
    return MultiPoly(ring3, terms)


def _is_perfect_cube_form(form):
    """form is c*(ax+by)^3 for a binary cubic form."""
    if form.total_degree() != 3:
        return False
    g = gcd_multi(form, partial_derivative(form, form.ring.vars[0]))
    g = gcd_multi(g, partial_derivative(form, form.ring.vars[1]))
    return g.total_degree() == 2


# ----- singular locus


class SingularLocus:
    __slots__ = ("points", "unresolved", "tower")

    def __init__(self, points, unresolved, tower):
        self.points = points
        self.unresolved = unresolved
        self.tower = tower

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def _check_reduced(F):
    g = gcd_multi(F, partial_derivative(F, F.ring.vars[0]))
    if g.total_degree() > 0:
        g = gcd_multi(g, partial_derivative(F, F.ring.vars[1]))
        if g.total_degree() > 0:
            g = gcd_multi(g, partial_derivative(F, F.ring.vars[2]))
            if g.total_degree() > 0:
                raise NonReducedCurve(
                    "curve has the repeated component %s" % g)


def _narrow_eliminant(rc, pair, extra, vx, vy):
    """Shrink an x-eliminant to its gcd with the eliminants of the extra
    constraints; every common zero of the full system survives."""
    for h in extra:
        rc = _utrim(rc)
        if len(rc) <= 1:
            break
        cand = None
        if h.degree_in(vy) == 0:
            cand = [c.constant_value() for c in _univ(h, vx)]
        else:
            for other in pair:
                rh = resultant(other, h, vy)
                if not rh.is_zero():
                    cand = [c.constant_value() for c in _univ(rh, vx)]
                    break
        if cand is None:
            continue
        g = _ugcd(rc, _utrim(cand))
        if g is not None:
            rc = g
    return _utrim(rc)


def _fiber_cut(ys, extra, x0, vx, vy, tower):
    """Intersect a y-fiber polynomial with the fibers of the extra
    constraints above x = x0."""
    for h in extra:
        ys = _utrim(ys)
        if len(ys) <= 1:
            break
        hl = h._lift_to(tower) if h.tower != tower else h
        hc = _utrim([c.constant_value()
                     for c in _univ(substitute(hl, {vx: hl.ring.of(x0)}),
                                    vy)])
        if not hc:
            continue
        g = _ugcd(ys, hc)
        if g is not None:
            ys = g
    return _utrim(ys)


def _solve_pair(p, q, tower, unresolved, extra=()):
    """All common zeros of two coprime bivariate polynomials whose
    coordinates resolve in radical extensions; appends what does not
    resolve to the report.  Further constraints in `extra` are only used
    to cut spurious eliminant factors down.  Returns (points, tower)."""
    vx, vy = p.ring.vars
    out = []
    if p.degree_in(vy) == 0 and q.degree_in(vy) > 0:
        p, q = q, p
    if q.degree_in(vy) == 0:
        # q constrains x alone
        qc = [c.constant_value() for c in _univ(q, vx)]
        qc = _narrow_eliminant(qc, (p,), extra, vx, vy)
        xroots, tower, left = linear_factors_univ(qc, tower, adjoin=True,
                                                  suffix="x")
        if len(left) > 1:
            unresolved.append("eliminant factor of degree %d: %s"
                              % (len(left) - 1, q))
        p = p._lift_to(tower) if p.tower != tower else p
        for x0, _m in xroots:
            sub = substitute(p, {vx: p.ring.of(x0)})
            ys = [c.constant_value() for c in _univ(sub, vy)]
            ys = _utrim(ys)
            if not ys:
                unresolved.append(
                    "positive-dimensional locus above %s = %s" % (vx, x0))
                continue
            ys = _fiber_cut(ys, extra, x0, vx, vy, tower)
            if len(ys) <= 1:
                continue
            yroots, tower, left = linear_factors_univ(ys, tower, adjoin=True,
                                                      suffix="y")
            if len(left) > 1:
                unresolved.append("fiber factor of degree %d over %s = %s"
                                  % (len(left) - 1, vx, x0))
            p = p._lift_to(tower) if p.tower != tower else p
            x0l = lift(x0, tower) if x0.tower != tower else x0
            for y0, _m2 in yroots:
                out.append((x0l, y0))
        return out, tower
    r = resultant(p, q, vy)
    if r.is_zero():
        unresolved.append("shared component between %s and %s" % (p, q))
        return out, tower
    rc = [c.constant_value() for c in _univ(r, vx)]
    rc = _narrow_eliminant(rc, (p, q), extra, vx, vy)
    xroots, tower, left = linear_factors_univ(rc, tower, adjoin=True,
                                              suffix="x")
    if len(left) > 1:
        unresolved.append("eliminant factor of degree %d in %s"
                          % (len(left) - 1, vx))
    for x0, _m in xroots:
        pl = p._lift_to(tower) if p.tower != tower else p
        ql = q._lift_to(tower) if q.tower != tower else q
        x0 = lift(x0, tower) if x0.tower != tower else x0
        pc = _utrim([c.constant_value()
                     for c in _univ(substitute(pl, {vx: pl.ring.of(x0)}),
                                    vy)])
        qc = _utrim([c.constant_value()
                     for c in _univ(substitute(ql, {vx: ql.ring.of(x0)}),
                                    vy)])
        if not pc and not qc:
            unresolved.append(
                "positive-dimensional fiber over %s root" % vx)
            continue
        if not pc:
            g = qc
        elif not qc:
            g = pc
        else:
            g = _ugcd(pc, qc)
        if g is None:
            unresolved.append("fiber gcd failed over %s root" % vx)
            continue
        if len(g) <= 1:
            continue
        g = _fiber_cut(g, extra, x0, vx, vy, tower)
        if len(g) <= 1:
            continue
        yroots, tower, left = linear_factors_univ(g, tower, adjoin=True,
                                                  suffix="y")
        if len(left) > 1:
            unresolved.append("fiber factor of degree %d over %s root"
                              % (len(left) - 1, vx))
        x0 = lift(x0, tower) if x0.tower != tower else x0
        for y0, _m2 in yroots:
            out.append((x0, y0))
    return out, tower


def singular_points(F, classify=True):
    """Singular locus of a reduced homogeneous curve, classified.

    Radical (degree <= 2) extensions are adjoined as needed; eliminant
    factors of higher degree go into the unresolved report instead of
    being dropped.
    """
    if not F.is_homogeneous() or len(F.ring.vars) != 3:
        raise SingError("expected a homogeneous three-variable polynomial")
    _check_reduced(F)
    nx, ny, nz = F.ring.vars
    unresolved = []
    tower = F.tower
    FX = partial_derivative(F, nx)
    FY = partial_derivative(F, ny)
    FZ = partial_derivative(F, nz)
    # affine chart Z = 1
    aff = PolyRing(tower, "x y")
    ax, ay = aff.gens()
    bind = {nx: ax, ny: ay, nz: aff.one()}
    fx = substitute(FX, bind, ring=aff)
    fy = substitute(FY, bind, ring=aff)
    fz = substitute(FZ, bind, ring=aff)
    nonzero = [h for h in (fx, fy, fz) if not h.is_zero()]
    raw = []
    if len(nonzero) >= 2:
        p1, p2 = nonzero[0], nonzero[1]
        rest = nonzero[2:]
        g = gcd_multi(p1, p2)
        pts = []
        if g.total_degree() > 0:
            a = exact_divide(p1, g)
            b = exact_divide(p2, g)
            extra = rest[0] if rest else None
            if extra is None:
                unresolved.append(
                    "shared factor %s with no third constraint" % g)
            else:
                got, tower = _solve_pair(g, extra, tower, unresolved)
                pts.extend(got)
            got, tower = _solve_pair(a, b, tower, unresolved,
                                     extra=tuple(rest))
            pts.extend(got)
        else:
            got, tower = _solve_pair(p1, p2, tower, unresolved,
                                     extra=tuple(rest))
            pts.extend(got)
        # filter by every remaining constraint
        for (x0, y0) in pts:
            ok = True
            for h in (fx, fy, fz):
                hl = h._lift_to(tower) if h.tower != tower else h
                if not evaluate(hl, (x0, y0)).is_zero():
                    ok = False
                    break
            if ok:
                raw.append((x0, y0, tower.one()))
    # points at infinity: common roots of the three binary restrictions
    infs = []
    for H in (FX, FY, FZ):
        bform = substitute(H, {nz: H.ring.zero()})
        coeffs = []
        for cpoly in _univ(bform, nx):
            if cpoly.is_zero():
                coeffs.append(tower.zero())
            else:
                coeffs.append(next(iter(cpoly.terms.values())))
        coeffs = _utrim([lift(c, tower) if c.tower != tower else c
                         for c in coeffs])
        infs.append(coeffs)
    nonzero_inf = [c for c in infs if c]
    if nonzero_inf:
        g = nonzero_inf[0]
        for other in nonzero_inf[1:]:
            if len(g) <= 1:
                break
            g = _ugcd(g, other)
            if g is None:
                unresolved.append("gcd of the restrictions to the line "
                                  "at infinity failed")
                break
        if g is not None and len(g) > 1:
            xroots, tower, left = linear_factors_univ(g, tower, adjoin=True,
                                                      suffix="i")
            if len(left) > 1:
                unresolved.append(
                    "infinity factor of degree %d" % (len(left) - 1))
            for x0, _m in xroots:
                raw.append((lift(x0, tower) if x0.tower != tower else x0,
                            tower.one(), tower.zero()))
    # the corner [1:0:0]
    corner = []
    for H in (FX, FY, FZ):
        d = H.total_degree()
        corner.append(H.coeff((d, 0, 0)) if d >= 0 else tower.zero())
    if all(c.is_zero() for c in corner):
        raw.append((tower.one(), tower.zero(), tower.zero()))
    # assemble, dedupe, classify
    points = []
    Fl = F._lift_to(tower) if F.tower != tower else F
    for (x0, y0, z0) in raw:
        pt = ProjPoint(tower, (x0, y0, z0))
        if any(pt == existing for existing, _t in points):
            continue
        tpe = classify_singularity(Fl, pt) if classify else None
        points.append((pt, tpe))
    return SingularLocus(points, unresolved, tower)


def conic_rank(C):
    """Rank of the symmetric matrix of a three-variable quadratic form."""
    if C.total_degree() != 2 or not C.is_homogeneous():
        raise SingError("expected a quadratic form")
    t = C.tower
    half = invert(t.of(2))
    nx, ny, nz = C.ring.vars
    m = [[C.coeff((2, 0, 0)), C.coeff((1, 1, 0)) * half,
          C.coeff((1, 0, 1)) * half],
         [C.coeff((1, 1, 0)) * half, C.coeff((0, 2, 0)),
          C.coeff((0, 1, 1)) * half],
         [C.coeff((1, 0, 1)) * half, C.coeff((0, 1, 1)) * half,
          C.coeff((0, 0, 2))]]
    det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
           - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
           + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    if not det.is_zero():
        return 3
    for i in range(3):
        for j in range(3):
            minor = m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3] \
                - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3]
            if not minor.is_zero():
                return 2
    return 1


# ----- the lemma oracles


def lemma_oracle_visible(inc, on_L, on_Linf):
    """Predicted germ type of a visible decomposition quartic at a point of
    the background conic, keyed on the incidence data."""
    i1, i2 = inc.iota1, inc.iota2
    if not (0 <= i1 <= 2 and 0 <= i2 <= 2):
        raise InvalidIncidence("intersection multiplicities must be 0..2")
    if (i1, i2) == (2, 2):
        raise InvalidIncidence("the two lines cannot both be tangent "
                               "at one point")
    if inc.c2_smooth:
        if on_L != (i1 > 0) or on_Linf != (i2 > 0):
            raise InvalidIncidence("incidence flags disagree with "
                                   "multiplicities")
        if not on_L and not on_Linf:
            return None
        if on_L and not on_Linf:
            return LocalType.a(3 * i1 - 1)
        if on_Linf and not on_L:
            return LocalType.smooth(tangency=2 * i2)
        return LocalType.a(3 * i1 + i2 - 1)
    if not on_L and not on_Linf:
        return None
    if on_L and not on_Linf:
        return LocalType.e6()
    if on_Linf and not on_L:
        return LocalType.smooth(tangency=4)
    return LocalType.lines(4)


def lemma_oracle_invisible23(c1_nonzero, bitangent=False):
    """Admissible singularity configurations for the hidden (2,3) shape,
    keyed on whether the first expansion constant vanishes."""
    if c1_nonzero:
        if bitangent:
            return ({"a2": 3},)
        return ({"a2": 3}, {"a2": 1, "a5": 1})
    return ({"a2": 2, "a2inf": 1}, {"a5": 1, "a2inf": 1})


def lemma_oracle_invisible24(iota, c2_smooth):
    """Predicted germ type for the hidden (2,4) shape at a point of the
    conic on the line at infinity; iota = 0 means an outer point."""
    if iota == 0:
        return LocalType.a(1)
    if not c2_smooth:
        return LocalType.lines(4)
    if iota not in (1, 2):
        raise InvalidIncidence("contact order along infinity must be 1 or 2")
    return LocalType.a(4 * iota - 1)


# ----- the configuration classifier


TABLE_ROWS = {
    1: ({"a2": 2}, "i"),
    2: ({"a2": 2}, "iv"),
    3: ({"a2": 2, "a1": 1}, "i"),
    4: ({"a2": 2, "a1": 1}, "iv"),
    5: ({"a2": 3}, "i"),
    6: ({"a2": 1, "a3inf": 1}, "ii"),
    7: ({"a5": 1}, "i"),
    8: ({"a5": 1}, "iv"),
    9: ({"a6inf": 1}, "ii"),
    10: ({"a4inf": 1, "a2": 1}, "v"),
    11: ({"e6": 1}, "i"),
    12: ({"e6": 1}, "iv"),
    13: ({"a4": 1, "a2inf": 1}, "ii"),
    14: ({"a3inf": 1, "a2": 1, "a1": 1}, "ii"),
    15: ({"a5": 1, "a1": 1}, "i"),
    16: ({"a5inf": 1, "a2inf": 1}, "iii"),
    17: ({"a3inf": 2}, "iii"),
    18: ({"a7inf": 1}, "v"),
    19: ({"a3inf": 2, "a1": 1}, "iii"),
}

IRREDUCIBLE_ROWS = frozenset(range(1, 14))
NONEXISTENT_ROWS = frozenset((13, 16))


def type_label(tpe, at_inf):
    """Short text label for a germ type, with an 'inf' suffix for points
    on the marked line."""
    if tpe.kind == "a":
        return "a%d%s" % (tpe.n, "inf" if at_inf else "")
    if tpe.kind == "e6":
        return "e6%s" % ("inf" if at_inf else "")
    if tpe.kind == "lines":
        return "lines%d" % tpe.n
    return str(tpe)


def classify_QL(Q):
    """Place a reduced quartic, with Z = 0 as the marked line, into one of
    the nineteen configuration rows; None when nothing matches."""
    if Q.total_degree() != 4 or not Q.is_homogeneous():
        raise SingError("expected a homogeneous quartic")
    locus = singular_points(Q)
    if locus.unresolved:
        raise UnresolvedSingularLocus(
            "singular locus did not fully resolve", locus.unresolved)
    if not locus.points:
        return QLClass(None, {}, None)
    tower = locus.tower
    signature = {}
    for pt, tpe in locus.points:
        lab = type_label(tpe, pt.at_infinity)
        signature[lab] = signature.get(lab, 0) + 1
    # behavior along Z = 0
    nz = Q.ring.vars[2]
    Ql = Q._lift_to(tower) if Q.tower != tower else Q
    bform = substitute(Ql, {nz: Ql.ring.zero()})
    case = None
    if not bform.is_zero():
        facs, rem = factor_linear(bform, adjoin=True)
        ftower = rem.tower
        contacts = []
        for lin, m in facs:
            a = lin.coeff((1, 0, 0))
            b = lin.coeff((0, 1, 0))
            contacts.append((ProjPoint(ftower, (-b, a, ftower.zero())), m))
        extra_simple = rem.total_degree() if rem.total_degree() > 0 else 0
        mults = sorted([m for _, m in contacts] + [1] * extra_simple)
        sing_pts = [pt.lifted(ftower) for pt, _t in locus.points]
        if mults == [2, 2] and extra_simple == 0:
            flags = sorted(any(c[0] == sp for sp in sing_pts)
                           for c in contacts)
            case = {(False, False): "i",
                    (False, True): "ii",
                    (True, True): "iii"}[tuple(flags)]
        elif mults == [4]:
            singular = any(contacts[0][0] == sp for sp in sing_pts)
            case = "v" if singular else "iv"
    for idx, (sig, cs) in TABLE_ROWS.items():
        if sig == signature and cs == case:
            return QLClass(idx, signature, case)
    return QLClass(None, signature, case)

"""Command-line front end.

Input documents are plain text: `key: value` lines, `#` comments, tower
steps declared as `name: transcendental` or `name: minpoly = ...` in
the order they extend the rationals.  Polynomial values use explicit
operators only (no implicit multiplication); `/` is allowed solely
inside rational literals such as 1/2.

Exit codes: 0 all checks pass, 1 at least one check failed, 2 malformed
input or usage.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from .fieldtower import QQ, TowerError
from .polyring import PolyRing, PolyError
from .localsing import SingError, classify_QL, singular_points, type_label
from .torusdec import (
    DecompositionError,
    QuasiTorusDecomposition,
    build_invisible_23,
    build_invisible_24,
    canonicalize_visible,
    InvisibleData23,
    InvisibleData24,
    quasi_chain,
    solve_visible_quartic,
    verify_quasi,
    verify_visible_quartic,
)
from .degen import BEST_EFFORT_FAMILIES, FAMILY_CLAIMS, quartic_family
from . import degen
from .catalog import UnknownEntry, catalog_list, catalog_verify


class ParseError(Exception):
    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(str(self))

    def __str__(self):
        where = ""
        if self.line is not None:
            where = "line %d" % self.line
            if self.col is not None:
                where += ", column %d" % self.col
            where += ": "
        return where + self.message


# ----- expression parsing


_OPS = set("+-*/^()")


def _tokenize(text, line):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        col = i + 1
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j]), col))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j], col))
            i = j
            continue
        if ch in _OPS:
            toks.append(("op", ch, col))
            i += 1
            continue
        raise ParseError("unexpected character %r" % ch, line, col)
    toks.append(("end", None, n + 1))
    return toks


class _ExprParser:
    """expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
    factor := '-' factor | atom ('^' int)?;
    atom := int ('/' int)? | name | '(' expr ')'."""

    def __init__(self, text, line, ring, names):
        self.toks = _tokenize(text, line)
        self.pos = 0
        self.line = line
        self.ring = ring
        self.names = names

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def parse(self):
        out = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            self.fail("trailing %r; operators must be explicit" % (val,))
        return out

    def expr(self):
        out = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                out = out + rhs if val == "+" else out - rhs
            else:
                return out

    def term(self):
        out = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                out = out * self.factor()
            elif kind == "op" and val == "/":
                self.fail("'/' is only allowed inside a rational literal")
            elif kind in ("int", "name") or (kind == "op" and val == "("):
                self.fail("missing operator before %r" % (val,))
            else:
                return out

    def factor(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.factor()
        out = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            ekind, eval_, ecol = self.take()
            if ekind != "int":
                raise ParseError("exponent must be an integer literal",
                                 self.line, ecol)
            out = out ** eval_
        return out

    def atom(self):
        kind, val, col = self.take()
        if kind == "int":
            nkind, nval, _ = self.peek()
            if nkind == "op" and nval == "/":
                self.take()
                dkind, dval, dcol = self.take()
                if dkind != "int":
                    raise ParseError("denominator must be an integer "
                                     "literal", self.line, dcol)
                if dval == 0:
                    raise ParseError("division by zero", self.line, dcol)
                return self.ring.of(Fraction(val, dval))
            return self.ring.of(val)
        if kind == "name":
            if val not in self.names:
                raise ParseError("unknown name %r" % val, self.line, col)
            return self.names[val]
        if kind == "op" and val == "(":
            out = self.expr()
            kind, val, col = self.take()
            if not (kind == "op" and val == ")"):
                raise ParseError("expected ')'", self.line, col)
            return out
        raise ParseError("expected a number, a name or '('",
                         self.line, col)


def _name_table(ring):
    names = {v: ring.var(v) for v in ring.vars}
    for step in ring.tower.steps:
        names[step.name] = ring.of(ring.tower.gen(step.name))
    return names


def parse_poly(text, ring, line=1):
    return _ExprParser(text, line, ring, _name_table(ring)).parse()


# ----- documents


_RESERVED = frozenset((
    "kind", "vars", "quartic", "conic", "line", "unit", "unit2", "unit1",
    "f", "f_r", "f_p", "f_q", "a", "b", "l1", "l2", "l3", "a00", "b00",
    "conic_part", "linear_part", "g0", "h0",
))


class Document:
    __slots__ = ("kind", "vars", "tower", "values", "lines")

    def __init__(self, kind, varnames, tower, values, lines):
        self.kind = kind
        self.vars = varnames
        self.tower = tower
        self.values = values
        self.lines = lines

    def ring(self):
        return PolyRing(self.tower, " ".join(self.vars))

    def poly(self, key, default=None):
        if key not in self.values:
            if default is not None:
                return default
            raise ParseError("missing required field %r" % key)
        text, line = self.values[key]
        return parse_poly(text, self.ring(), line)

    def constant(self, key, default=None):
        if key not in self.values and default is not None:
            return self.tower.of(default)
        p = self.poly(key)
        if not p.is_constant():
            raise ParseError("field %r must not involve %s"
                             % (key, ", ".join(self.vars)),
                             self.values[key][1])
        return p.constant_value()

    def integer(self, key):
        text, line = self.values.get(key, (None, None))
        if text is None:
            raise ParseError("missing required field %r" % key)
        try:
            return int(text.strip())
        except ValueError:
            raise ParseError("field %r must be an integer" % key, line)


def _parse_minpoly(name, text, tower, line):
    ring = PolyRing(tower, name)
    names = _name_table(ring)
    p = _ExprParser(text, line, ring, names).parse()
    deg = p.total_degree()
    if deg < 2:
        raise ParseError("minpoly for %r must have degree at least 2"
                         % name, line)
    coeffs = tuple(p.coeff((k,)) for k in range(deg + 1))
    if not coeffs[-1].is_one():
        raise ParseError("minpoly for %r must be monic" % name, line)
    return coeffs


def parse_document(text):
    kind = None
    varnames = ("X", "Y", "Z")
    tower = QQ
    values = {}
    lines = text.splitlines()
    for no, raw in enumerate(lines, 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if ":" not in body:
            raise ParseError("expected 'key: value'", no)
        key, rest = body.split(":", 1)
        key = key.strip()
        rest = rest.strip()
        if key == "kind":
            kind = rest
        elif key == "vars":
            varnames = tuple(rest.split())
            if not varnames:
                raise ParseError("vars must list at least one variable",
                                 no)
        elif rest == "transcendental":
            if key in _RESERVED or key in varnames:
                raise ParseError("%r cannot name a generator" % key, no)
            tower = tower.extend(key)
        elif rest.startswith("minpoly"):
            tail = rest[len("minpoly"):].lstrip()
            if not tail.startswith("="):
                raise ParseError("expected 'minpoly = ...'", no)
            if key in _RESERVED or key in varnames:
                raise ParseError("%r cannot name a generator" % key, no)
            tower = tower.extend(key,
                                 _parse_minpoly(key, tail[1:].strip(),
                                                tower, no))
        elif key in _RESERVED:
            if key in values:
                raise ParseError("duplicate field %r" % key, no)
            values[key] = (rest, no)
        else:
            raise ParseError("unknown field %r (generators must be "
                             "declared as 'name: transcendental' or "
                             "'name: minpoly = ...')" % key, no)
    return Document(kind, varnames, tower, values, lines)


def _load_document(path):
    try:
        with open(path) as fh:
            return parse_document(fh.read())
    except OSError as err:
        raise ParseError("cannot read %s: %s" % (path, err.strerror))


def _document_or_expr(arg):
    """A path when one exists on disk, otherwise a bare quartic over the
    rationals."""
    if os.path.exists(arg):
        return _load_document(arg)
    return parse_document("quartic: " + arg.replace("\n", " "))


# ----- report plumbing


def _check(name, ok, detail=""):
    return {"name": name, "status": "pass" if ok else "fail",
            "detail": detail}


def tower_lines(tower):
    return [step.describe() for step in tower.steps]


def _report(entry, checks, tower=None, qlcls=None):
    return {
        "entry": entry,
        "checks": checks,
        "tower": tower_lines(tower) if tower is not None else [],
        "class": None if qlcls is None else str(qlcls),
    }


def _emit(reports, as_json, stream=None):
    stream = stream or sys.stdout
    if as_json:
        payload = reports if isinstance(reports, list) else reports
        json.dump(payload, stream, indent=2)
        stream.write("\n")
        return
    many = reports if isinstance(reports, list) else [reports]
    for rep in many:
        stream.write("== %s\n" % rep["entry"])
        for line in rep["tower"]:
            stream.write("   over %s\n" % line)
        for c in rep["checks"]:
            mark = "pass" if c["status"] == "pass" else "FAIL"
            detail = (" " * max(1, 42 - len(c["name"])) + c["detail"]
                      if c["detail"] else "")
            stream.write("   %s %s%s\n" % (mark, c["name"], detail))
        if rep["class"] is not None:
            stream.write("   class %s\n" % rep["class"])


def _exit_code(reports):
    many = reports if isinstance(reports, list) else [reports]
    for rep in many:
        for c in rep["checks"]:
            if c["status"] != "pass":
                return 1
    return 0


# ----- subcommands


_VERIFY_KINDS = ("quasi", "visible23", "invisible23", "invisible24")


def cmd_verify(doc):
    if doc.kind not in _VERIFY_KINDS:
        raise ParseError("kind must be one of %s"
                         % ", ".join(_VERIFY_KINDS))
    ring = doc.ring()
    if doc.kind == "visible23":
        checks = verify_visible_quartic(
            doc.poly("quartic"), doc.poly("conic"), doc.poly("line"),
            doc.constant("unit2", 1), doc.constant("unit1", 1))
        return _report("verify visible23", checks, doc.tower)
    if doc.kind == "quasi":
        d = QuasiTorusDecomposition(
            doc.poly("f"), doc.poly("f_r"), doc.poly("f_p"),
            doc.poly("f_q"), doc.integer("a"), doc.integer("b"))
        return _report("verify quasi", verify_quasi(d), doc.tower)
    checks = []
    try:
        if doc.kind == "invisible23":
            data = InvisibleData23(
                doc.poly("l1"), doc.poly("l2", ring.zero()),
                doc.poly("l3", ring.zero()),
                doc.constant("a00", 0), doc.constant("b00", 0))
            _F2, _F3, G = build_invisible_23(data)
            law = "F2^3 - F3^2 = Z^2 G"
        else:
            data = InvisibleData24(
                doc.poly("conic_part"),
                doc.poly("linear_part", ring.zero()),
                doc.constant("a00", 0), doc.constant("b00", 0))
            _F2, _F4, G = build_invisible_24(data)
            law = "F2^4 - F4^2 = 2c Z^4 G"
    except DecompositionError as err:
        checks.append(_check("hidden pair construction", False, str(err)))
        return _report("verify %s" % doc.kind, checks, doc.tower)
    checks.append(_check("hidden pair construction", True, law))
    if "quartic" in doc.values:
        unit = doc.constant("unit", 1)
        diff = G - doc.poly("quartic") * ring.of(unit)
        checks.append(_check("cofactor matches the declared quartic",
                             diff.is_zero(), "unit %s" % unit))
    return _report("verify %s" % doc.kind, checks, doc.tower)


def cmd_classify(doc):
    Q = doc.poly("quartic")
    checks = []
    qlcls = None
    try:
        qlcls = classify_QL(Q)
        locus = singular_points(Q)
    except SingError as err:
        checks.append(_check("singular locus resolved", False, str(err)))
        return _report("classify", checks, doc.tower)
    tower = locus.tower
    checks.append(_check("singular locus resolved", True,
                         "%d singular point(s)" % len(locus.points)))
    for pt, tpe in locus.points:
        checks.append(_check("singular point %s" % pt, True,
                             type_label(tpe, pt.at_infinity)))
    return _report("classify", checks, tower, qlcls)


def cmd_solve(doc):
    Q = doc.poly("quartic")
    checks = []
    try:
        sols = solve_visible_quartic(Q)
    except (DecompositionError, SingError) as err:
        checks.append(_check("solver completed", False, str(err)))
        return _report("solve", checks, doc.tower)
    checks.append(_check("decompositions found", True, str(len(sols))))
    tower = sols[0].tower if sols else doc.tower
    for k, dec in enumerate(sols, 1):
        dec = canonicalize_visible(dec)
        checks.append(_check("decomposition %d" % k, True, str(dec)))
    return _report("solve", checks, tower)


def cmd_quasi(doc, steps):
    f = doc.poly("f")
    g0 = doc.poly("g0")
    h0 = doc.poly("h0")
    checks = []
    base = h0 * h0 - g0 ** 3 - f
    checks.append(_check("base identity f = h0^2 - g0^3",
                         base.is_zero(),
                         "" if base.is_zero() else
                         "difference has %d terms" % len(base.terms)))
    if not base.is_zero() or steps == 0:
        return _report("quasi chain", checks, doc.tower)
    try:
        chain = quasi_chain(f, g0, h0, steps)
    except DecompositionError as err:
        checks.append(_check("recurrence", False, str(err)))
        return _report("quasi chain", checks, doc.tower)
    for k, (g, h) in enumerate(chain.levels):
        name = "level %d (deg g = %d, deg h = %d)" % (
            k, g.total_degree(), h.total_degree())
        checks.append(_check(name, True,
                             "g = %s; h = %s" % (g, h) if k <= 1 else
                             "%d and %d terms" % (len(g.terms),
                                                  len(h.terms))))
    checks.append(_check(
        "every level satisfies (prod g)^6 f = h^2 - g^3", True,
        "%d step(s)" % steps))
    return _report("quasi chain", checks, chain.levels[-1][0].tower)


def _parse_params(spec):
    out = {}
    if not spec:
        return out
    for item in spec.split(","):
        if "=" not in item:
            raise ParseError("parameters look like s=0,t=1")
        name, val = item.split("=", 1)
        name = name.strip()
        val = val.strip()
        try:
            out[name] = Fraction(val)
        except (ValueError, ZeroDivisionError):
            raise ParseError("cannot read %r as a rational value" % val)
    return out


def cmd_degenerate(family, params):
    try:
        fam = quartic_family(family)
    except ValueError as err:
        raise ParseError(str(err))
    binding = _parse_params(params)
    missing = [n for n in fam.params if n not in binding]
    extra = [n for n in binding if n not in fam.params]
    if missing or extra:
        raise ParseError("family %d takes %s" % (family,
                                                 ", ".join(fam.params)))
    vals = tuple(binding[n] for n in fam.params)
    claim = None
    for stated, cls in FAMILY_CLAIMS.get(family, ()):
        if tuple(stated) == vals:
            claim = cls
    checks = [_check("family %d member" % family, True, str(fam))]
    member = None
    try:
        member = degen.family_specialize(fam, binding)
        checks.append(_check("parameters assigned", True,
                             ", ".join("%s = %s" % (n, binding[n])
                                       for n in fam.params)))
    except ValueError as err:
        checks.append(_check("parameters assigned", False, str(err)))
        return _report("degenerate family %d" % family, checks,
                       fam.tower)
    red = degen.is_reduced(member)
    checks.append(_check("member is reduced", red,
                         "" if red else "repeated component"))
    qlcls = None
    if red:
        try:
            qlcls = classify_QL(member)
            checks.append(_check("member classified", True, str(qlcls)))
        except SingError as err:
            checks.append(_check("member classified", False, str(err)))
    if claim is not None and qlcls is not None:
        agrees = qlcls == claim
        if family in BEST_EFFORT_FAMILIES:
            checks.append(_check(
                "stated class (best effort)", True,
                "computed %s, stated class %s" % (qlcls, claim)))
        else:
            checks.append(_check("class matches the stated member",
                                 agrees,
                                 "computed %s, stated class %s"
                                 % (qlcls, claim)))
    return _report("degenerate family %d" % family, checks, fam.tower,
                   qlcls)


def _catalog_report(rep):
    checks = list(rep["checks"])
    if rep["best_effort"] and not rep["strict_ok"]:
        failed = sum(1 for c in checks if c["status"] != "pass")
        checks = [dict(c, status="pass",
                       detail="waived (best effort): %s" % c["detail"]
                       if c["status"] != "pass" else c["detail"])
                  for c in checks]
        checks.append(_check(
            "best effort entry", True,
            "%d stated member(s) do not recheck and are kept for "
            "reference" % failed))
    return _report(rep["entry"], checks)


def cmd_catalog(action, ident, verify_all, workers=None):
    if action == "list":
        return [{"entry": eid, "label": label}
                for eid, label in catalog_list()]
    if ident is not None and not verify_all:
        return _catalog_report(catalog_verify(ident))
    return [_catalog_report(r) for r in catalog_verify(workers=workers)]


def _print_catalog_listing(rows, as_json):
    if as_json:
        json.dump(rows, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return
    for row in rows:
        sys.stdout.write("%-8s %s\n" % (row["entry"], row["label"]))


# ----- argument wiring


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="torusdecomp",
        description="exact verification of torus decompositions of "
                    "plane quartics")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a decomposition document")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("classify",
                       help="place a quartic into its configuration row")
    p.add_argument("input", metavar="file|expr")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("solve",
                       help="find all conic-and-line presentations")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("quasi", help="run the degree-raising recurrence")
    p.add_argument("file")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("degenerate",
                       help="specialize a parameter family and classify")
    p.add_argument("--family", type=int, required=True)
    p.add_argument("--params", default="")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("catalog", help="list or re-verify the worked "
                                       "examples")
    p.add_argument("action", choices=("list", "verify"))
    p.add_argument("id", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--json", action="store_true")
    return ap


def main(argv=None):
    ap = _build_parser()
    ns = ap.parse_args(argv)
    try:
        if ns.command == "verify":
            rep = cmd_verify(_load_document(ns.file))
        elif ns.command == "classify":
            rep = cmd_classify(_document_or_expr(ns.input))
        elif ns.command == "solve":
            rep = cmd_solve(_load_document(ns.file))
        elif ns.command == "quasi":
            if ns.steps < 0:
                raise ParseError("--steps must be >= 0")
            rep = cmd_quasi(_load_document(ns.file), ns.steps)
        elif ns.command == "degenerate":
            rep = cmd_degenerate(ns.family, ns.params)
        else:
            if ns.action == "list":
                _print_catalog_listing(
                    cmd_catalog("list", None, False), ns.json)
                return 0
            try:
                rep = cmd_catalog("verify", ns.id, ns.all)
            except UnknownEntry as err:
                raise ParseError(str(err))
    except ParseError as err:
        sys.stderr.write("error: %s\n" % err)
        return 2
    except (PolyError, TowerError) as err:
        sys.stderr.write("error: %s\n" % err)
        return 2
    _emit(rep, ns.json)
    return _exit_code(rep)


if __name__ == "__main__":
    sys.exit(main())

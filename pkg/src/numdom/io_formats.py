"""Readers and writers for polyhedra exchange files and MPS linear programs.

``.ine`` files hold an H-representation: row ``(b, a1..an)`` means
``b + a.x >= 0``, or ``= 0`` when listed in ``linearity``.  ``.ext`` files
hold a V-representation: a row starting with 1 is a vertex, a row starting
with 0 a ray (a line when listed in ``linearity``).  Numbers are exact
integers, ``p/q`` rationals or decimal literals.  Linearity indices are
1-based in the text and 0-based in ``PolyFile``.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Optional

from .core import InvalidArgument, ParseError, TopologyMismatch
from .linear_forms import (ConstraintSystem, LinearExpression, Variable, line, point, ray)
from .lp import MAXIMIZATION, MINIMIZATION, OptimizationMode
from .polyhedron import Polyhedron

_TOKEN = re.compile(r"\S+")
_NUMBER_TYPES = ("integer", "rational", "real")


def _tokens(text: str):
    """Yield ``(line_no, [(column, token), ...])`` for non-blank lines."""
    for no, raw in enumerate(text.splitlines(), start=1):
        toks = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(raw)]
        if toks:
            yield no, toks


def _number(tok: str, line: int, col: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not an exact number: {tok!r}", line, col) from None


def _int(tok: str, line: int, col: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected {what}, got {tok!r}", line, col) from None


# -- cdd / lrs files --------------------------------------------------------------

@dataclass
class PolyFile:
    """Contents of an ``.ine`` (``"H"``) or ``.ext`` (``"V"``) file."""

    representation: str
    columns: int
    rows: list = field(default_factory=list)
    linearity: set = field(default_factory=set)
    number_type: str = "rational"
    name: Optional[str] = None

    @property
    def space_dimension(self) -> int:
        return self.columns - 1

    def is_empty_declaration(self) -> bool:
        """A V-file with no rows describes the empty polyhedron."""
        return self.representation == "V" and not self.rows


def parse_poly_file(text: str) -> PolyFile:
    rep = None
    name = None
    lin_decl = None
    state = "pre"
    header = None
    rows: list = []
    for no, toks in _tokens(text):
        first = toks[0][1]
        if first.startswith("*") or first.startswith("#"):
            continue
        low = first.lower()
        if state in ("pre", "post"):
            if low == "h-representation":
                rep = "H"
            elif low == "v-representation":
                rep = "V"
            elif low == "linearity":
                if len(toks) < 2:
                    raise ParseError("linearity needs a count", no, toks[0][0])
                k = _int(toks[1][1], no, toks[1][0], "a count")
                idx = [_int(t, no, c, "a row index") for c, t in toks[2:]]
                if len(idx) != k:
                    raise ParseError(f"linearity declares {k} rows but lists {len(idx)}",
                                     no, toks[0][0])
                lin_decl = (idx, no, toks[0][0])
            elif low == "begin" and state == "pre":
                state = "header"
            elif state == "pre" and rep is None and name is None:
                name = " ".join(t for _, t in toks)
            elif state == "post":
                warnings.warn(f"ignoring option {first!r} on line {no}", stacklevel=2)
            elif state == "pre":
                raise ParseError(f"unexpected {first!r} before begin", no, toks[0][0])
            continue
        if state == "header":
            if len(toks) != 3:
                raise ParseError("expected 'rows columns type'", no, toks[0][0])
            m = _int(toks[0][1], no, toks[0][0], "a row count")
            n = _int(toks[1][1], no, toks[1][0], "a column count")
            kind = toks[2][1].lower()
            if kind not in _NUMBER_TYPES:
                raise ParseError(f"unknown number type {toks[2][1]!r}", no, toks[2][0])
            if m < 0 or n < 1:
                raise ParseError("bad matrix size", no, toks[0][0])
            header = (m, n, kind)
            state = "rows"
            continue
        if low == "end":
            if len(rows) != header[0]:
                raise ParseError(f"expected {header[0]} rows, found {len(rows)}",
                                 no, toks[0][0])
            state = "post"
            continue
        if len(rows) == header[0]:
            raise ParseError("more rows than declared", no, toks[0][0])
        if len(toks) != header[1]:
            raise ParseError(f"expected {header[1]} entries, found {len(toks)}",
                             no, toks[0][0])
        row = tuple(_number(t, no, c) for c, t in toks)
        if header[2] == "integer":
            for (c, t), v in zip(toks, row):
                if v.denominator != 1:
                    raise ParseError(f"non-integer {t!r} in an integer file", no, c)
        rows.append(row)
    if state != "post":
        raise ParseError("missing begin/end block" if state == "pre" else "missing end")
    if rep is None:
        rep = "H"
    lin = set()
    if lin_decl is not None:
        idx, no, col = lin_decl
        for i in idx:
            if not 1 <= i <= len(rows):
                raise ParseError(f"linearity index {i} out of range", no, col)
            lin.add(i - 1)
    return PolyFile(rep, header[1], rows, lin, header[2], name)


def _primitive(row) -> tuple:
    den = 1
    for x in row:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(Fraction(x // g) for x in ints) if g else tuple(Fraction(x) for x in ints)


def canonical(pf: PolyFile) -> PolyFile:
    """Integer rows with denominators cleared (vertices keep their leading 1)."""
    rows = []
    for r in pf.rows:
        if pf.representation == "V" and r[0]:
            rows.append(tuple(Fraction(x) / r[0] for x in r))
        else:
            rows.append(_primitive(r))
    integral = all(x.denominator == 1 for r in rows for x in r)
    return PolyFile(pf.representation, pf.columns, rows, set(pf.linearity),
                    "integer" if integral else "rational", pf.name)


def write_poly_file(pf: PolyFile) -> str:
    pf = canonical(pf)
    out = []
    if pf.name:
        out.append(pf.name)
    out.append(f"{pf.representation}-representation")
    if pf.linearity:
        idx = " ".join(str(i + 1) for i in sorted(pf.linearity))
        out.append(f"linearity {len(pf.linearity)} {idx}")
    out.append("begin")
    out.append(f"{len(pf.rows)} {pf.columns} {pf.number_type}")
    for r in pf.rows:
        out.append(" ".join(str(x) for x in r))
    out.append("end")
    return "\n".join(out) + "\n"


def poly_to_domain(pf: PolyFile) -> Polyhedron:
    n = pf.space_dimension
    if pf.representation == "H":
        cs = []
        for i, r in enumerate(pf.rows):
            e = LinearExpression(r[0], r[1:])
            cs.append(e == 0 if i in pf.linearity else e >= 0)
        return Polyhedron.from_constraints(cs, dim=n)
    gens = []
    has_vertex = False
    for i, r in enumerate(pf.rows):
        t, x = r[0], r[1:]
        if t < 0:
            raise InvalidArgument(f"V-row {i + 1} has a negative leading entry")
        if t:
            gens.append(point([v / t for v in x]))
            has_vertex = True
        elif not any(x):
            continue
        elif i in pf.linearity:
            gens.append(line(x))
        else:
            gens.append(ray(x))
    if not pf.rows:
        return Polyhedron.empty(n)
    if not has_vertex:
        # a V-file of rays and lines alone is a cone with apex at the origin
        gens.append(point(()))
    return Polyhedron.from_generators(gens, dim=n)


def domain_to_poly(p: Polyhedron, representation: str = "H",
                   name: Optional[str] = None) -> PolyFile:
    rep = representation.upper()
    n = p.space_dimension()
    if rep not in ("H", "V"):
        raise InvalidArgument(f"representation must be 'H' or 'V', got {representation!r}")
    if not p.is_necessarily_closed() and not p.is_topologically_closed():
        raise TopologyMismatch("strict inequalities have no file representation")
    rows, lin = [], set()
    if rep == "H":
        for c in p.minimized_constraints():
            c = c.closure()
            if c.is_equality():
                lin.add(len(rows))
            rows.append(tuple(Fraction(x) for x in c.row(n)))
    elif not p.is_empty():
        for g in p.minimized_generators():
            if g.is_closure_point():
                continue
            x = g.rational_coords(n)
            if g.is_point():
                rows.append((Fraction(1),) + x)
            else:
                if g.is_line():
                    lin.add(len(rows))
                rows.append((Fraction(0),) + x)
    return canonical(PolyFile(rep, n + 1, rows, lin, "rational", name))


# -- MPS -----------------------------------------------------------------------------

_SECTIONS = ("NAME", "ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA", "OBJSENSE")
_INTEGER_BOUNDS = ("BV", "LI", "UI", "SC", "SI")


@dataclass
class MpsProblem:
    """A linear program read from MPS."""

    name: Optional[str]
    row_types: dict            # row name -> "N" | "L" | "G" | "E", in file order
    objective: Optional[str]
    columns: list              # column names in order of first appearance
    coefficients: dict         # row -> {column: value}
    rhs: dict
    ranges: dict
    lower: dict                # column -> Fraction or None (minus infinity)
    upper: dict                # column -> Fraction or None (plus infinity)
    sense: OptimizationMode = MINIMIZATION

    def variable(self, column: str) -> Variable:
        return Variable(self.columns.index(column))

    def to_lp(self) -> tuple:
        """``(ConstraintSystem, objective expression, mode)``; rows first, then bounds."""
        n = len(self.columns)
        index = {c: i for i, c in enumerate(self.columns)}
        cs = ConstraintSystem([], n)

        def expr(row):
            coeffs = [Fraction(0)] * n
            for col, v in self.coefficients.get(row, {}).items():
                coeffs[index[col]] += v
            return LinearExpression(0, coeffs)

        for row, kind in self.row_types.items():
            if kind == "N":
                continue
            e = expr(row)
            b = self.rhs.get(row, Fraction(0))
            r = self.ranges.get(row)
            if r is None:
                cs.insert(e <= b if kind == "L" else e >= b if kind == "G" else e == b)
                continue
            if kind == "L":
                lo, hi = b - abs(r), b
            elif kind == "G":
                lo, hi = b, b + abs(r)
            elif r >= 0:
                lo, hi = b, b + r
            else:
                lo, hi = b + r, b
            cs.insert(e >= lo)
            cs.insert(e <= hi)
        for col in self.columns:
            v = Variable(index[col])
            lo, hi = self.lower[col], self.upper[col]
            if lo is not None and lo == hi:
                cs.insert(LinearExpression(v) == lo)
                continue
            if lo is not None:
                cs.insert(LinearExpression(v) >= lo)
            if hi is not None:
                cs.insert(LinearExpression(v) <= hi)
        obj = expr(self.objective) if self.objective else LinearExpression(0)
        if self.objective and self.objective in self.rhs:
            obj = obj - self.rhs[self.objective]
        return cs, obj, self.sense


def parse_mps(text: str) -> MpsProblem:
    name = None
    row_types: dict = {}
    objective = None
    columns: list = []
    coeffs: dict = {}
    rhs: dict = {}
    ranges: dict = {}
    lower: dict = {}
    upper: dict = {}
    sense = MINIMIZATION
    section = None
    seen = set()
    ended = False

    def need_row(r, no, col):
        if r not in row_types:
            raise ParseError(f"unknown row {r!r}", no, col)

    def need_col(c, no, col):
        if c not in lower:
            raise ParseError(f"unknown column {c!r}", no, col)

    for no, toks in _tokens(text):
        first_col, first = toks[0]
        if first.startswith("*"):
            continue
        if ended:
            raise ParseError("data after ENDATA", no, first_col)
        head = first.upper()
        if first_col == 1 and head in _SECTIONS:
            section = head
            seen.add(head)
            if head == "NAME":
                name = " ".join(t for _, t in toks[1:]) or None
            elif head == "OBJSENSE" and len(toks) > 1:
                sense = _sense(toks[1][1], no, toks[1][0])
            elif head == "ENDATA":
                ended = True
            elif len(toks) > 1:
                raise ParseError(f"unexpected text after {head}", no, toks[1][0])
            continue
        if any(t.upper() == "'MARKER'" for _, t in toks):
            raise ParseError("integer MARKER sections are not supported", no, first_col)
        if section is None:
            raise ParseError("data before any section", no, first_col)
        if section == "OBJSENSE":
            sense = _sense(first, no, first_col)
        elif section == "ROWS":
            if len(toks) != 2:
                raise ParseError("expected 'type name'", no, first_col)
            kind = first.upper()
            if kind not in ("N", "L", "G", "E"):
                raise ParseError(f"unknown row type {first!r}", no, first_col)
            r = toks[1][1]
            if r in row_types:
                raise ParseError(f"duplicate row {r!r}", no, toks[1][0])
            row_types[r] = kind
            if kind == "N" and objective is None:
                objective = r
        elif section == "COLUMNS":
            if len(toks) not in (3, 5):
                raise ParseError("expected 'column row value [row value]'", no, first_col)
            c = first
            if c not in lower:
                columns.append(c)
                lower[c], upper[c] = Fraction(0), None
            for k in range(1, len(toks), 2):
                (rc, r), (vc, v) = toks[k], toks[k + 1]
                need_row(r, no, rc)
                val = _number(v, no, vc)
                coeffs.setdefault(r, {})
                coeffs[r][c] = coeffs[r].get(c, Fraction(0)) + val
        elif section in ("RHS", "RANGES"):
            pairs = toks[1:] if len(toks) % 2 else toks
            if len(pairs) not in (2, 4):
                raise ParseError(f"malformed {section} line", no, first_col)
            target = rhs if section == "RHS" else ranges
            for k in range(0, len(pairs), 2):
                (rc, r), (vc, v) = pairs[k], pairs[k + 1]
                need_row(r, no, rc)
                if section == "RANGES" and row_types[r] == "N":
                    raise ParseError(f"range on objective row {r!r}", no, rc)
                target[r] = _number(v, no, vc)
        elif section == "BOUNDS":
            _bound(toks, no, lower, upper, need_col)
        else:
            raise ParseError(f"unexpected data in {section}", no, first_col)
    for required in ("ROWS", "COLUMNS"):
        if required not in seen:
            raise ParseError(f"missing {required} section")
    return MpsProblem(name, row_types, objective, columns, coeffs, rhs, ranges,
                      lower, upper, sense)


def _sense(tok: str, no: int, col: int) -> OptimizationMode:
    t = tok.upper()
    if t in ("MAX", "MAXIMIZE"):
        return MAXIMIZATION
    if t in ("MIN", "MINIMIZE"):
        return MINIMIZATION
    raise ParseError(f"unknown objective sense {tok!r}", no, col)


def _bound(toks, no, lower, upper, need_col) -> None:
    kind = toks[0][1].upper()
    if kind in _INTEGER_BOUNDS:
        raise ParseError(f"integer bound type {kind} is not supported", no, toks[0][0])
    valued = kind in ("UP", "LO", "FX")
    if kind not in ("UP", "LO", "FX", "FR", "MI", "PL"):
        raise ParseError(f"unknown bound type {toks[0][1]!r}", no, toks[0][0])
    want = 4 if valued else 3
    if len(toks) == want:
        rest = toks[2:]
    elif len(toks) == want - 1:
        rest = toks[1:]
    else:
        raise ParseError("malformed BOUNDS line", no, toks[0][0])
    cc, c = rest[0]
    need_col(c, no, cc)
    if kind == "FR":
        lower[c], upper[c] = None, None
    elif kind == "MI":
        lower[c] = None
    elif kind == "PL":
        upper[c] = None
    else:
        val = _number(rest[1][1], no, rest[1][0])
        if kind == "UP":
            upper[c] = val
            if val < 0 and lower[c] == 0:
                # historical convention: a negative upper bound frees the lower one
                warnings.warn(f"negative upper bound on {c!r} sets its lower bound to -inf",
                              stacklevel=3)
                lower[c] = None
        elif kind == "LO":
            lower[c] = val
        else:
            lower[c] = upper[c] = val

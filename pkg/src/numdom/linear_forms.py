"""Variables, linear expressions and the rows of every description.

Constraints are stored as ``expr relop 0`` with ``relop`` one of ``=``,
``>=`` and ``>``; user-level ``<=`` and ``<`` are flipped on construction.
Generators store integer coordinates over a positive common divisor.

>>> x, y = Variable(0), Variable(1)
>>> str(x + 2*y >= 7)
'A + 2*B >= 7'
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Sequence, Union

from .core import DimensionMismatch, InvalidArgument, TopologyMismatch, to_rational

Number = Union[int, Fraction]


def _gcd_all(values: Iterable[int]) -> int:
    return reduce(math.gcd, values, 0)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _pad(values: Sequence, dim: int) -> tuple:
    if len(values) > dim:
        raise DimensionMismatch(f"row of dimension {len(values)} used in dimension {dim}")
    return tuple(values) + (0,) * (dim - len(values))


def variable_name(index: int) -> str:
    letter = chr(ord("A") + index % 26)
    return letter if index < 26 else f"{letter}{index // 26}"


def _format_terms(coeffs: Sequence[Number]) -> str:
    out = []
    for i, a in enumerate(coeffs):
        if a == 0:
            continue
        name = variable_name(i)
        mag = abs(a)
        term = name if mag == 1 else f"{mag}*{name}"
        if not out:
            out.append(term if a > 0 else f"-{term}")
        else:
            out.append(("+ " if a > 0 else "- ") + term)
    return " ".join(out) if out else "0"


class Variable:
    """The dimension with the given index."""

    __slots__ = ("index",)

    def __init__(self, index: int):
        if index < 0:
            raise InvalidArgument("variable index must be non-negative")
        self.index = int(index)

    def __repr__(self):
        return f"Variable({self.index})"

    def __str__(self):
        return variable_name(self.index)

    def __hash__(self):
        return hash(("Variable", self.index))

    def __eq__(self, other):
        if isinstance(other, Variable):
            return self.index == other.index
        return LinearExpression(self).__eq__(other)

    def space_dimension(self) -> int:
        return self.index + 1

    def _expr(self) -> "LinearExpression":
        return LinearExpression(self)

    def __add__(self, o): return self._expr() + o
    def __radd__(self, o): return self._expr() + o
    def __sub__(self, o): return self._expr() - o
    def __rsub__(self, o): return (-self._expr()) + o
    def __mul__(self, o): return self._expr() * o
    def __rmul__(self, o): return self._expr() * o
    def __neg__(self): return -self._expr()
    def __pos__(self): return self._expr()
    def __ge__(self, o): return self._expr() >= o
    def __gt__(self, o): return self._expr() > o
    def __le__(self, o): return self._expr() <= o
    def __lt__(self, o): return self._expr() < o


class LinearExpression:
    """``sum(coeffs[i] * x_i) + inhomogeneous`` over integers or rationals.

    Comparison operators build constraints, so use :meth:`same_as` for
    structural equality.
    """

    __slots__ = ("coeffs", "inhomogeneous")

    def __init__(self, value=0, coeffs: Sequence[Number] = ()):
        if isinstance(value, Variable):
            self.coeffs = (0,) * value.index + (1,)
            self.inhomogeneous = 0
        elif isinstance(value, LinearExpression):
            self.coeffs, self.inhomogeneous = value.coeffs, value.inhomogeneous
        else:
            self.coeffs = tuple(_num(a) for a in coeffs)
            self.inhomogeneous = _num(value)
        self._trim()

    def _trim(self):
        c = self.coeffs
        n = len(c)
        while n and c[n - 1] == 0:
            n -= 1
        self.coeffs = c[:n]

    @classmethod
    def from_row(cls, coeffs: Sequence[Number], inhomogeneous: Number = 0):
        return cls(inhomogeneous, coeffs)

    def space_dimension(self) -> int:
        return len(self.coeffs)

    def coefficient(self, v: Union[Variable, int]) -> Number:
        i = v.index if isinstance(v, Variable) else v
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def dense(self, dim: int) -> tuple:
        return _pad(self.coeffs, dim)

    def same_as(self, other) -> bool:
        other = _as_expr(other)
        return self.coeffs == other.coeffs and self.inhomogeneous == other.inhomogeneous

    def is_constant(self) -> bool:
        return not self.coeffs

    def evaluate(self, point: Sequence[Number]) -> Fraction:
        return sum((Fraction(a) * p for a, p in zip(self.coeffs, point)), Fraction(self.inhomogeneous))

    def __hash__(self):
        return hash((self.coeffs, self.inhomogeneous))

    def __repr__(self):
        return f"LinearExpression({self})"

    def __str__(self):
        s = _format_terms(self.coeffs) if self.coeffs else ""
        b = self.inhomogeneous
        if not s:
            return str(b)
        if b:
            s += f" + {b}" if b > 0 else f" - {-b}"
        return s

    # arithmetic
    def __add__(self, other):
        other = _as_expr(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a, b = _pad(self.coeffs, n), _pad(other.coeffs, n)
        return LinearExpression(self.inhomogeneous + other.inhomogeneous,
                                [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return LinearExpression(-self.inhomogeneous, [-a for a in self.coeffs])

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-_as_expr(other))

    def __rsub__(self, other):
        return _as_expr(other) - self

    def __mul__(self, k):
        if isinstance(k, (Variable, LinearExpression)):
            raise InvalidArgument("non-linear product of expressions")
        k = _num(k)
        return LinearExpression(self.inhomogeneous * k, [a * k for a in self.coeffs])

    __rmul__ = __mul__

    # constraint builders
    def __ge__(self, other):
        return Constraint(self - _as_expr(other), Relation.GE)

    def __gt__(self, other):
        return Constraint(self - _as_expr(other), Relation.GT)

    def __le__(self, other):
        return Constraint(_as_expr(other) - self, Relation.GE)

    def __lt__(self, other):
        return Constraint(_as_expr(other) - self, Relation.GT)

    def __eq__(self, other):
        if not isinstance(other, (int, Fraction, Variable, LinearExpression)):
            return NotImplemented
        return Constraint(self - _as_expr(other), Relation.EQ)


def _num(a) -> Number:
    if isinstance(a, bool):
        return int(a)
    if isinstance(a, int):
        return a
    f = to_rational(a)
    return f.numerator if f.denominator == 1 else f


def _as_expr(value) -> LinearExpression:
    if isinstance(value, LinearExpression):
        return value
    if isinstance(value, Variable):
        return LinearExpression(value)
    return LinearExpression(value)


def _integral(values: Sequence[Number]) -> list[int]:
    """Scale rationals by the least common denominator (positive)."""
    den = 1
    for v in values:
        if isinstance(v, Fraction):
            den = _lcm(den, v.denominator)
    return [int(v * den) for v in values]


def build_expression(terms: Iterable[tuple], inhomogeneous: Number = 0) -> LinearExpression:
    """Dense expression from ``(variable, coefficient)`` pairs."""
    e = LinearExpression(inhomogeneous)
    for v, a in terms:
        e = e + a * (v if isinstance(v, Variable) else Variable(v))
    return e


# -- constraints -------------------------------------------------------------

class Relation(enum.Enum):
    EQ = "="
    GE = ">="
    GT = ">"


class Constraint:
    """A normalized linear constraint ``coeffs . x + inhomogeneous relop 0``."""

    __slots__ = ("coeffs", "inhomogeneous", "relation")

    def __init__(self, expr: LinearExpression, relation: Relation = Relation.GE):
        expr = _as_expr(expr)
        row = _integral([expr.inhomogeneous, *expr.coeffs])
        b, coeffs = row[0], row[1:]
        g = _gcd_all([*coeffs, b])
        if g > 1:
            b //= g
            coeffs = [a // g for a in coeffs]
        if relation is Relation.EQ:
            lead = next((a for a in coeffs if a), b)
            if lead < 0:
                b, coeffs = -b, [-a for a in coeffs]
        self.coeffs = tuple(coeffs)
        self.inhomogeneous = b
        self.relation = relation
        n = len(self.coeffs)
        while n and self.coeffs[n - 1] == 0:
            n -= 1
        self.coeffs = self.coeffs[:n]

    @classmethod
    def from_row(cls, row: Sequence[int], relation: Relation) -> "Constraint":
        """Build from an internal ``(inhomogeneous, a_1 .. a_n)`` row."""
        return cls(LinearExpression(row[0], row[1:]), relation)

    def row(self, dim: int) -> tuple:
        return (self.inhomogeneous,) + _pad(self.coeffs, dim)

    def space_dimension(self) -> int:
        return len(self.coeffs)

    def coefficient(self, v: Union[Variable, int]) -> int:
        i = v.index if isinstance(v, Variable) else v
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def expression(self) -> LinearExpression:
        return LinearExpression(self.inhomogeneous, self.coeffs)

    def is_equality(self) -> bool:
        return self.relation is Relation.EQ

    def is_inequality(self) -> bool:
        return self.relation is not Relation.EQ

    def is_strict_inequality(self) -> bool:
        return self.relation is Relation.GT

    def is_nonstrict_inequality(self) -> bool:
        return self.relation is Relation.GE

    def is_tautological(self) -> bool:
        if self.coeffs:
            return False
        b = self.inhomogeneous
        return {Relation.EQ: b == 0, Relation.GE: b >= 0, Relation.GT: b > 0}[self.relation]

    def is_inconsistent(self) -> bool:
        return not self.coeffs and not self.is_tautological()

    def closure(self) -> "Constraint":
        if self.relation is Relation.GT:
            return Constraint(self.expression(), Relation.GE)
        return self

    def __eq__(self, other):
        if not isinstance(other, Constraint):
            return NotImplemented
        return (self.coeffs, self.inhomogeneous, self.relation) == \
            (other.coeffs, other.inhomogeneous, other.relation)

    def __hash__(self):
        return hash((self.coeffs, self.inhomogeneous, self.relation))

    def __repr__(self):
        return f"Constraint({self})"

    def __str__(self):
        lhs = _format_terms(self.coeffs)
        return f"{lhs} {self.relation.value} {-self.inhomogeneous}"

    def satisfied_by(self, point: Sequence[Number]) -> bool:
        v = self.expression().evaluate(point)
        return {Relation.EQ: v == 0, Relation.GE: v >= 0, Relation.GT: v > 0}[self.relation]


def _require_nonstrict(c: Constraint) -> None:
    if c.is_strict_inequality():
        raise TopologyMismatch("strict inequality requires an NNC context")


# -- generators --------------------------------------------------------------

class GeneratorType(enum.Enum):
    POINT = "point"
    CLOSURE_POINT = "closure_point"
    RAY = "ray"
    LINE = "line"


def _coords_and_divisor(coords, divisor) -> tuple[list[int], int]:
    if isinstance(coords, (Variable, LinearExpression)):
        e = _as_expr(coords)
        values = list(e.coeffs)
    else:
        values = [_num(c) for c in coords]
    divisor = _num(divisor)
    if divisor == 0:
        raise InvalidArgument("zero divisor")
    scaled = _integral([*values, divisor])
    d = scaled[-1]
    values = scaled[:-1]
    if d < 0:
        d, values = -d, [-v for v in values]
    return values, d


class Generator:
    """A point, closure point, ray or line of a polyhedron."""

    __slots__ = ("kind", "coords", "divisor")

    def __init__(self, kind: GeneratorType, coords: Sequence[int], divisor: int = 1):
        self.kind = kind
        coords = list(coords)
        if kind in (GeneratorType.POINT, GeneratorType.CLOSURE_POINT):
            if divisor <= 0:
                raise InvalidArgument("points need a positive divisor")
            g = _gcd_all([*coords, divisor])
            if g > 1:
                coords = [c // g for c in coords]
                divisor //= g
        else:
            g = _gcd_all(coords)
            if g == 0:
                raise InvalidArgument(f"a {kind.value} must be a nonzero vector")
            coords = [c // g for c in coords]
            if kind is GeneratorType.LINE and next(c for c in coords if c) < 0:
                coords = [-c for c in coords]
            divisor = 0
        n = len(coords)
        while n and coords[n - 1] == 0:
            n -= 1
        self.coords = tuple(coords[:n])
        self.divisor = divisor

    @classmethod
    def from_row(cls, row: Sequence[int], kind: GeneratorType) -> "Generator":
        """Build from an internal ``(divisor, c_1 .. c_n)`` row."""
        return cls(kind, row[1:], row[0] if row[0] else 1)

    def row(self, dim: int) -> tuple:
        return (self.divisor,) + _pad(self.coords, dim)

    def space_dimension(self) -> int:
        return len(self.coords)

    def coefficient(self, v: Union[Variable, int]) -> int:
        i = v.index if isinstance(v, Variable) else v
        return self.coords[i] if i < len(self.coords) else 0

    def is_point(self) -> bool:
        return self.kind is GeneratorType.POINT

    def is_closure_point(self) -> bool:
        return self.kind is GeneratorType.CLOSURE_POINT

    def is_ray(self) -> bool:
        return self.kind is GeneratorType.RAY

    def is_line(self) -> bool:
        return self.kind is GeneratorType.LINE

    def is_ray_or_line(self) -> bool:
        return self.kind in (GeneratorType.RAY, GeneratorType.LINE)

    def rational_coords(self, dim: int | None = None) -> tuple[Fraction, ...]:
        d = self.divisor or 1
        c = self.coords if dim is None else _pad(self.coords, dim)
        return tuple(Fraction(v, d) for v in c)

    def __eq__(self, other):
        if not isinstance(other, Generator):
            return NotImplemented
        return (self.kind, self.coords, self.divisor) == (other.kind, other.coords, other.divisor)

    def __hash__(self):
        return hash((self.kind, self.coords, self.divisor))

    def __repr__(self):
        return f"Generator({self})"

    def __str__(self):
        body = ", ".join(str(c) for c in self.coords) or "0"
        if self.kind in (GeneratorType.POINT, GeneratorType.CLOSURE_POINT) and self.divisor != 1:
            return f"{self.kind.value}(({body})/{self.divisor})"
        return f"{self.kind.value}(({body}))"


def point(coords=(), divisor: Number = 1) -> Generator:
    c, d = _coords_and_divisor(coords, divisor)
    return Generator(GeneratorType.POINT, c, d)


def closure_point(coords=(), divisor: Number = 1) -> Generator:
    c, d = _coords_and_divisor(coords, divisor)
    return Generator(GeneratorType.CLOSURE_POINT, c, d)


def ray(coords) -> Generator:
    c, _ = _coords_and_divisor(coords, 1)
    return Generator(GeneratorType.RAY, c)


def line(coords) -> Generator:
    c, _ = _coords_and_divisor(coords, 1)
    return Generator(GeneratorType.LINE, c)


def generator_point(coords: Sequence[Number]) -> Generator:
    """Point with the given rational coordinates over one common divisor."""
    return point(coords)


class SatRelation(enum.Enum):
    SATURATES = "saturates"
    SATISFIES = "satisfies"
    VIOLATES = "violates"


def satisfies(c: Constraint, g: Generator) -> SatRelation:
    """Classify generator ``g`` against constraint ``c``."""
    dim = max(c.space_dimension(), g.space_dimension())
    sp = sum(a * x for a, x in zip(_pad(c.coeffs, dim), _pad(g.coords, dim)))
    if g.divisor:
        sp += c.inhomogeneous * g.divisor
    if sp == 0:
        if c.is_strict_inequality() and g.is_point():
            return SatRelation.VIOLATES
        return SatRelation.SATURATES
    if c.is_equality() or g.is_line() or sp < 0:
        return SatRelation.VIOLATES
    return SatRelation.SATISFIES


def satisfies_checked(c: Constraint, g: Generator, dim: int) -> SatRelation:
    if c.space_dimension() > dim or g.space_dimension() > dim:
        raise DimensionMismatch("constraint and generator dimensions differ")
    return satisfies(c, g)


# -- congruences and grid generators ----------------------------------------

class Congruence:
    """``coeffs . x + inhomogeneous == 0 (mod modulus)``; modulus 0 is equality."""

    __slots__ = ("coeffs", "inhomogeneous", "modulus")

    def __init__(self, expr, modulus: Number = 1):
        expr = _as_expr(expr)
        modulus = _num(modulus)
        if modulus < 0:
            raise InvalidArgument("negative modulus")
        row = _integral([expr.inhomogeneous, *expr.coeffs, modulus])
        b, coeffs, f = row[0], row[1:-1], row[-1]
        g = _gcd_all([*coeffs, b, f])
        if g > 1:
            b, f = b // g, f // g
            coeffs = [a // g for a in coeffs]
        lead = next((a for a in coeffs if a), 0)
        if lead < 0 or (lead == 0 and f == 0 and b < 0):
            b, coeffs = -b, [-a for a in coeffs]
        if f:
            b = -((-b) % f)  # stored inhomogeneous is minus the residue
            g = _gcd_all([*coeffs, b, f])
            if g > 1:
                b, f = b // g, f // g
                coeffs = [a // g for a in coeffs]
        n = len(coeffs)
        while n and coeffs[n - 1] == 0:
            n -= 1
        self.coeffs = tuple(coeffs[:n])
        self.inhomogeneous = b
        self.modulus = f

    @classmethod
    def from_row(cls, row: Sequence[int], modulus: int) -> "Congruence":
        return cls(LinearExpression(row[0], row[1:]), modulus)

    @classmethod
    def from_constraint(cls, c: Constraint) -> "Congruence":
        if not c.is_equality():
            raise InvalidArgument("only equalities convert to congruences")
        return cls(c.expression(), 0)

    def row(self, dim: int) -> tuple:
        return (self.inhomogeneous,) + _pad(self.coeffs, dim)

    def space_dimension(self) -> int:
        return len(self.coeffs)

    def expression(self) -> LinearExpression:
        return LinearExpression(self.inhomogeneous, self.coeffs)

    @property
    def residue(self) -> int:
        return -self.inhomogeneous

    def is_equality(self) -> bool:
        return self.modulus == 0

    def is_proper_congruence(self) -> bool:
        return self.modulus != 0

    def is_tautological(self) -> bool:
        if self.coeffs:
            return False
        if self.modulus == 0:
            return self.inhomogeneous == 0
        return self.inhomogeneous % self.modulus == 0

    def is_inconsistent(self) -> bool:
        return not self.coeffs and not self.is_tautological()

    def satisfied_by(self, pt: Sequence[Number]) -> bool:
        v = self.expression().evaluate(pt)
        if self.modulus == 0:
            return v == 0
        q = v / self.modulus
        return q.denominator == 1

    def __eq__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        return (self.coeffs, self.inhomogeneous, self.modulus) == \
            (other.coeffs, other.inhomogeneous, other.modulus)

    def __hash__(self):
        return hash((self.coeffs, self.inhomogeneous, self.modulus))

    def __repr__(self):
        return f"Congruence({self})"

    def __str__(self):
        s = f"{_format_terms(self.coeffs)} = {-self.inhomogeneous}"
        return s if self.modulus == 0 else f"{s} (mod {self.modulus})"


def congruence(lhs, rhs=0, modulus: Number = 1) -> Congruence:
    """``lhs == rhs (mod modulus)``."""
    return Congruence(_as_expr(lhs) - _as_expr(rhs), modulus)


class GridGeneratorType(enum.Enum):
    POINT = "grid_point"
    PARAMETER = "parameter"
    LINE = "grid_line"


class GridGenerator:
    """A grid point, parameter (integer-stepped direction) or grid line."""

    __slots__ = ("kind", "coords", "divisor")

    def __init__(self, kind: GridGeneratorType, coords: Sequence[int], divisor: int = 1):
        self.kind = kind
        coords = list(coords)
        if kind is GridGeneratorType.LINE:
            g = _gcd_all(coords)
            if g == 0:
                raise InvalidArgument("a grid line must be a nonzero vector")
            coords = [c // g for c in coords]
            if next(c for c in coords if c) < 0:
                coords = [-c for c in coords]
            divisor = 0
        else:
            if divisor <= 0:
                raise InvalidArgument("grid points and parameters need a positive divisor")
            g = _gcd_all([*coords, divisor])
            if g > 1:
                coords = [c // g for c in coords]
                divisor //= g
            if kind is GridGeneratorType.PARAMETER and not any(coords):
                raise InvalidArgument("a parameter must be a nonzero vector")
        n = len(coords)
        while n and coords[n - 1] == 0:
            n -= 1
        self.coords = tuple(coords[:n])
        self.divisor = divisor

    def space_dimension(self) -> int:
        return len(self.coords)

    def is_point(self) -> bool:
        return self.kind is GridGeneratorType.POINT

    def is_parameter(self) -> bool:
        return self.kind is GridGeneratorType.PARAMETER

    def is_line(self) -> bool:
        return self.kind is GridGeneratorType.LINE

    def rational_coords(self, dim: int | None = None) -> tuple[Fraction, ...]:
        d = self.divisor or 1
        c = self.coords if dim is None else _pad(self.coords, dim)
        return tuple(Fraction(v, d) for v in c)

    def __eq__(self, other):
        if not isinstance(other, GridGenerator):
            return NotImplemented
        return (self.kind, self.coords, self.divisor) == (other.kind, other.coords, other.divisor)

    def __hash__(self):
        return hash((self.kind, self.coords, self.divisor))

    def __repr__(self):
        return f"GridGenerator({self})"

    def __str__(self):
        body = ", ".join(str(c) for c in self.coords) or "0"
        if self.kind is not GridGeneratorType.LINE and self.divisor != 1:
            return f"{self.kind.value}(({body})/{self.divisor})"
        return f"{self.kind.value}(({body}))"


def grid_point(coords=(), divisor: Number = 1) -> GridGenerator:
    c, d = _coords_and_divisor(coords, divisor)
    return GridGenerator(GridGeneratorType.POINT, c, d)


def parameter(coords, divisor: Number = 1) -> GridGenerator:
    c, d = _coords_and_divisor(coords, divisor)
    return GridGenerator(GridGeneratorType.PARAMETER, c, d)


def grid_line(coords) -> GridGenerator:
    c, _ = _coords_and_divisor(coords, 1)
    return GridGenerator(GridGeneratorType.LINE, c)


# -- systems -----------------------------------------------------------------

class _System:
    row_type: type = object

    def __init__(self, rows: Iterable = (), space_dim: int = 0):
        self._rows: list = []
        self.space_dim = space_dim
        for r in rows:
            self.insert(r)

    def insert(self, row) -> None:
        if not isinstance(row, self.row_type):
            raise InvalidArgument(f"expected {self.row_type.__name__}, got {type(row).__name__}")
        self._rows.append(row)
        self.space_dim = max(self.space_dim, row.space_dimension())

    append = insert

    def space_dimension(self) -> int:
        return self.space_dim

    def __iter__(self) -> Iterator:
        return iter(self._rows)

    def __len__(self):
        return len(self._rows)

    def __getitem__(self, i):
        return self._rows[i]

    def __bool__(self):
        return bool(self._rows)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._rows == other._rows and self.space_dim == other.space_dim

    def __repr__(self):
        return f"{type(self).__name__}([{', '.join(map(str, self._rows))}], space_dim={self.space_dim})"

    def __str__(self):
        return "{" + ", ".join(map(str, self._rows)) + "}"


class ConstraintSystem(_System):
    row_type = Constraint

    def has_strict_inequalities(self) -> bool:
        return any(c.is_strict_inequality() for c in self)


class GeneratorSystem(_System):
    row_type = Generator

    def has_points(self) -> bool:
        return any(g.is_point() for g in self)


class CongruenceSystem(_System):
    row_type = Congruence


class GridGeneratorSystem(_System):
    row_type = GridGenerator

    def has_points(self) -> bool:
        return any(g.is_point() for g in self)

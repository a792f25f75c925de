"""Closed and not-necessarily-closed convex polyhedra.

Both descriptions are kept as homogeneous integer rows: a constraint
``b + a.x >= 0`` is the row ``(b, a_1, .., a_n)`` and a point ``c/d`` is
``(d, c_1, .., c_n)``; rays and lines have a leading 0.  Conversion between
the two runs lazily, only when a stale description is asked for.

NNC polyhedra carry one extra trailing coordinate (epsilon).  A strict
constraint ``a.x + b > 0`` is stored as ``b + a.x - eps >= 0`` together with
``0 <= eps <= 1``; points have ``eps > 0`` and closure points ``eps = 0``.
Nothing of this encoding is visible through the public methods.
"""
from __future__ import annotations

import enum
from math import gcd as _gcd
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from . import _dd
from ._dd import Cone, dot, normalize, normalize_line
from .core import (DimensionMismatch, InvalidArgument, TokenPool, TopologyMismatch,
                   guarded)
from .linear_forms import (Constraint, ConstraintSystem, Generator, GeneratorSystem,
                           GeneratorType, LinearExpression, Relation, SatRelation,
                           Variable, _as_expr, _integral, satisfies)


def _nnc_satisfies(c: Constraint, g: Generator) -> bool:
    """Whether ``g`` is compatible with ``c`` in the NNC sense."""
    rel = satisfies(c, g)
    return rel is not SatRelation.VIOLATES

def _negation_pieces(p: Polyhedron, q: Polyhedron) -> list[Polyhedron]:
    """Polyhedra whose union covers p minus q (exactly for NNC)."""
    out = []
    for c in q.minimized_constraints():
        if p.relation_with(c) & PolyConRelation.IS_INCLUDED:
            continue
        e = c.expression()
        if p._nnc:
            if c.is_equality():
                negs = [e < 0, e > 0]
            elif c.is_strict_inequality():
                negs = [e <= 0]
            else:
                negs = [e < 0]
        elif c.is_equality():
            negs = [e <= 0, e >= 0]
        else:
            negs = [e <= 0]
        for n in negs:
            piece = p.copy().add_constraint(n)
            if not piece.is_empty():
                out.append(piece)
    return out


def _as_point(g: Generator) -> Generator:
    if g.is_closure_point():
        return Generator(GeneratorType.POINT, g.coords, g.divisor)
    return g


class Topology(enum.Enum):
    C = "C"
    NNC = "NNC"


class PolyConRelation(enum.Flag):
    NOTHING = 0
    IS_DISJOINT = enum.auto()
    STRICTLY_INTERSECTS = enum.auto()
    IS_INCLUDED = enum.auto()
    SATURATES = enum.auto()


class PolyGenRelation(enum.Flag):
    NOTHING = 0
    SUBSUMES = enum.auto()


class Complexity(enum.Enum):
    POLYNOMIAL = "polynomial"
    SIMPLEX = "simplex"
    ANY = "any"


@dataclass(frozen=True)
class DdPair:
    """One consistent snapshot of the double description.

    ``None`` marks a stale description.  Both descriptions, when present,
    denote the same set.
    """
    con_eq: Optional[tuple] = None
    con_ineq: Optional[tuple] = None
    gen_lines: Optional[tuple] = None
    gen_rays: Optional[tuple] = None  # rays and (closure) points
    con_min: bool = False
    gen_min: bool = False
    empty: Optional[bool] = None  # None: unknown until generators exist
    user_cons: Optional[ConstraintSystem] = None
    user_gens: Optional[GeneratorSystem] = None

    @property
    def con_up_to_date(self) -> bool:
        return self.con_eq is not None

    @property
    def gen_up_to_date(self) -> bool:
        return self.gen_lines is not None

    def sat_matrix(self) -> list[int]:
        """Bitset per generator (rays then lines) of saturated constraints."""
        cons = list(self.con_eq) + list(self.con_ineq)
        gens = list(self.gen_rays) + list(self.gen_lines)
        return _dd.saturation(gens, cons)


def _topology(t) -> Topology:
    if isinstance(t, Topology):
        return t
    return Topology(str(t).upper())


ExprLike = Union[LinearExpression, Variable, int, Fraction]


class Polyhedron:
    """A convex polyhedron of a fixed space dimension and topology.

    Methods ending in ``_assign`` modify the polyhedron in place and return
    it.  On error the polyhedron is left unchanged.
    """

    def __init__(self, dim: int = 0, kind: str = "universe",
                 topology: Union[Topology, str] = Topology.C):
        if dim < 0:
            raise InvalidArgument("space dimension must be non-negative")
        self._dim = int(dim)
        self._topology = _topology(topology)
        if kind == "universe":
            self._dd = self._universe_dd()
        elif kind == "empty":
            self._dd = self._empty_dd()
        else:
            raise InvalidArgument(f"unknown polyhedron kind {kind!r}")

    # -- construction -------------------------------------------------------

    @classmethod
    def universe(cls, dim: int, topology=Topology.C) -> "Polyhedron":
        return cls(dim, "universe", topology)

    @classmethod
    def empty(cls, dim: int, topology=Topology.C) -> "Polyhedron":
        return cls(dim, "empty", topology)

    @classmethod
    def from_constraints(cls, cs: Iterable[Constraint], topology=Topology.C,
                         dim: Optional[int] = None) -> "Polyhedron":
        if dim is None and isinstance(cs, ConstraintSystem):
            dim = cs.space_dim
        cs = list(cs)
        if dim is None:
            dim = max((c.space_dimension() for c in cs), default=0)
        p = cls(dim, "universe", topology)
        p.add_constraints(cs)
        return p

    @classmethod
    def from_generators(cls, gs: Iterable[Generator], topology=Topology.C,
                        dim: Optional[int] = None) -> "Polyhedron":
        if dim is None and isinstance(gs, GeneratorSystem):
            dim = gs.space_dim
        gs = list(gs)
        if dim is None:
            dim = max((g.space_dimension() for g in gs), default=0)
        p = cls(dim, "empty", topology)
        if gs:
            if not any(g.is_point() for g in gs):
                raise InvalidArgument("a nonempty generator system needs a point")
            p.add_generators(gs)
        return p

    @classmethod
    def from_polyhedron(cls, other: "Polyhedron", topology=None) -> "Polyhedron":
        """Copy ``other``; converting NNC to C takes the topological closure."""
        topology = other._topology if topology is None else _topology(topology)
        if topology is other._topology:
            return other.copy()
        if other.is_empty():
            return cls(other._dim, "empty", topology)
        if topology is Topology.C:
            cs = [c.closure() for c in other.constraints()]
            return cls.from_constraints(cs, Topology.C, other._dim)
        return cls.from_constraints(other.constraints(), Topology.NNC, other._dim)

    def copy(self) -> "Polyhedron":
        p = object.__new__(type(self))
        p._dim, p._topology, p._dd = self._dim, self._topology, self._dd
        return p

    __copy__ = copy

    def __deepcopy__(self, memo):
        return self.copy()

    # -- internal geometry ----------------------------------------------------

    @property
    def _nnc(self) -> bool:
        return self._topology is Topology.NNC

    @property
    def _N(self) -> int:
        return self._dim + 1 + (1 if self._nnc else 0)

    def _positivity(self) -> list[tuple]:
        n = self._dim
        if self._nnc:
            return [(0,) * (n + 1) + (1,), (1,) + (0,) * n + (-1,)]
        return [(1,) + (0,) * n]

    def _universe_dd(self) -> DdPair:
        return DdPair(con_eq=(), con_ineq=tuple(self._positivity()), con_min=False,
                      empty=False)

    def _empty_dd(self) -> DdPair:
        marker = (-1,) + (0,) * (self._N - 1)
        return DdPair(con_eq=(), con_ineq=(marker,), gen_lines=(), gen_rays=(),
                      con_min=True, gen_min=True, empty=True,
                      user_cons=ConstraintSystem([Constraint(LinearExpression(-1))], self._dim),
                      user_gens=GeneratorSystem([], self._dim))

    def _is_point_row(self, r: tuple) -> bool:
        return (r[-1] > 0) if self._nnc else (r[0] > 0)

    def _con_row(self, c: Constraint) -> tuple:
        if c.space_dimension() > self._dim:
            raise DimensionMismatch(
                f"constraint of dimension {c.space_dimension()} in a {self._dim}-dimensional space")
        row = c.row(self._dim)
        if self._nnc:
            return row + ((-1,) if c.is_strict_inequality() else (0,))
        if c.is_strict_inequality():
            raise TopologyMismatch("strict inequality added to a C polyhedron")
        return row

    def _gen_rows(self, g: Generator) -> list[tuple]:
        if g.space_dimension() > self._dim:
            raise DimensionMismatch(
                f"generator of dimension {g.space_dimension()} in a {self._dim}-dimensional space")
        row = g.row(self._dim)
        if not self._nnc:
            if g.is_closure_point():
                raise TopologyMismatch("closure point added to a C polyhedron")
            return [row]
        if g.is_point():
            return [row + (g.divisor,), row + (0,)]
        return [row + (0,)]

    def _ensure_gens(self) -> DdPair:
        dd = self._dd
        if dd.gen_up_to_date:
            return dd
        lines, rays = _dd.convert(dd.con_eq, dd.con_ineq, self._N)
        if not any(self._is_point_row(r) for r in rays):
            dd = self._empty_dd()
        else:
            dd = replace(dd, gen_lines=tuple(lines), gen_rays=tuple(rays), gen_min=True,
                         empty=False)
        self._dd = dd
        return dd

    def _ensure_cons(self) -> DdPair:
        dd = self._dd
        if dd.con_up_to_date:
            return dd
        lines, rays = _dd.convert(dd.gen_lines, dd.gen_rays, self._N)
        dd = replace(dd, con_eq=tuple(normalize_line(l) for l in lines),
                     con_ineq=tuple(rays), con_min=True)
        self._dd = dd
        return dd

    def _minimize_cons(self) -> DdPair:
        dd = self._ensure_cons()
        if dd.con_min:
            return dd
        dd = self._ensure_gens()
        if dd.empty or dd.con_min:
            return dd
        eqs, ineqs = _dd.minimize_source(dd.con_eq, dd.con_ineq, dd.gen_rays)
        dd = replace(dd, con_eq=tuple(normalize_line(e) for e in eqs),
                     con_ineq=tuple(ineqs), con_min=True)
        self._dd = dd
        return dd

    def _minimize_gens(self) -> DdPair:
        dd = self._ensure_gens()
        if dd.gen_min:
            return dd
        dd = self._ensure_cons()
        lines, rays = _dd.minimize_source(dd.gen_lines, dd.gen_rays, dd.con_ineq)
        dd = replace(dd, gen_lines=tuple(normalize_line(l) for l in lines),
                     gen_rays=tuple(rays), gen_min=True)
        self._dd = dd
        return dd

    def _add_con_rows(self, eqs: Sequence[tuple], ineqs: Sequence[tuple]) -> None:
        dd = self._dd
        if dd.empty:
            return
        if not eqs and not ineqs:
            return
        if dd.con_up_to_date and dd.gen_up_to_date and dd.gen_min:
            cone = Cone(self._N, list(dd.gen_lines), list(dd.gen_rays),
                        rows=list(dd.con_eq) + list(dd.con_ineq))
            for r in eqs:
                cone.add(r, True)
            for r in ineqs:
                cone.add(r, False)
            if not any(self._is_point_row(r) for r in cone.rays):
                self._dd = self._empty_dd()
                return
            self._dd = DdPair(con_eq=dd.con_eq + tuple(eqs), con_ineq=dd.con_ineq + tuple(ineqs),
                              gen_lines=tuple(cone.lines), gen_rays=tuple(cone.rays),
                              con_min=False, gen_min=True, empty=False)
            return
        if not dd.con_up_to_date:
            dd = self._ensure_cons()
        self._dd = DdPair(con_eq=dd.con_eq + tuple(eqs), con_ineq=dd.con_ineq + tuple(ineqs))

    def _add_gen_rows(self, lines: Sequence[tuple], rays: Sequence[tuple]) -> None:
        dd = self._dd
        if dd.empty:
            if not any(self._is_point_row(r) for r in rays):
                raise InvalidArgument("adding generators without a point to an empty polyhedron")
            self._dd = DdPair(gen_lines=tuple(lines), gen_rays=tuple(rays), empty=False)
            return
        if not lines and not rays:
            return
        if dd.gen_up_to_date and dd.con_up_to_date and dd.con_min:
            cone = Cone(self._N, list(dd.con_eq), list(dd.con_ineq),
                        rows=list(dd.gen_lines) + list(dd.gen_rays))
            for r in lines:
                cone.add(r, True)
            for r in rays:
                cone.add(r, False)
            self._dd = DdPair(con_eq=tuple(normalize_line(l) for l in cone.lines),
                              con_ineq=tuple(cone.rays), gen_lines=dd.gen_lines + tuple(lines),
                              gen_rays=dd.gen_rays + tuple(rays), con_min=True, gen_min=False,
                              empty=False)
            return
        if not dd.gen_up_to_date:
            dd = self._ensure_gens()
            if dd.empty:
                self._add_gen_rows(lines, rays)
                return
        self._dd = DdPair(gen_lines=dd.gen_lines + tuple(lines), gen_rays=dd.gen_rays + tuple(rays),
                          empty=False)

    # -- user views -----------------------------------------------------------

    def _user_con(self, row: tuple, is_eq: bool) -> Optional[Constraint]:
        if self._nnc:
            k = row[-1]
            body = row[:-1]
            if not any(body[1:]):
                return None
            if is_eq:
                return Constraint.from_row(body, Relation.EQ)
            if k > 0:
                return None  # equivalent to eps >= 0 on this polyhedron
            return Constraint.from_row(body, Relation.GT if k < 0 else Relation.GE)
        if not any(row[1:]):
            return None
        return Constraint.from_row(row, Relation.EQ if is_eq else Relation.GE)

    def _user_gen(self, row: tuple, is_line: bool) -> Generator:
        if self._nnc:
            body = row[:-1]
            if is_line:
                return Generator(GeneratorType.LINE, body[1:])
            if body[0] == 0:
                return Generator(GeneratorType.RAY, body[1:])
            kind = GeneratorType.POINT if row[-1] > 0 else GeneratorType.CLOSURE_POINT
            return Generator(kind, body[1:], body[0])
        if is_line:
            return Generator(GeneratorType.LINE, row[1:])
        if row[0] == 0:
            return Generator(GeneratorType.RAY, row[1:])
        return Generator(GeneratorType.POINT, row[1:], row[0])

    def _cons_view(self, dd: DdPair) -> ConstraintSystem:
        if dd.empty:
            return ConstraintSystem([Constraint(LinearExpression(-1))], self._dim)
        out = ConstraintSystem([], self._dim)
        seen = set()
        for rows, is_eq in ((dd.con_eq, True), (dd.con_ineq, False)):
            for r in rows:
                c = self._user_con(r, is_eq)
                if c is not None and c not in seen:
                    seen.add(c)
                    out.insert(c)
        return out

    def _gens_view(self, dd: DdPair) -> GeneratorSystem:
        out = GeneratorSystem([], self._dim)
        seen = set()
        for rows, is_line in ((dd.gen_lines, True), (dd.gen_rays, False)):
            for r in rows:
                g = self._user_gen(r, is_line)
                if g not in seen:
                    seen.add(g)
                    out.insert(g)
        return out

    @guarded
    def constraints(self) -> ConstraintSystem:
        return self._cons_view(self._ensure_cons())

    @guarded
    def generators(self) -> GeneratorSystem:
        return self._gens_view(self._ensure_gens())

    @guarded
    def minimized_constraints(self) -> ConstraintSystem:
        dd = self._minimize_cons()
        if dd.user_cons is not None:
            return dd.user_cons
        cs = self._cons_view(dd)
        if self._nnc and not dd.empty:
            cs = self._strong_minimize_cons(cs)
        self._dd = replace(self._dd, user_cons=cs)
        return cs

    @guarded
    def minimized_generators(self) -> GeneratorSystem:
        dd = self._minimize_gens()
        if dd.user_gens is not None:
            return dd.user_gens
        gs = self._gens_view(dd)
        if self._nnc and not dd.empty:
            gs = self._strong_minimize_gens(gs)
        self._dd = replace(self._dd, user_gens=gs)
        return gs

    def _strong_minimize_cons(self, cs: ConstraintSystem) -> ConstraintSystem:
        rows = list(cs)
        i = 0
        while i < len(rows):
            c = rows[i]
            if c.is_strict_inequality():
                rest = rows[:i] + rows[i + 1:]
                q = Polyhedron.from_constraints(rest, Topology.NNC, self._dim)
                if all(_nnc_satisfies(c, g) for g in q.generators()):
                    rows = rest
                    continue
            i += 1
        return ConstraintSystem(rows, self._dim)

    def _strong_minimize_gens(self, gs: GeneratorSystem) -> GeneratorSystem:
        rows = list(gs)
        points = {g.rational_coords(self._dim) for g in rows if g.is_point()}
        rows = [g for g in rows
                if not (g.is_closure_point() and g.rational_coords(self._dim) in points)]
        i = 0
        while i < len(rows):
            g = rows[i]
            if g.is_closure_point() or g.is_point():
                rest = rows[:i] + rows[i + 1:]
                if any(h.is_point() for h in rest):
                    topo = Topology.C if g.is_closure_point() else Topology.NNC
                    src = rest if topo is Topology.NNC else [
                        Generator(GeneratorType.POINT, h.coords, h.divisor)
                        if h.is_closure_point() else h for h in rest]
                    q = Polyhedron.from_generators(src, topo, self._dim)
                    probe = g if topo is Topology.NNC else Generator(
                        GeneratorType.POINT, g.coords, g.divisor)
                    if q.relation_with_generator(probe) & PolyGenRelation.SUBSUMES:
                        rows = rest
                        continue
            i += 1
        return GeneratorSystem(rows, self._dim)

    # -- basic queries ------------------------------------------------------------

    def space_dimension(self) -> int:
        return self._dim

    @property
    def topology(self) -> Topology:
        return self._topology

    def is_necessarily_closed(self) -> bool:
        return not self._nnc

    @property
    def dd(self) -> DdPair:
        return self._dd

    @guarded
    def is_empty(self) -> bool:
        return self._ensure_gens().empty

    def is_universe(self) -> bool:
        if self.is_empty():
            return False
        return all(c.is_tautological() for c in self.minimized_constraints())

    def is_bounded(self) -> bool:
        if self.is_empty():
            return True
        return not any(g.is_ray_or_line() for g in self.minimized_generators())

    def is_topologically_closed(self) -> bool:
        if not self._nnc or self.is_empty():
            return True
        return not any(c.is_strict_inequality() for c in self.minimized_constraints())

    def affine_dimension(self) -> int:
        if self.is_empty():
            return 0
        dd = self._minimize_cons()
        return self._dim - len(dd.con_eq)

    def lineality_dimension(self) -> int:
        if self.is_empty():
            return 0
        return len(self._minimize_gens().gen_lines)

    def _check_dim(self, other: "Polyhedron") -> None:
        if not isinstance(other, Polyhedron):
            raise InvalidArgument(f"expected a Polyhedron, got {type(other).__name__}")
        if other._dim != self._dim:
            raise DimensionMismatch(f"space dimensions {self._dim} and {other._dim} differ")

    def _check_topology(self, other: "Polyhedron") -> None:
        if self._topology is not other._topology:
            raise TopologyMismatch("polyhedra of different topologies")

    @guarded
    def contains(self, other: "Polyhedron") -> bool:
        """True iff ``other`` is a subset of ``self``."""
        self._check_dim(other)
        if other.is_empty():
            return True
        if self.is_empty():
            return False
        if not self._nnc and not other._nnc:
            dd, od = self._ensure_cons(), other._ensure_gens()
            for g in od.gen_lines:
                if any(dot(c, g) for c in dd.con_eq) or any(dot(c, g) for c in dd.con_ineq):
                    return False
            for g in od.gen_rays:
                if any(dot(c, g) for c in dd.con_eq) or any(dot(c, g) < 0 for c in dd.con_ineq):
                    return False
            return True
        cons = self.constraints()
        gens = other.generators()
        return all(_nnc_satisfies(c, g) for c in cons for g in gens)

    def strictly_contains(self, other: "Polyhedron") -> bool:
        return self.contains(other) and not other.contains(self)

    def equals(self, other: "Polyhedron") -> bool:
        self._check_dim(other)
        return self.contains(other) and other.contains(self)

    def __eq__(self, other):
        if not isinstance(other, Polyhedron):
            return NotImplemented
        if other._dim != self._dim:
            return False
        return self.equals(other)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def __le__(self, other):
        return other.contains(self)

    def __ge__(self, other):
        return self.contains(other)

    def __lt__(self, other):
        return other.strictly_contains(self)

    def __gt__(self, other):
        return self.strictly_contains(other)

    def is_disjoint_from(self, other: "Polyhedron") -> bool:
        q = self.copy()
        q.intersection_assign(other)
        return q.is_empty()

    # -- extrema and relations --------------------------------------------------

    def _extremum(self, expr: ExprLike, maximize: bool):
        """``(value, attained, point)``; value is None when unbounded."""
        e = _as_expr(expr)
        if e.space_dimension() > self._dim:
            raise DimensionMismatch("expression dimension exceeds the space dimension")
        if self.is_empty():
            return None, False, None
        sign = 1 if maximize else -1
        coeffs = e.dense(self._dim)
        best = None
        best_pt = None
        attained = False
        for g in self.generators():
            v = sum((Fraction(a) * x for a, x in zip(coeffs, g.coords)), Fraction(0))
            if g.is_line():
                if v != 0:
                    return None, False, None
                continue
            if g.is_ray():
                if sign * v > 0:
                    return None, False, None
                continue
            val = v / g.divisor + Fraction(e.inhomogeneous)
            if best is None or sign * val > sign * best or (val == best and g.is_point()):
                if best is None or val != best:
                    attained = False
                best = val
                if g.is_point():
                    attained = True
                    best_pt = g
        return best, attained, best_pt

    def maximize(self, expr: ExprLike):
        """Supremum of ``expr``: ``(value, attained, point)``; value None if unbounded."""
        return self._extremum(expr, True)

    def minimize(self, expr: ExprLike):
        return self._extremum(expr, False)

    def bounds_from_above(self, expr: ExprLike) -> bool:
        return self.is_empty() or self.maximize(expr)[0] is not None

    def bounds_from_below(self, expr: ExprLike) -> bool:
        return self.is_empty() or self.minimize(expr)[0] is not None

    @guarded
    def relation_with(self, c: Constraint) -> PolyConRelation:
        """Classify ``c`` against the polyhedron (set of relation flags)."""
        if c.space_dimension() > self._dim:
            raise DimensionMismatch("constraint dimension exceeds the space dimension")
        R = PolyConRelation
        if self.is_empty():
            return R.IS_DISJOINT | R.IS_INCLUDED | R.SATURATES
        e = c.expression()
        hi, hi_att, _ = self.maximize(e)
        lo, lo_att, _ = self.minimize(e)
        if c.is_equality():
            included = hi is not None and lo is not None and hi == 0 and lo == 0
            disjoint = ((hi is not None and (hi < 0 or (hi == 0 and not hi_att)))
                        or (lo is not None and (lo > 0 or (lo == 0 and not lo_att))))
        elif c.is_strict_inequality():
            included = lo is not None and (lo > 0 or (lo == 0 and not lo_att))
            disjoint = hi is not None and hi <= 0
        else:
            included = lo is not None and lo >= 0
            disjoint = hi is not None and (hi < 0 or (hi == 0 and not hi_att))
        out = R.NOTHING
        if included:
            out |= R.IS_INCLUDED
        if disjoint:
            out |= R.IS_DISJOINT
        if not included and not disjoint:
            out |= R.STRICTLY_INTERSECTS
        if hi == 0 and lo == 0:
            out |= R.SATURATES
        return out

    def relation_with_generator(self, g: Generator) -> PolyGenRelation:
        if g.space_dimension() > self._dim:
            raise DimensionMismatch("generator dimension exceeds the space dimension")
        if self.is_empty():
            return PolyGenRelation.NOTHING
        ok = all(_nnc_satisfies(c, g) for c in self.constraints())
        return PolyGenRelation.SUBSUMES if ok else PolyGenRelation.NOTHING

    def contains_point(self, coords: Sequence) -> bool:
        from .linear_forms import point
        return bool(self.relation_with_generator(point(coords)) & PolyGenRelation.SUBSUMES)

    # -- text -----------------------------------------------------------------------

    def __repr__(self):
        if self.is_empty():
            body = "false"
        else:
            cs = self.minimized_constraints()
            body = ", ".join(str(c) for c in cs) or "true"
        return f"<{self._topology.value}_Polyhedron dim={self._dim}: {body}>"

    def ascii_dump(self) -> str:
        """Both internal descriptions with status flags (debugging aid)."""
        dd = self._dd
        lines = [f"topology {self._topology.value}", f"space_dim {self._dim}",
                 "status " + " ".join(
                     f"{name}={int(val)}" for name, val in (
                         ("con_up_to_date", dd.con_up_to_date),
                         ("gen_up_to_date", dd.gen_up_to_date),
                         ("con_minimized", dd.con_min), ("gen_minimized", dd.gen_min),
                         ("empty", bool(dd.empty))))]
        if dd.con_up_to_date:
            lines.append(f"con_sys {len(dd.con_eq) + len(dd.con_ineq)}")
            lines += ["= " + " ".join(map(str, r)) for r in dd.con_eq]
            lines += [">= " + " ".join(map(str, r)) for r in dd.con_ineq]
        if dd.gen_up_to_date:
            lines.append(f"gen_sys {len(dd.gen_lines) + len(dd.gen_rays)}")
            lines += ["L " + " ".join(map(str, r)) for r in dd.gen_lines]
            lines += [("P " if self._is_point_row(r) else "R ") + " ".join(map(str, r))
                      for r in dd.gen_rays]
        return "\n".join(lines)


    # -- adding constraints and generators ---------------------------------------

    @guarded
    def add_constraint(self, c: Constraint) -> "Polyhedron":
        return self.add_constraints([c])

    @guarded
    def add_constraints(self, cs: Iterable[Constraint]) -> "Polyhedron":
        eqs, ineqs = [], []
        for c in cs:
            row = self._con_row(c)
            (eqs if c.is_equality() else ineqs).append(row)
        self._add_con_rows(eqs, ineqs)
        return self

    def refine_with_constraint(self, c: Constraint) -> "Polyhedron":
        """Like add_constraint, but a strict constraint is closed in a C polyhedron."""
        if not self._nnc:
            c = c.closure()
        return self.add_constraint(c)

    def refine_with_constraints(self, cs: Iterable[Constraint]) -> "Polyhedron":
        if not self._nnc:
            cs = [c.closure() for c in cs]
        return self.add_constraints(cs)

    @guarded
    def add_generator(self, g: Generator) -> "Polyhedron":
        return self.add_generators([g])

    @guarded
    def add_generators(self, gs: Iterable[Generator]) -> "Polyhedron":
        lines, rays = [], []
        for g in gs:
            for row in self._gen_rows(g):
                (lines if g.is_line() else rays).append(row)
        self._add_gen_rows(lines, rays)
        return self

    def unconstrain(self, *variables: Variable) -> "Polyhedron":
        """Cylindrification along the given variables."""
        lines = []
        for v in variables:
            if v.index >= self._dim:
                raise DimensionMismatch(f"variable {v} outside a {self._dim}-dimensional space")
            row = [0] * self._N
            row[v.index + 1] = 1
            lines.append(tuple(row))
        if not self.is_empty():
            self._add_gen_rows(lines, [])
        return self

    # -- lattice operations -------------------------------------------------------

    def _con_rows_of(self, other: "Polyhedron") -> tuple[tuple, tuple]:
        od = other._ensure_cons()
        return od.con_eq, od.con_ineq

    @guarded
    def intersection_assign(self, other: "Polyhedron") -> "Polyhedron":
        self._check_dim(other)
        self._check_topology(other)
        if other._dd.empty:
            self._dd = self._empty_dd()
            return self
        eqs, ineqs = self._con_rows_of(other)
        self._add_con_rows(eqs, ineqs)
        return self

    meet_assign = intersection_assign

    @guarded
    def upper_bound_assign(self, other: "Polyhedron") -> "Polyhedron":
        """Convex polyhedral hull."""
        self._check_dim(other)
        self._check_topology(other)
        if other.is_empty():
            return self
        if self.is_empty():
            self._dd = other._dd
            return self
        od = other._ensure_gens()
        self._add_gen_rows(od.gen_lines, od.gen_rays)
        return self

    poly_hull_assign = upper_bound_assign
    join_assign = upper_bound_assign

    def upper_bound_assign_if_exact(self, other: "Polyhedron") -> bool:
        """Join only if the hull equals the set union; report whether it did."""
        self._check_dim(other)
        self._check_topology(other)
        hull = self.copy().upper_bound_assign(other)
        h, a, b = (Polyhedron.from_polyhedron(x, Topology.NNC) for x in (hull, self, other))
        if not all(b.contains(piece) for piece in _negation_pieces(h, a)):
            return False
        self._dd = hull._dd
        return True

    @guarded
    def poly_difference_assign(self, other: "Polyhedron") -> "Polyhedron":
        """Smallest polyhedron containing the set difference (closed for C)."""
        self._check_dim(other)
        self._check_topology(other)
        if self.is_empty() or other.is_empty():
            return self
        result = Polyhedron.empty(self._dim, self._topology)
        for piece in _negation_pieces(self, other):
            result.upper_bound_assign(piece)
        self._dd = result._dd
        return self

    difference_assign = poly_difference_assign

    def simplify_using_context_assign(self, ctx: "Polyhedron") -> bool:
        """Drop constraints implied within ``ctx``; False if the meet is empty."""
        self._check_dim(ctx)
        meet = self.copy().intersection_assign(ctx)
        if meet.is_empty():
            self._dd = Polyhedron.empty(self._dim, self._topology)._dd
            return False
        kept = list(self.minimized_constraints())
        i = 0
        while i < len(kept):
            rest = kept[:i] + kept[i + 1:]
            q = Polyhedron.from_constraints(rest, self._topology, self._dim)
            q.intersection_assign(ctx)
            if q.equals(meet):
                kept = rest
            else:
                i += 1
        self._dd = Polyhedron.from_constraints(kept, self._topology, self._dim)._dd
        return True

    @guarded
    def time_elapse_assign(self, other: "Polyhedron") -> "Polyhedron":
        """Everything reachable from self moving along directions in other."""
        self._check_dim(other)
        self._check_topology(other)
        if self.is_empty() or other.is_empty():
            self._dd = self._empty_dd()
            return self
        od = other._ensure_gens()
        rays = []
        for r in od.gen_rays:
            body = r[1:self._dim + 1]
            if any(body):
                rays.append(normalize((0,) + body + ((0,) if self._nnc else ())))
        self._add_gen_rows(od.gen_lines, rays)
        return self

    def topological_closure_assign(self) -> "Polyhedron":
        if self._nnc and not self.is_empty():
            cs = [c.closure() for c in self.constraints()]
            self._dd = Polyhedron.from_constraints(cs, Topology.NNC, self._dim)._dd
        return self


    # -- affine transformations ----------------------------------------------------

    def _affine_args(self, var: Variable, expr: ExprLike, denominator) -> tuple:
        if not isinstance(var, Variable):
            raise InvalidArgument("expected a Variable")
        if var.index >= self._dim:
            raise DimensionMismatch(f"variable {var} outside a {self._dim}-dimensional space")
        e = _as_expr(expr)
        if e.space_dimension() > self._dim:
            raise DimensionMismatch("expression dimension exceeds the space dimension")
        if denominator == 0:
            raise InvalidArgument("zero denominator")
        k = Fraction(1) / Fraction(denominator)
        fs = [Fraction(e.inhomogeneous) * k] + [Fraction(x) * k for x in e.dense(self._dim)]
        den = 1
        for f in fs:
            den = den * f.denominator // _gcd(den, f.denominator)
        ints = [int(f * den) for f in fs]
        return var.index, ints[0], ints[1:], den

    @guarded
    def affine_image(self, var: Variable, expr: ExprLike, denominator=1) -> "Polyhedron":
        """``var := expr / denominator``."""
        v, e0, e, den = self._affine_args(var, expr, denominator)
        # _integral scaled so that expr/den has integer parts e, e0 over 1/den
        dd = self._ensure_gens()
        if dd.empty:
            return self
        s, sign = abs(den), (1 if den > 0 else -1)

        def image(r):
            out = [x * s for x in r]
            out[v + 1] = sign * (dot(e, r[1:self._dim + 1]) + e0 * r[0])
            return tuple(out)

        lines = []
        for l in dd.gen_lines:
            m = image(l)
            if any(m):
                lines.append(normalize_line(m))
        rays = []
        for r in dd.gen_rays:
            m = image(r)
            if any(m):
                rays.append(normalize(m))
        self._dd = DdPair(gen_lines=tuple(lines), gen_rays=tuple(rays), empty=False)
        return self

    @guarded
    def affine_preimage(self, var: Variable, expr: ExprLike, denominator=1) -> "Polyhedron":
        """Inverse image of ``var := expr / denominator``."""
        v, e0, e, den = self._affine_args(var, expr, denominator)
        dd = self._ensure_cons()
        if dd.empty:
            return self
        s, sign = abs(den), (1 if den > 0 else -1)

        def pre(c):
            av = c[v + 1]
            out = [x * s for x in c]
            if av:
                out[0] += sign * av * e0
                for i, ei in enumerate(e):
                    out[i + 1] += sign * av * ei
                out[v + 1] = sign * av * e[v]
            return normalize(out)

        eqs = tuple(normalize_line(pre(c)) for c in dd.con_eq)
        ineqs = tuple(pre(c) for c in dd.con_ineq)
        self._dd = DdPair(con_eq=eqs, con_ineq=ineqs)
        return self

    def _relational(self, relation: Sequence[Constraint], lhs_vars: set[int],
                    image: bool) -> "Polyhedron":
        """Apply ``relation`` between old (first n) and new (last n) variables."""
        n = self._dim
        if image:
            z = self.copy()
            z.add_space_dimensions_and_embed(n)
        else:
            z = Polyhedron.universe(n, self._topology)
            z.concatenate_assign(self)
        frame = [Variable(n + i) - Variable(i) == 0 for i in range(n) if i not in lhs_vars]
        z.add_constraints(frame + list(relation))
        drop = range(n) if image else range(n, 2 * n)
        z.remove_space_dimensions([Variable(i) for i in drop])
        self._dd = z._dd
        return self

    def _shift(self, e: LinearExpression) -> LinearExpression:
        n = self._dim
        return LinearExpression(e.inhomogeneous, (0,) * n + tuple(e.dense(n)))

    def _relsym(self, lhs, rel: str, rhs) -> Constraint:
        ops = {"=": lambda a, b: a == b, "==": lambda a, b: a == b,
               ">=": lambda a, b: a >= b, "<=": lambda a, b: a <= b,
               ">": lambda a, b: a > b, "<": lambda a, b: a < b}
        if rel not in ops:
            raise InvalidArgument(f"unknown relation symbol {rel!r}")
        if rel in (">", "<") and not self._nnc:
            raise TopologyMismatch("strict relation on a C polyhedron")
        return ops[rel](lhs, rhs)

    def _general(self, lhs: LinearExpression, rel: str, rhs: LinearExpression,
                 image: bool) -> "Polyhedron":
        for e in (lhs, rhs):
            if e.space_dimension() > self._dim:
                raise DimensionMismatch("expression dimension exceeds the space dimension")
        lhs_vars = {i for i, a in enumerate(lhs.dense(self._dim)) if a}
        if self.is_empty():
            return self
        c = self._relsym(self._shift(lhs), rel, rhs)
        return self._relational([c], lhs_vars, image)

    @guarded
    def generalized_affine_image(self, var, rel: str, expr: ExprLike = 0,
                                 denominator=1) -> "Polyhedron":
        """``var' rel expr/denominator``, or ``lhs' rel rhs`` when var is an expression."""
        lhs, rhs = self._general_args(var, expr, denominator)
        return self._general(lhs, rel, rhs, True)

    @guarded
    def generalized_affine_preimage(self, var, rel: str, expr: ExprLike = 0,
                                    denominator=1) -> "Polyhedron":
        lhs, rhs = self._general_args(var, expr, denominator)
        return self._general(lhs, rel, rhs, False)

    def _general_args(self, var, expr, denominator):
        if isinstance(var, Variable):
            self._affine_args(var, expr, denominator)
            return _as_expr(var), _as_expr(expr) * (Fraction(1) / Fraction(denominator))
        if denominator != 1:
            raise InvalidArgument("a denominator only applies to the variable form")
        return _as_expr(var), _as_expr(expr)

    @guarded
    def bounded_affine_image(self, var: Variable, lb: ExprLike, ub: ExprLike,
                             denominator=1) -> "Polyhedron":
        """``lb/denominator <= var' <= ub/denominator``."""
        return self._bounded(var, lb, ub, denominator, True)

    @guarded
    def bounded_affine_preimage(self, var: Variable, lb: ExprLike, ub: ExprLike,
                                denominator=1) -> "Polyhedron":
        return self._bounded(var, lb, ub, denominator, False)

    def _bounded(self, var, lb, ub, denominator, image: bool) -> "Polyhedron":
        self._affine_args(var, lb, denominator)
        self._affine_args(var, ub, denominator)
        if self.is_empty():
            return self
        k = Fraction(1) / denominator
        lo, hi = _as_expr(lb) * k, _as_expr(ub) * k
        if denominator < 0:
            lo, hi = hi, lo
        new = Variable(self._dim + var.index)
        return self._relational([new >= lo, new <= hi], {var.index}, image)

    # -- space dimensions ----------------------------------------------------------

    def add_space_dimensions_and_embed(self, m: int) -> "Polyhedron":
        if m < 0:
            raise InvalidArgument("negative number of dimensions")
        if m == 0:
            return self
        dd = self._dd
        n = self._dim
        self._dim = n + m
        if dd.empty:
            self._dd = self._empty_dd()
            return self
        new = {}
        if dd.con_up_to_date:
            new.update(con_eq=self._widen_rows_n(dd.con_eq, n, m),
                       con_ineq=self._widen_rows_n(dd.con_ineq, n, m), con_min=dd.con_min)
        if dd.gen_up_to_date:
            extra = []
            for j in range(m):
                row = [0] * self._N
                row[n + 1 + j] = 1
                extra.append(tuple(row))
            new.update(gen_lines=self._widen_rows_n(dd.gen_lines, n, m) + tuple(extra),
                       gen_rays=self._widen_rows_n(dd.gen_rays, n, m), gen_min=dd.gen_min)
        self._dd = DdPair(empty=False, **new)
        return self

    @staticmethod
    def _widen_rows_n(rows, n: int, m: int) -> tuple:
        return tuple(r[:n + 1] + (0,) * m + r[n + 1:] for r in rows)

    def add_space_dimensions_and_project(self, m: int) -> "Polyhedron":
        if m < 0:
            raise InvalidArgument("negative number of dimensions")
        if m == 0:
            return self
        dd = self._dd
        n = self._dim
        self._dim = n + m
        if dd.empty:
            self._dd = self._empty_dd()
            return self
        new = {}
        if dd.con_up_to_date:
            extra = []
            for j in range(m):
                row = [0] * self._N
                row[n + 1 + j] = 1
                extra.append(tuple(row))
            new.update(con_eq=self._widen_rows_n(dd.con_eq, n, m) + tuple(extra),
                       con_ineq=self._widen_rows_n(dd.con_ineq, n, m), con_min=dd.con_min)
        if dd.gen_up_to_date:
            new.update(gen_lines=self._widen_rows_n(dd.gen_lines, n, m),
                       gen_rays=self._widen_rows_n(dd.gen_rays, n, m), gen_min=dd.gen_min)
        self._dd = DdPair(empty=False, **new)
        return self

    def _select_columns(self, keep: Sequence[int], new_dim: int) -> None:
        """Project onto user coordinates ``keep`` (in the given order)."""
        dd = self._ensure_gens()
        self._dim = new_dim
        if dd.empty:
            self._dd = self._empty_dd()
            return
        tail = (-1,) if self._nnc else ()

        def pick(r):
            return (r[0],) + tuple(r[i + 1] for i in keep) + tuple(r[t] for t in tail)

        lines = []
        for l in dd.gen_lines:
            m = pick(l)
            if any(m):
                lines.append(normalize_line(m))
        rays = []
        for r in dd.gen_rays:
            m = pick(r)
            if any(m):
                rays.append(normalize(m))
        self._dd = DdPair(gen_lines=tuple(lines), gen_rays=tuple(rays), empty=False)

    def remove_space_dimensions(self, variables: Iterable[Variable]) -> "Polyhedron":
        drop = {v.index for v in variables}
        if any(i >= self._dim for i in drop):
            raise DimensionMismatch("variable outside the space dimension")
        if not drop:
            return self
        keep = [i for i in range(self._dim) if i not in drop]
        self._select_columns(keep, len(keep))
        return self

    def remove_higher_space_dimensions(self, new_dim: int) -> "Polyhedron":
        if new_dim > self._dim or new_dim < 0:
            raise DimensionMismatch("cannot grow the space with remove_higher_space_dimensions")
        if new_dim < self._dim:
            self._select_columns(list(range(new_dim)), new_dim)
        return self

    def map_space_dimensions(self, pfunc: Union[Mapping[int, int], Sequence]) -> "Polyhedron":
        """Rename dimensions by a partial injective map; unmapped ones are dropped."""
        if not isinstance(pfunc, Mapping):
            pfunc = {i: j for i, j in enumerate(pfunc) if j is not None}
        pf = {(k.index if isinstance(k, Variable) else int(k)):
              (v.index if isinstance(v, Variable) else int(v)) for k, v in pfunc.items()}
        if any(k >= self._dim or k < 0 for k in pf):
            raise DimensionMismatch("map domain outside the space dimension")
        codomain = sorted(pf.values())
        new_dim = len(codomain)
        if codomain != list(range(new_dim)):
            raise InvalidArgument("map must be injective onto an initial segment")
        keep = [0] * new_dim
        for k, v in pf.items():
            keep[v] = k
        self._select_columns(keep, new_dim)
        return self

    @guarded
    def concatenate_assign(self, other: "Polyhedron") -> "Polyhedron":
        """Cartesian product; other's dimensions come after self's."""
        self._check_topology(other)
        n, m = self._dim, other._dim
        if self.is_empty() or other.is_empty():
            self._dim = n + m
            self._dd = self._empty_dd()
            return self
        dd, od = self._ensure_cons(), other._ensure_cons()
        self._dim = n + m
        lift = lambda r: (r[0],) + (0,) * n + r[1:]  # noqa: E731
        eqs = self._widen_rows_n(dd.con_eq, n, m) + tuple(lift(r) for r in od.con_eq)
        ineqs = self._widen_rows_n(dd.con_ineq, n, m) + tuple(lift(r) for r in od.con_ineq)
        self._dd = DdPair(con_eq=eqs, con_ineq=ineqs)
        return self

    def expand_space_dimension(self, var: Variable, m: int) -> "Polyhedron":
        """Add ``m`` copies of ``var`` sharing its constraints (not its value)."""
        if var.index >= self._dim:
            raise DimensionMismatch(f"variable {var} outside the space dimension")
        if m == 0:
            return self
        n = self._dim
        cs = list(self.constraints()) if not self.is_empty() else []
        self.add_space_dimensions_and_embed(m)
        if not cs:
            return self
        extra = []
        for c in cs:
            a = c.coefficient(var)
            if not a:
                continue
            for j in range(m):
                coeffs = list(c.coeffs) + [0] * (n + m - len(c.coeffs))
                coeffs[var.index] = 0
                coeffs[n + j] = a
                extra.append(Constraint(LinearExpression(c.inhomogeneous, coeffs), c.relation))
        self.add_constraints(extra)
        return self

    def fold_space_dimensions(self, variables: Iterable[Variable], dest: Variable) -> "Polyhedron":
        """Merge ``variables`` into ``dest`` (join of their values), then drop them."""
        vs = sorted({v.index for v in variables})
        if dest.index >= self._dim or any(i >= self._dim for i in vs):
            raise DimensionMismatch("variable outside the space dimension")
        if dest.index in vs:
            raise InvalidArgument("destination among the folded variables")
        if not vs:
            return self
        result = self.copy()
        for i in vs:
            q = self.copy()
            q.affine_image(dest, Variable(i))
            result.upper_bound_assign(q)
        result.remove_space_dimensions([Variable(i) for i in vs])
        self._dim, self._dd = result._dim, result._dd
        return self


    # -- widening ---------------------------------------------------------------------

    def widening_certificate(self) -> tuple[int, int]:
        """Measure strictly decreased by every non-stationary widening step.

        Pairs of (codimension of the affine hull, number of minimized
        constraints), compared lexicographically.
        """
        if self.is_empty():
            return (self._dim + 1, 0)
        return (self._dim - self.affine_dimension(), len(self.minimized_constraints()))

    def _widening_args(self, other: "Polyhedron") -> None:
        self._check_dim(other)
        self._check_topology(other)
        if not other.contains(self):
            raise InvalidArgument("widening requires the second argument to contain the first")

    @staticmethod
    def _split_equalities(cs: Iterable[Constraint]) -> list[Constraint]:
        out = []
        for c in cs:
            if c.is_equality():
                e = c.expression()
                out += [e >= 0, e <= 0]
            else:
                out.append(c)
        return out

    @staticmethod
    def _saturators(c: Constraint, gens: Sequence[Generator]) -> frozenset:
        hit = []
        for i, g in enumerate(gens):
            sp = sum(a * x for a, x in zip(c.coeffs, g.coords))
            if g.divisor:
                sp += c.inhomogeneous * g.divisor
            if sp == 0:
                hit.append(i)
        return frozenset(hit)

    def _h79(self, other: "Polyhedron") -> "Polyhedron":
        if self.is_empty():
            return other.copy()
        mine = list(self.minimized_constraints())
        keep = [c for c in self._split_equalities(mine)
                if other.relation_with(c) & PolyConRelation.IS_INCLUDED]
        gens = list(self.minimized_generators())
        sats = {self._saturators(c, gens) for c in mine}
        keep += [c for c in self._split_equalities(other.minimized_constraints())
                 if self._saturators(c, gens) in sats]
        return Polyhedron.from_constraints(keep, self._topology, self._dim)

    def _bhrz03(self, other: "Polyhedron") -> "Polyhedron":
        if self.is_empty():
            return other.copy()
        cert_p = self.widening_certificate()
        if other.widening_certificate() < cert_p:
            return other.copy()
        h = self._h79(other)
        # evolving points: let each new point of other keep moving away
        # from the old points it evolved from
        old = [g for g in self.minimized_generators() if g.is_point() or g.is_closure_point()]
        rays = []
        for g in other.minimized_generators():
            if not (g.is_point() or g.is_closure_point()):
                continue
            if self.relation_with_generator(_as_point(g)) & PolyGenRelation.SUBSUMES:
                continue
            gc = g.rational_coords(self._dim)
            for o in old:
                d = [a - b for a, b in zip(gc, o.rational_coords(self._dim))]
                if any(d):
                    rays.append(Generator(GeneratorType.RAY, _integral(d)))
        if rays:
            cand = other.copy().add_generators(rays)
            cand.intersection_assign(h)
            if h.strictly_contains(cand) and cand.widening_certificate() < cert_p:
                return cand
        return h

    def _finish_widening(self, result: "Polyhedron", other: "Polyhedron",
                         tokens: Optional[TokenPool]) -> "Polyhedron":
        if tokens is not None and not result.equals(other) and tokens.consume():
            result = other.copy()
        self._dd = result._dd
        return self

    @guarded
    def widening_h79_assign(self, other: "Polyhedron",
                            tokens: Optional[TokenPool] = None) -> "Polyhedron":
        """Standard widening; self is the previous iterate, other the next."""
        self._widening_args(other)
        return self._finish_widening(self._h79(other), other, tokens)

    H79_widening_assign = widening_h79_assign

    @guarded
    def widening_bhrz03_assign(self, other: "Polyhedron",
                               tokens: Optional[TokenPool] = None) -> "Polyhedron":
        """Widening at least as precise as widening_h79_assign."""
        self._widening_args(other)
        return self._finish_widening(self._bhrz03(other), other, tokens)

    BHRZ03_widening_assign = widening_bhrz03_assign

    def _limited(self, other: "Polyhedron", cs: Iterable[Constraint], precise: bool,
                 tokens: Optional[TokenPool], bounded: bool) -> "Polyhedron":
        self._widening_args(other)
        cs = list(cs)
        for c in cs:
            if c.space_dimension() > self._dim:
                raise DimensionMismatch("constraint dimension exceeds the space dimension")
        if bounded and not self.is_empty():
            cs += self._box_constraints()
        result = self._bhrz03(other) if precise else self._h79(other)
        common = [c for c in cs
                  if self.relation_with(c) & PolyConRelation.IS_INCLUDED
                  and other.relation_with(c) & PolyConRelation.IS_INCLUDED]
        if not self._nnc:
            common = [c.closure() for c in common]
        result.add_constraints(common)
        return self._finish_widening(result, other, tokens)

    def _box_constraints(self) -> list[Constraint]:
        out = []
        for i in range(self._dim):
            v = Variable(i)
            hi, hi_att, _ = self.maximize(v)
            lo, lo_att, _ = self.minimize(v)
            if hi is not None:
                out.append(v <= hi if hi_att or not self._nnc else v < hi)
            if lo is not None:
                out.append(v >= lo if lo_att or not self._nnc else v > lo)
        return out

    @guarded
    def limited_h79_extrapolation_assign(self, other, cs, tokens=None) -> "Polyhedron":
        """Standard widening, then re-impose the constraints of cs both sides satisfy."""
        return self._limited(other, cs, False, tokens, False)

    @guarded
    def limited_bhrz03_extrapolation_assign(self, other, cs, tokens=None) -> "Polyhedron":
        return self._limited(other, cs, True, tokens, False)

    @guarded
    def bounded_h79_extrapolation_assign(self, other, cs, tokens=None) -> "Polyhedron":
        """Limited extrapolation that also keeps the stable variable bounds."""
        return self._limited(other, cs, False, tokens, True)

    @guarded
    def bounded_bhrz03_extrapolation_assign(self, other, cs, tokens=None) -> "Polyhedron":
        return self._limited(other, cs, True, tokens, True)

    limited_extrapolation_assign = limited_h79_extrapolation_assign

"""Conversions between polyhedra, weakly relational shapes, grids and powersets.

Conversions into shapes take a complexity class:

* ``POLYNOMIAL`` keeps the constraints that are already of the target form
  and closes the result.  No generators and no LP.
* ``SIMPLEX`` optimizes every direction of the target domain by exact LP
  over the constraints.  The result is the smallest enclosing shape.
* ``ANY`` optimizes the same directions over the generators.

Every conversion returns a superset of its argument.
"""
from __future__ import annotations

from typing import Callable, Optional

from .bd_shape import INF, BdShape, difference_form
from .core import InvalidArgument
from .grid import Grid
from .linear_forms import Variable, grid_line, grid_point, line, point
from .lp import MAXIMIZATION, LpProblem, LpStatus
from .oct_shape import OctShape, octagonal_form, signed
from .polyhedron import Complexity, Polyhedron, Topology
from .powerset import PointsetPowerset, Powerset

POLYNOMIAL = Complexity.POLYNOMIAL
SIMPLEX = Complexity.SIMPLEX
ANY = Complexity.ANY


def _complexity(cc) -> Complexity:
    if isinstance(cc, Complexity):
        return cc
    try:
        return Complexity(str(cc).lower())
    except ValueError:
        raise InvalidArgument(f"unknown complexity class {cc!r}") from None


def _lp_of(p: Polyhedron) -> Optional[LpProblem]:
    """LP over the closure of ``p``'s constraints, or None when ``p`` is empty."""
    n = p.space_dimension()
    cs = list(p.constraints())
    if any(c.is_inconsistent() for c in cs):
        return None
    strict = [c for c in cs if c.is_strict_inequality()]
    if strict:
        # p is nonempty iff some eps > 0 satisfies every strict row with slack eps
        eps = Variable(n)
        test = LpProblem(n + 1, [c for c in cs if not c.is_strict_inequality()],
                         eps, MAXIMIZATION)
        test.add_constraints([c.expression() - eps >= 0 for c in strict])
        test.add_constraint(eps <= 1)
        if test.solve() is not LpStatus.OPTIMIZED or test.optimal_value() <= 0:
            return None
    lp = LpProblem(n, [c.closure() for c in cs])
    if not lp.is_satisfiable():
        return None
    return lp


def _sup(lp: LpProblem, expr):
    lp.set_objective_function(expr)
    lp.set_optimization_mode(MAXIMIZATION)
    if lp.solve() is LpStatus.UNBOUNDED:
        return INF
    return lp.optimal_value()


def to_bds(x, complexity=ANY, family="rational") -> BdShape:
    """Bounded-difference shape containing ``x``."""
    cc = _complexity(complexity)
    if isinstance(x, BdShape):
        if x.is_empty():
            return BdShape.empty(x.space_dimension(), family)
        return BdShape.from_matrix(x.dbm(), family)
    if isinstance(x, OctShape):
        return to_bds(x.to_bd_shape(), cc, family)
    if isinstance(x, Grid):
        return to_bds(to_polyhedron(x), cc, family)
    if not isinstance(x, Polyhedron):
        raise InvalidArgument(f"cannot convert {type(x).__name__} to a BdShape")
    n = x.space_dimension()
    if cc is ANY:
        return BdShape.from_polyhedron(x, family)
    if cc is POLYNOMIAL:
        return _bds_syntactic(x, family)
    lp = _lp_of(x)
    if lp is None:
        return BdShape.empty(n, family)
    m = [[0 if i == j else _sup(lp, BdShape._diff(i, j)) for j in range(n + 1)]
         for i in range(n + 1)]
    return BdShape.from_matrix(m, family)


def _bds_syntactic(p: Polyhedron, family) -> BdShape:
    n = p.space_dimension()
    m = [[0 if i == j else INF for j in range(n + 1)] for i in range(n + 1)]
    for c in p.constraints():
        if c.is_inconsistent():
            return BdShape.empty(n, family)
        form = difference_form(c.closure())
        for i, j, d in form or ():
            if m[i][j] is INF or d < m[i][j]:
                m[i][j] = d
    return BdShape.from_matrix(m, family)


def to_oct(x, complexity=ANY, family="rational") -> OctShape:
    """Octagonal shape containing ``x``."""
    cc = _complexity(complexity)
    if isinstance(x, BdShape):
        x = OctShape.from_bd_shape(x)
    if isinstance(x, OctShape):
        if x.is_empty():
            return OctShape.empty(x.space_dimension(), family)
        return OctShape.from_matrix(x.matrix(), family)
    if isinstance(x, Grid):
        return to_oct(to_polyhedron(x), cc, family)
    if not isinstance(x, Polyhedron):
        raise InvalidArgument(f"cannot convert {type(x).__name__} to an OctShape")
    n = x.space_dimension()
    if cc is ANY:
        return OctShape.from_polyhedron(x, family)
    if cc is POLYNOMIAL:
        m = [[0 if i == j else INF for j in range(2 * n)] for i in range(2 * n)]
        for c in x.constraints():
            if c.is_inconsistent():
                return OctShape.empty(n, family)
            for i, j, d in octagonal_form(c.closure()) or ():
                if m[i][j] is INF or d < m[i][j]:
                    m[i][j] = d
        return OctShape.from_matrix(m, family)
    lp = _lp_of(x)
    if lp is None:
        return OctShape.empty(n, family)
    m = [[0 if i == j else _sup(lp, signed(j) - signed(i)) for j in range(2 * n)]
         for i in range(2 * n)]
    return OctShape.from_matrix(m, family)


def to_polyhedron(x, topology=Topology.C) -> Polyhedron:
    """Smallest polyhedron containing ``x`` (a shape, grid or powerset)."""
    if isinstance(x, Polyhedron):
        return Polyhedron.from_polyhedron(x, topology)
    if isinstance(x, (BdShape, OctShape)):
        return Polyhedron.from_polyhedron(x.to_polyhedron(), topology)
    if isinstance(x, Grid):
        n = x.space_dimension()
        if x.is_empty():
            return Polyhedron.empty(n, topology)
        gens = list(x.minimized_grid_generators())
        # the convex hull of a grid is its affine hull
        out = [point(gens[0].coords, gens[0].divisor) if gens[0].coords
               else point((0,) * n)]
        out += [line(g.coords) for g in gens[1:]]
        return Polyhedron.from_generators(out, topology, dim=n)
    if isinstance(x, Powerset):
        h = x.hull()
        if h is None:
            if x.space_dimension() is None:
                raise InvalidArgument("empty powerset of unknown dimension")
            return Polyhedron.empty(x.space_dimension(), topology)
        return to_polyhedron(h, topology)
    raise InvalidArgument(f"cannot convert {type(x).__name__} to a Polyhedron")


def to_grid(x) -> Grid:
    """Smallest grid containing ``x``'s affine hull (the affine hull itself)."""
    if isinstance(x, Grid):
        return x.copy()
    if isinstance(x, (BdShape, OctShape)):
        x = x.to_polyhedron()
    if not isinstance(x, Polyhedron):
        raise InvalidArgument(f"cannot convert {type(x).__name__} to a Grid")
    n = x.space_dimension()
    if x.is_empty():
        return Grid.empty(n)
    gens = list(x.minimized_generators())
    base = next(g for g in gens if g.is_point())
    p0 = base.rational_coords(n)
    out = [grid_point(p0)]
    for g in gens:
        if g is base:
            continue
        v = g.rational_coords(n)
        if not g.is_ray_or_line():
            v = tuple(a - b for a, b in zip(v, p0))
        if any(v):
            out.append(grid_line(v))
    return Grid.from_generators(out, dim=n)


def embed(x, dim: Optional[int] = None) -> PointsetPowerset:
    """Powerset with the single disjunct ``x``."""
    n = x.space_dimension() if dim is None else dim
    return PointsetPowerset(n, [x])


def extract(ps: Powerset, convert: Callable = to_polyhedron):
    """Hull of a powerset's disjuncts, converted by ``convert``."""
    return convert(to_polyhedron(ps))


def convert_powerset(ps: Powerset, convert: Callable) -> PointsetPowerset:
    """Apply ``convert`` to every disjunct."""
    return PointsetPowerset(ps.space_dimension(), [convert(d) for d in ps])

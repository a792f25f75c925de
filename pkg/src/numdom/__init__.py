"""Exact-arithmetic numerical abstract domains.

Convex polyhedra (closed and not necessarily closed), bounded-difference and
octagonal shapes, grids, finite powersets of any of these, and an exact
incremental LP solver.  All arithmetic is on Python integers and
``fractions.Fraction``.

>>> from numdom import Polyhedron, Variable
>>> x, y = Variable(0), Variable(1)
>>> p = Polyhedron.from_constraints([x >= 0, y >= 0, x + y <= 2])
>>> p.maximize(x + y)[0]
Fraction(2, 1)
"""
from .bd_shape import BdShape
from .conversions import (ANY, POLYNOMIAL, SIMPLEX, convert_powerset, embed, extract,
                          to_bds, to_grid, to_oct, to_polyhedron)
from .core import (PLUS_INFINITY, Abandoned, BoundFamily, BudgetContext,
                   DimensionMismatch, DomainError, InvalidArgument, OutOfMemory, Overflow,
                   ParseError, TokenPool, TopologyMismatch, coefficient_mode)
from .grid import Grid
from .io_formats import (MpsProblem, PolyFile, domain_to_poly, parse_mps, parse_poly_file,
                         poly_to_domain, write_poly_file)
from .linear_forms import (Congruence, CongruenceSystem, Constraint, ConstraintSystem,
                           Generator, GeneratorSystem, GridGenerator, GridGeneratorSystem,
                           LinearExpression, Variable, closure_point, congruence, grid_line,
                           grid_point, line, parameter, point, ray)
from .lp import MAXIMIZATION, MINIMIZATION, LpProblem, LpStatus, OptimizationMode
from .oct_shape import OctShape
from .polyhedron import Complexity, PolyConRelation, PolyGenRelation, Polyhedron, Topology
from .powerset import DomainOps, PointsetPowerset, Powerset

__version__ = "0.1.0"

__all__ = [
    "ANY", "Abandoned", "BdShape", "BoundFamily", "BudgetContext", "Complexity",
    "Congruence", "CongruenceSystem", "Constraint", "ConstraintSystem",
    "DimensionMismatch", "DomainError", "DomainOps", "Generator", "GeneratorSystem",
    "Grid", "GridGenerator", "GridGeneratorSystem", "InvalidArgument", "LinearExpression",
    "LpProblem", "LpStatus", "MAXIMIZATION", "MINIMIZATION", "MpsProblem", "OctShape",
    "OptimizationMode", "OutOfMemory", "Overflow", "PLUS_INFINITY", "POLYNOMIAL",
    "ParseError", "PointsetPowerset", "PolyConRelation", "PolyFile", "PolyGenRelation",
    "Polyhedron", "Powerset", "SIMPLEX", "TokenPool", "Topology", "TopologyMismatch",
    "Variable", "closure_point", "coefficient_mode", "congruence", "convert_powerset",
    "domain_to_poly", "embed", "extract", "grid_line", "grid_point", "line", "parameter",
    "parse_mps", "parse_poly_file", "point", "poly_to_domain", "ray", "to_bds", "to_grid",
    "to_oct", "to_polyhedron", "write_poly_file",
]

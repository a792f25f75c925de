"""Exact linear programming by the simplex method over ``Fraction``.

The problem variables are free.  Every constraint ``a.x + b >= 0`` (or
``= 0``) introduces a slack ``s = a.x`` bounded below by ``-b`` (and above,
for equalities).  Feasibility is found by the bounded-variable simplex
(least-index pivoting, so it always terminates), starting from whatever
basis the previous call left.  That is what makes adding constraints one
at a time cheap: the old basis is repaired rather than rebuilt.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional

from .core import (DimensionMismatch, InvalidArgument, TopologyMismatch, budget_checkpoint,
                   check_coefficient, current_coefficient_bits)
from .linear_forms import (Constraint, ConstraintSystem, Generator, GeneratorType,
                           LinearExpression, _as_expr)


class LpStatus(enum.Enum):
    UNFEASIBLE = "unfeasible"
    UNBOUNDED = "unbounded"
    OPTIMIZED = "optimized"


class OptimizationMode(enum.Enum):
    MAXIMIZATION = "maximization"
    MINIMIZATION = "minimization"


MAXIMIZATION = OptimizationMode.MAXIMIZATION
MINIMIZATION = OptimizationMode.MINIMIZATION

_ZERO = Fraction(0)


def _check(f: Fraction) -> None:
    if current_coefficient_bits() is not None:
        check_coefficient(f.numerator)
        check_coefficient(f.denominator)


class LpProblem:
    """Maximize or minimize a linear objective subject to non-strict constraints."""

    def __init__(self, dim: int = 0, constraints: Iterable[Constraint] = (),
                 objective=0, mode: OptimizationMode = MAXIMIZATION):
        if dim < 0:
            raise InvalidArgument("space dimension must be non-negative")
        self._dim = 0
        self._cs: list[Constraint] = []
        # variable j < dim is a problem variable, later ones are slacks
        self._lo: list[Optional[Fraction]] = []
        self._hi: list[Optional[Fraction]] = []
        self._val: list[Fraction] = []
        self._rows: dict[int, dict[int, Fraction]] = {}  # basic -> {nonbasic: coeff}
        self._feasible: Optional[bool] = True
        self.phase1_pivots = 0
        self.phase2_pivots = 0
        self._status: Optional[LpStatus] = None
        self._ray: Optional[tuple] = None
        self.add_space_dimensions_and_embed(dim)
        self._objective = LinearExpression(0)
        self._mode = mode
        self.set_objective_function(objective)
        self.add_constraints(constraints)

    # -- problem data -------------------------------------------------------------

    def space_dimension(self) -> int:
        return self._dim

    def constraints(self) -> ConstraintSystem:
        return ConstraintSystem(self._cs, self._dim)

    @property
    def objective_function(self) -> LinearExpression:
        return self._objective

    @property
    def optimization_mode(self) -> OptimizationMode:
        return self._mode

    def add_space_dimensions_and_embed(self, m: int) -> None:
        """Add ``m`` free variables (problem variables stay a prefix)."""
        if m < 0:
            raise InvalidArgument("negative number of dimensions")
        if m == 0:
            return
        shift = m
        old = self._dim
        remap = lambda j: j if j < old else j + shift  # noqa: E731
        self._rows = {remap(b): {remap(j): a for j, a in row.items()}
                      for b, row in self._rows.items()}
        self._lo = self._lo[:old] + [None] * m + self._lo[old:]
        self._hi = self._hi[:old] + [None] * m + self._hi[old:]
        self._val = self._val[:old] + [_ZERO] * m + self._val[old:]
        self._dim += m
        self._status = None

    def set_objective_function(self, expr) -> None:
        e = _as_expr(expr)
        if e.space_dimension() > self._dim:
            raise DimensionMismatch("objective dimension exceeds the space dimension")
        self._objective = e
        self._status = None

    def set_optimization_mode(self, mode: OptimizationMode) -> None:
        if not isinstance(mode, OptimizationMode):
            raise InvalidArgument(f"not an optimization mode: {mode!r}")
        self._mode = mode
        self._status = None

    def add_constraint(self, c: Constraint) -> None:
        if not isinstance(c, Constraint):
            raise InvalidArgument("expected a Constraint")
        if c.is_strict_inequality():
            raise TopologyMismatch("strict inequalities are not supported")
        if c.space_dimension() > self._dim:
            raise DimensionMismatch("constraint dimension exceeds the space dimension")
        s = len(self._val)
        row: dict[int, Fraction] = {}
        for i, a in enumerate(c.coeffs):
            if not a:
                continue
            if i in self._rows:
                for j, q in self._rows[i].items():
                    row[j] = row.get(j, _ZERO) + a * q
            else:
                row[i] = row.get(i, _ZERO) + a
        row = {j: q for j, q in row.items() if q}
        self._rows[s] = row
        bound = Fraction(-c.inhomogeneous)
        self._lo.append(bound)
        self._hi.append(bound if c.is_equality() else None)
        self._val.append(sum((q * self._val[j] for j, q in row.items()), _ZERO))
        self._cs.append(c)
        if self._feasible is not False:
            self._feasible = None
        self._status = None

    def add_constraints(self, cs: Iterable[Constraint]) -> None:
        for c in cs:
            self.add_constraint(c)

    # -- pivoting ---------------------------------------------------------------------

    def _pivot(self, leave: int, enter: int) -> None:
        budget_checkpoint()
        row = self._rows.pop(leave)
        a = row.pop(enter)
        # enter = (leave - sum row[j] x_j) / a
        new = {j: -q / a for j, q in row.items()}
        new[leave] = 1 / a
        for q in new.values():
            _check(q)
        for b, r in self._rows.items():
            f = r.pop(enter, None)
            if f is None:
                continue
            for j, q in new.items():
                v = r.get(j, _ZERO) + f * q
                _check(v)
                if v:
                    r[j] = v
                else:
                    r.pop(j, None)
        self._rows[enter] = new

    def _update(self, j: int, value: Fraction) -> None:
        """Move nonbasic ``j`` to ``value`` and refresh the basic values."""
        delta = value - self._val[j]
        if not delta:
            return
        self._val[j] = value
        for b, r in self._rows.items():
            q = r.get(j)
            if q:
                self._val[b] += q * delta

    def _pivot_and_update(self, leave: int, enter: int, value: Fraction) -> None:
        """Set basic ``leave`` to ``value`` by moving ``enter``, then swap them."""
        a = self._rows[leave][enter]
        theta = (value - self._val[leave]) / a
        self._update(enter, self._val[enter] + theta)
        self._pivot(leave, enter)

    def _check_feasible(self) -> bool:
        lo, hi, val = self._lo, self._hi, self._val
        while True:
            bad = None
            for b in sorted(self._rows):
                v = val[b]
                if (lo[b] is not None and v < lo[b]) or (hi[b] is not None and v > hi[b]):
                    bad = b
                    break
            if bad is None:
                return True
            row = self._rows[bad]
            raise_it = lo[bad] is not None and val[bad] < lo[bad]
            enter = None
            for j in sorted(row):
                q = row[j]
                up = hi[j] is None or val[j] < hi[j]
                down = lo[j] is None or val[j] > lo[j]
                if (raise_it and ((q > 0 and up) or (q < 0 and down))) or \
                        (not raise_it and ((q < 0 and up) or (q > 0 and down))):
                    enter = j
                    break
            if enter is None:
                return False
            self.phase1_pivots += 1
            self._pivot_and_update(bad, enter, lo[bad] if raise_it else hi[bad])

    # -- queries --------------------------------------------------------------------

    def is_satisfiable(self) -> bool:
        """Whether the constraints have a common solution (result cached)."""
        if self._feasible is None:
            self._feasible = self._check_feasible()
        return self._feasible

    def _objective_row(self, sign: int) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, c in enumerate(self._objective.coeffs):
            if not c:
                continue
            c = sign * Fraction(c)
            if i in self._rows:
                for j, q in self._rows[i].items():
                    out[j] = out.get(j, _ZERO) + c * q
            else:
                out[i] = out.get(i, _ZERO) + c
        return {j: q for j, q in out.items() if q}

    def solve(self) -> LpStatus:
        """Optimize the objective in the current mode."""
        if not self.is_satisfiable():
            self._status = LpStatus.UNFEASIBLE
            return self._status
        sign = 1 if self._mode is MAXIMIZATION else -1
        lo, hi, val = self._lo, self._hi, self._val
        self._ray = None
        while True:
            budget_checkpoint()
            obj = self._objective_row(sign)
            enter = None
            for j in sorted(obj):
                d = obj[j]
                if (d > 0 and (hi[j] is None or val[j] < hi[j])) or \
                        (d < 0 and (lo[j] is None or val[j] > lo[j])):
                    enter = j
                    break
            if enter is None:
                self._status = LpStatus.OPTIMIZED
                return self._status
            delta = 1 if obj[enter] > 0 else -1
            limit = None
            leave = None
            own = hi[enter] if delta > 0 else lo[enter]
            if own is not None:
                limit = abs(own - val[enter])
            for b in sorted(self._rows):
                q = self._rows[b].get(enter)
                if not q:
                    continue
                rate = q * delta
                bnd = hi[b] if rate > 0 else lo[b]
                if bnd is None:
                    continue
                t = (bnd - val[b]) / rate
                if limit is None or t < limit:
                    limit, leave = t, b
            if limit is None:
                self._ray = self._direction(enter, delta)
                self._status = LpStatus.UNBOUNDED
                return self._status
            if leave is None:
                self._update(enter, val[enter] + delta * limit)
            else:
                self.phase2_pivots += 1
                target = hi[leave] if self._rows[leave][enter] * delta > 0 else lo[leave]
                self._pivot_and_update(leave, enter, target)

    def _direction(self, enter: int, delta: int) -> tuple:
        d = [_ZERO] * self._dim
        for i in range(self._dim):
            if i == enter:
                d[i] = Fraction(delta)
            elif i in self._rows:
                d[i] = self._rows[i].get(enter, _ZERO) * delta
        return tuple(d)

    @property
    def status(self) -> Optional[LpStatus]:
        return self._status

    def _point(self) -> Generator:
        vals = [self._val[i] for i in range(self._dim)]
        den = 1
        for v in vals:
            den = lcm(den, v.denominator)
        return Generator(GeneratorType.POINT, [int(v * den) for v in vals], den)

    def feasible_point(self) -> Generator:
        if not self.is_satisfiable():
            raise InvalidArgument("the problem is unsatisfiable")
        return self._point()

    def optimizing_point(self) -> Generator:
        if self._status is not LpStatus.OPTIMIZED:
            raise InvalidArgument("no optimizing point: last solve did not optimize")
        return self._point()

    def optimal_value(self) -> Fraction:
        if self._status is not LpStatus.OPTIMIZED:
            raise InvalidArgument("no optimal value: last solve did not optimize")
        return self._objective.evaluate([self._val[i] for i in range(self._dim)])

    def unbounded_ray(self) -> tuple:
        """Feasible direction along which the objective improves without bound."""
        if self._status is not LpStatus.UNBOUNDED:
            raise InvalidArgument("last solve was not unbounded")
        return self._ray

    def evaluate_objective_function(self, g: Generator) -> tuple[int, int]:
        """Objective value at point ``g`` as ``(numerator, denominator)``."""
        if not g.is_point():
            raise InvalidArgument("can only evaluate at a point")
        if g.space_dimension() > self._dim:
            raise DimensionMismatch("generator dimension exceeds the space dimension")
        v = self._objective.evaluate(g.rational_coords(self._dim))
        return v.numerator, v.denominator

    def __repr__(self):
        return (f"LpProblem(dim={self._dim}, constraints={len(self._cs)}, "
                f"{self._mode.value} {self._objective})")

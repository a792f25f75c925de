"""Bounded-difference shapes over a difference-bound matrix.

Entry ``m[i][j]`` bounds ``v_j - v_i`` from above, where ``v_0`` is a
constant zero; so ``m[0][j]`` is an upper bound on ``v_j`` and ``m[i][0]``
an upper bound on ``-v_i``.  Shortest-path closure is applied lazily and
never has to be requested by the user.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .core import (PLUS_INFINITY, BoundFamily, DimensionMismatch, InvalidArgument,
                   TokenPool, budget_checkpoint, guarded)
from .linear_forms import Constraint, ConstraintSystem, LinearExpression, Variable, _as_expr

INF = PLUS_INFINITY


def _le(a, b) -> bool:
    if b is INF:
        return True
    if a is INF:
        return False
    return a <= b


def _min(a, b):
    return a if _le(a, b) else b


def _max(a, b):
    return b if _le(a, b) else a


def difference_form(c: Constraint):
    """``[(i, j, d), ...]`` meaning ``v_j - v_i <= d`` (index 0 is the zero
    variable), or None if ``c`` is not a bounded-difference constraint."""
    nz = [(k, a) for k, a in enumerate(c.coeffs) if a]
    b = Fraction(c.inhomogeneous)
    out = []
    if not nz:
        return []
    if len(nz) == 1:
        (k, a), = nz
        # a*v + b >= 0
        if a > 0:
            out.append((k + 1, 0, b / a))
        else:
            out.append((0, k + 1, b / -a))
    elif len(nz) == 2 and nz[0][1] == -nz[1][1]:
        (k, a), (l, _) = nz
        # a*(v_k - v_l) + b >= 0
        if a > 0:
            out.append((k + 1, l + 1, b / a))
        else:
            out.append((l + 1, k + 1, b / -a))
    else:
        return None
    if c.is_equality():
        i, j, d = out[0]
        out.append((j, i, -d))
    return out


class BdShape:
    """A bounded-difference shape of fixed dimension and bound family."""

    def __init__(self, dim: int = 0, kind: str = "universe", family="rational"):
        if dim < 0:
            raise InvalidArgument("space dimension must be non-negative")
        self._n = dim
        self._family = BoundFamily.of(family)
        zero = self._family.up(0)
        self._m = [[zero if i == j else INF for j in range(dim + 1)] for i in range(dim + 1)]
        self._closed = True
        self._empty = False
        if kind == "empty":
            self._empty = True
        elif kind != "universe":
            raise InvalidArgument(f"unknown shape kind {kind!r}")

    @classmethod
    def universe(cls, dim: int, family="rational") -> "BdShape":
        return cls(dim, "universe", family)

    @classmethod
    def empty(cls, dim: int, family="rational") -> "BdShape":
        return cls(dim, "empty", family)

    @classmethod
    def from_constraints(cls, cs: Iterable[Constraint], dim: Optional[int] = None,
                         family="rational") -> "BdShape":
        if dim is None and isinstance(cs, ConstraintSystem):
            dim = cs.space_dim
        cs = list(cs)
        if dim is None:
            dim = max((c.space_dimension() for c in cs), default=0)
        s = cls(dim, "universe", family)
        s.add_constraints(cs)
        return s

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence], family="rational") -> "BdShape":
        n = len(m) - 1
        s = cls(n, "universe", family)
        s._m = [[v if v is INF else s._family.up(v) for v in row] for row in m]
        s._closed = False
        return s

    def copy(self) -> "BdShape":
        s = object.__new__(type(self))
        s._n, s._family, s._closed, s._empty = self._n, self._family, self._closed, self._empty
        s._m = [row[:] for row in self._m]
        return s

    __copy__ = copy

    def space_dimension(self) -> int:
        return self._n

    @property
    def family(self) -> BoundFamily:
        return self._family

    # -- closure --------------------------------------------------------------------

    def _close(self) -> None:
        if self._closed or self._empty:
            return
        m = [row[:] for row in self._m]
        add = self._family.add
        size = self._n + 1
        for k in range(size):
            budget_checkpoint()
            mk = m[k]
            for i in range(size):
                mik = m[i][k]
                if mik is INF:
                    continue
                mi = m[i]
                for j in range(size):
                    mkj = mk[j]
                    if mkj is INF:
                        continue
                    v = add(mik, mkj)
                    if _le(v, mi[j]) and v != mi[j]:
                        mi[j] = v
        for i in range(size):
            if m[i][i] < 0:
                self._empty = True
                self._closed = True
                return
            m[i][i] = self._family.up(0)
        self._m = m
        self._closed = True

    def shortest_path_closure_assign(self) -> "BdShape":
        self._close()
        return self

    def dbm(self) -> list[list]:
        """Closed matrix (a copy); None if the shape is empty."""
        self._close()
        if self._empty:
            return None
        return [row[:] for row in self._m]

    def raw_dbm(self) -> list[list]:
        return [row[:] for row in self._m]

    def is_closed(self) -> bool:
        return self._closed

    # -- predicates -------------------------------------------------------------------

    def is_empty(self) -> bool:
        self._close()
        return self._empty

    def is_universe(self) -> bool:
        if self.is_empty():
            return False
        return all(self._m[i][j] is INF for i in range(self._n + 1)
                   for j in range(self._n + 1) if i != j)

    def is_bounded(self) -> bool:
        if self.is_empty():
            return True
        return all(self._m[0][j] is not INF and self._m[j][0] is not INF
                   for j in range(1, self._n + 1))

    def _check_dim(self, other: "BdShape") -> None:
        if not isinstance(other, BdShape):
            raise InvalidArgument(f"expected a BdShape, got {type(other).__name__}")
        if other._n != self._n:
            raise DimensionMismatch(f"space dimensions {self._n} and {other._n} differ")

    def contains(self, other: "BdShape") -> bool:
        self._check_dim(other)
        if other.is_empty():
            return True
        if self.is_empty():
            return False
        return all(_le(other._m[i][j], self._m[i][j])
                   for i in range(self._n + 1) for j in range(self._n + 1))

    def strictly_contains(self, other: "BdShape") -> bool:
        return self.contains(other) and not other.contains(self)

    def __eq__(self, other):
        if not isinstance(other, BdShape):
            return NotImplemented
        if other._n != self._n:
            return False
        return self.contains(other) and other.contains(self)

    __hash__ = None

    def __le__(self, other):
        return other.contains(self)

    def __ge__(self, other):
        return self.contains(other)

    def upper_bound(self, var: Variable):
        """Least upper bound of ``var`` (or +inf)."""
        self._close()
        return self._m[0][var.index + 1]

    def lower_bound(self, var: Variable):
        """Greatest lower bound of ``var``, or None if unbounded below."""
        self._close()
        v = self._m[var.index + 1][0]
        return None if v is INF else -v

    # -- constraints -------------------------------------------------------------------

    def _set_entry(self, m, i: int, j: int, d) -> bool:
        d = self._family.up(d)
        if _le(d, m[i][j]) and d != m[i][j]:
            m[i][j] = d
            return True
        return False

    @guarded
    def add_constraint(self, c: Constraint) -> "BdShape":
        return self.add_constraints([c])

    @guarded
    def add_constraints(self, cs: Iterable[Constraint]) -> "BdShape":
        """Add bounded-difference constraints; anything else is rejected."""
        entries = []
        inconsistent = False
        for c in cs:
            if c.space_dimension() > self._n:
                raise DimensionMismatch("constraint dimension exceeds the space dimension")
            if c.is_strict_inequality():
                raise InvalidArgument(f"strict constraint {c} is not a bounded difference")
            form = difference_form(c)
            if form is None:
                raise InvalidArgument(f"{c} is not a bounded-difference constraint")
            if not form and c.is_inconsistent():
                inconsistent = True
            entries += form
        if self._empty:
            return self
        if inconsistent:
            self._empty = True
            self._closed = True
            return self
        m = [row[:] for row in self._m]
        changed = False
        for i, j, d in entries:
            changed |= self._set_entry(m, i, j, d)
        if changed:
            self._m = m
            self._closed = False
        return self

    def refine_with_constraint(self, c: Constraint) -> "BdShape":
        return self.refine_with_constraints([c])

    @guarded
    def refine_with_constraints(self, cs: Iterable[Constraint]) -> "BdShape":
        """Add any constraints, keeping the best bounded-difference approximation."""
        cs = [c.closure() for c in cs]
        exact = [c for c in cs if difference_form(c) is not None]
        other = [c for c in cs if difference_form(c) is None]
        for c in other:
            if c.space_dimension() > self._n:
                raise DimensionMismatch("constraint dimension exceeds the space dimension")
        s = self.copy().add_constraints(exact)
        if other and not s.is_empty():
            p = s.to_polyhedron().add_constraints(other)
            s = BdShape.from_polyhedron(p, self._family)
        self._commit(s)
        return self

    def _commit(self, s: "BdShape") -> None:
        self._n, self._m, self._closed, self._empty = s._n, s._m, s._closed, s._empty

    def constraints(self) -> ConstraintSystem:
        """All finite bounds of the closed matrix."""
        out = ConstraintSystem([], self._n)
        if self.is_empty():
            out.insert(Constraint(LinearExpression(-1)))
            return out
        m = self._m
        size = self._n + 1
        for i in range(size):
            for j in range(size):
                if i == j or m[i][j] is INF:
                    continue
                if m[j][i] is not INF and m[j][i] == -m[i][j]:
                    if i < j:
                        out.insert(self._diff(i, j) == m[i][j])
                    continue
                out.insert(self._diff(i, j) <= m[i][j])
        return out

    @staticmethod
    def _diff(i: int, j: int) -> LinearExpression:
        e = LinearExpression(0)
        if j:
            e = e + Variable(j - 1)
        if i:
            e = e - Variable(i - 1)
        return e

    def minimized_constraints(self) -> ConstraintSystem:
        if self.is_empty():
            return self.constraints()
        return self.to_polyhedron().minimized_constraints()

    # -- lattice --------------------------------------------------------------------------

    @guarded
    def intersection_assign(self, other: "BdShape") -> "BdShape":
        self._check_dim(other)
        if self._empty or other._empty:
            self._empty, self._closed = True, True
            return self
        self._m = [[_min(a, b) for a, b in zip(r, s)] for r, s in zip(self._m, other._m)]
        self._closed = False
        return self

    meet_assign = intersection_assign

    @guarded
    def upper_bound_assign(self, other: "BdShape") -> "BdShape":
        self._check_dim(other)
        if other.is_empty():
            return self
        if self.is_empty():
            self._commit(other.copy())
            return self
        self._m = [[_max(a, b) for a, b in zip(r, s)] for r, s in zip(self._m, other._m)]
        self._closed = True
        return self

    join_assign = bds_hull_assign = upper_bound_assign

    def time_elapse_assign(self, other: "BdShape") -> "BdShape":
        self._check_dim(other)
        p = self.to_polyhedron().time_elapse_assign(other.to_polyhedron())
        self._commit(BdShape.from_polyhedron(p, self._family))
        return self

    # -- affine maps ------------------------------------------------------------------------

    def _forget(self, m, v: int) -> None:
        size = self._n + 1
        for k in range(size):
            if k != v:
                m[v][k] = INF
                m[k][v] = INF

    @guarded
    def affine_image(self, var: Variable, expr, denominator=1) -> "BdShape":
        """``var := expr/denominator``, exact on shifts and copies."""
        e, den = self._affine_args(var, expr, denominator)
        if self.is_empty():
            return self
        v = var.index + 1
        nz = [(k, a) for k, a in enumerate(e.coeffs) if a]
        b = Fraction(e.inhomogeneous) / den
        if len(nz) == 1 and nz[0][1] == den and nz[0][0] == var.index:
            m = [row[:] for row in self._m]
            f = self._family
            for k in range(self._n + 1):
                if k == v:
                    continue
                if m[k][v] is not INF:
                    m[k][v] = f.up(m[k][v] + b)
                if m[v][k] is not INF:
                    m[v][k] = f.up(m[v][k] - b)
            self._m = m
            return self
        if not nz or (len(nz) == 1 and nz[0][1] == den):
            m = [row[:] for row in self._m]
            self._forget(m, v)
            if nz:
                w = nz[0][0] + 1
                self._set_entry(m, w, v, b)
                self._set_entry(m, v, w, -b)
            else:
                self._set_entry(m, 0, v, b)
                self._set_entry(m, v, 0, -b)
            self._m = m
            self._closed = False
            return self
        p = self.to_polyhedron().affine_image(var, e, den)
        self._commit(BdShape.from_polyhedron(p, self._family))
        return self

    @guarded
    def affine_preimage(self, var: Variable, expr, denominator=1) -> "BdShape":
        e, den = self._affine_args(var, expr, denominator)
        if self.is_empty():
            return self
        nz = [(k, a) for k, a in enumerate(e.coeffs) if a]
        if len(nz) == 1 and nz[0] == (var.index, den):
            return self.affine_image(var, var - Fraction(e.inhomogeneous) / den)
        p = self.to_polyhedron().affine_preimage(var, e, den)
        self._commit(BdShape.from_polyhedron(p, self._family))
        return self

    def _affine_args(self, var, expr, denominator):
        if not isinstance(var, Variable):
            raise InvalidArgument("expected a Variable")
        if var.index >= self._n:
            raise DimensionMismatch(f"variable {var} outside a {self._n}-dimensional space")
        e = _as_expr(expr)
        if e.space_dimension() > self._n:
            raise DimensionMismatch("expression dimension exceeds the space dimension")
        if denominator == 0:
            raise InvalidArgument("zero denominator")
        return e, denominator

    def unconstrain(self, *variables: Variable) -> "BdShape":
        if any(v.index >= self._n for v in variables):
            raise DimensionMismatch("variable outside the space dimension")
        if self.is_empty():
            return self
        m = [row[:] for row in self._m]
        for v in variables:
            self._forget(m, v.index + 1)
        self._m = m
        return self

    # -- widening ---------------------------------------------------------------------------

    def _widened(self, other: "BdShape") -> "BdShape":
        self._close()
        if self._empty:
            return other.copy()
        if other._empty:
            return self.copy()
        r = self.copy()
        r._m = [[p if _le(q, p) else INF for p, q in zip(pr, qr)]
                for pr, qr in zip(self._m, other._m)]
        r._closed = False
        return r

    def _finish(self, r: "BdShape", other: "BdShape", tokens: Optional[TokenPool]) -> "BdShape":
        if tokens is not None and r != other and tokens.consume():
            r = other.copy()
        self._commit(r)
        return self

    @guarded
    def widening_bds_assign(self, other: "BdShape", tokens: Optional[TokenPool] = None) -> "BdShape":
        """Widening; self is the previous iterate, other the next (other contains self)."""
        self._check_dim(other)
        return self._finish(self._widened(other), other, tokens)

    widening_assign = widening_bds_assign

    @guarded
    def limited_bds_extrapolation_assign(self, other: "BdShape", cs: Iterable[Constraint],
                                         tokens: Optional[TokenPool] = None) -> "BdShape":
        """Widening, then re-add the constraints of cs satisfied by both arguments."""
        self._check_dim(other)
        r = self._widened(other)
        keep = []
        for c in cs:
            form = difference_form(c)
            if form is None:
                continue
            if all(s.is_empty() or _le(s._m[i][j], d)
                   for s in (self, other) for i, j, d in form):
                keep.append(c)
        r.add_constraints(keep)
        return self._finish(r, other, tokens)

    # -- dimensions ----------------------------------------------------------------------------

    def add_space_dimensions_and_embed(self, k: int) -> "BdShape":
        if k < 0:
            raise InvalidArgument("negative number of dimensions")
        zero = self._family.up(0)
        n = self._n + k
        m = [row + [INF] * k for row in self._m]
        for i in range(k):
            m.append([INF] * (n + 1))
            m[-1][len(m) - 1] = zero
        self._n, self._m = n, m
        return self

    def add_space_dimensions_and_project(self, k: int) -> "BdShape":
        old = self._n
        self.add_space_dimensions_and_embed(k)
        zero = self._family.up(0)
        for v in range(old + 1, old + k + 1):
            self._m[0][v] = zero
            self._m[v][0] = zero
        if k:
            self._closed = False
        return self

    def _select(self, keep: Sequence[int]) -> None:
        self._close()
        idx = [0] + [k + 1 for k in keep]
        self._m = [[self._m[i][j] for j in idx] for i in idx]
        self._n = len(keep)

    def remove_space_dimensions(self, variables: Iterable[Variable]) -> "BdShape":
        drop = {v.index for v in variables}
        if any(i >= self._n for i in drop):
            raise DimensionMismatch("variable outside the space dimension")
        self._select([i for i in range(self._n) if i not in drop])
        return self

    def remove_higher_space_dimensions(self, new_dim: int) -> "BdShape":
        if new_dim > self._n or new_dim < 0:
            raise DimensionMismatch("cannot grow the space with remove_higher_space_dimensions")
        self._select(list(range(new_dim)))
        return self

    def map_space_dimensions(self, pfunc: Mapping[int, int]) -> "BdShape":
        pf = {(k.index if isinstance(k, Variable) else int(k)):
              (v.index if isinstance(v, Variable) else int(v)) for k, v in pfunc.items()}
        if any(k >= self._n or k < 0 for k in pf):
            raise DimensionMismatch("map domain outside the space dimension")
        codomain = sorted(pf.values())
        if codomain != list(range(len(codomain))):
            raise InvalidArgument("map must be injective onto an initial segment")
        keep = [0] * len(codomain)
        for k, v in pf.items():
            keep[v] = k
        self._select(keep)
        return self

    def concatenate_assign(self, other: "BdShape") -> "BdShape":
        n, k = self._n, other._n
        empty = self.is_empty() or other.is_empty()
        self.add_space_dimensions_and_embed(k)
        if empty:
            self._empty = True
            return self
        for i in range(k + 1):
            for j in range(k + 1):
                if i == 0 and j == 0:
                    continue
                a = 0 if i == 0 else n + i
                b = 0 if j == 0 else n + j
                self._m[a][b] = _min(self._m[a][b], other._m[i][j])
        self._closed = False
        return self

    # -- conversions ----------------------------------------------------------------------------

    def to_polyhedron(self):
        from .polyhedron import Polyhedron
        if self.is_empty():
            return Polyhedron.empty(self._n)
        return Polyhedron.from_constraints(self.constraints(), dim=self._n)

    @classmethod
    def from_polyhedron(cls, p, family="rational") -> "BdShape":
        """Smallest shape containing polyhedron ``p`` (bounds by optimization)."""
        n = p.space_dimension()
        if p.is_empty():
            return cls(n, "empty", family)
        s = cls(n, "universe", family)
        m = s._m
        for i in range(n + 1):
            for j in range(n + 1):
                if i == j:
                    continue
                hi = p.maximize(cls._diff(i, j))[0]
                if hi is not None:
                    m[i][j] = s._family.up(hi)
        s._closed = s._family.integral is False
        return s

    def __repr__(self):
        if self.is_empty():
            return f"<BdShape dim={self._n}: false>"
        body = ", ".join(str(c) for c in self.constraints()) or "true"
        return f"<BdShape dim={self._n}: {body}>"

    def ascii_dump(self) -> str:
        lines = [f"space_dim {self._n}", f"family {self._family.name}",
                 f"status closed={int(self._closed)} empty={int(self._empty)}"]
        for row in self._m:
            lines.append(" ".join("+inf" if v is INF else str(v) for v in row))
        return "\n".join(lines)

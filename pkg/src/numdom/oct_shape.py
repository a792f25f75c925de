"""Octagonal shapes over a coherent 2n x 2n difference-bound matrix.

Each variable ``v_k`` has two signed forms: index ``2k`` stands for ``+v_k``
and ``2k + 1`` for ``-v_k``; ``bar(i) = i ^ 1`` flips the sign.  Entry
``m[i][j]`` bounds ``w_j - w_i`` where ``w`` are the signed forms, so

* ``m[2i+1][2j]`` bounds ``v_i + v_j``,
* ``m[2i][2j+1]`` bounds ``-v_i - v_j``,
* ``m[2i+1][2i]`` bounds ``2 v_i`` (unary bounds are stored doubled).

Coherence ``m[i][j] == m[bar(j)][bar(i)]`` holds for every entry.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .bd_shape import INF, BdShape, _le, _max, _min
from .core import (BoundFamily, DimensionMismatch, InvalidArgument, TokenPool,
                   budget_checkpoint, guarded)
from .linear_forms import Constraint, ConstraintSystem, LinearExpression, Variable, _as_expr


def bar(i: int) -> int:
    return i ^ 1


def signed(t: int) -> LinearExpression:
    v = Variable(t // 2)
    return LinearExpression(0) + (v if t % 2 == 0 else -v)


def octagonal_form(c: Constraint):
    """``[(i, j, d), ...]`` meaning ``w_j - w_i <= d``, or None if ``c`` is
    not octagonal.  Unary constraints give ``i == bar(j)`` with doubled ``d``."""
    nz = [(k, a) for k, a in enumerate(c.coeffs) if a]
    if not nz:
        return []
    b = Fraction(c.inhomogeneous)
    if len(nz) > 2 or (len(nz) == 2 and abs(nz[0][1]) != abs(nz[1][1])):
        return None
    mag = abs(nz[0][1])
    # c reads  sum s_k v_k + b/mag >= 0, i.e.  sum (-s_k) v_k <= b/mag
    d = b / mag
    terms = [(k, -1 if a > 0 else 1) for k, a in nz]

    def entry(terms, d):
        if len(terms) == 1:
            (k, s), = terms
            j = 2 * k if s > 0 else 2 * k + 1
            return (bar(j), j, 2 * d)
        (k, sk), (l, sl) = terms
        j = 2 * l if sl > 0 else 2 * l + 1
        i = 2 * k + 1 if sk > 0 else 2 * k
        return (i, j, d)

    out = [entry(terms, d)]
    if c.is_equality():
        out.append(entry([(k, -s) for k, s in terms], -d))
    return out


def strong_closure(m: list[list], family: BoundFamily) -> Optional[list[list]]:
    """Shortest paths followed by one strengthening pass; None if empty."""
    m = [row[:] for row in m]
    size = len(m)
    add = family.add
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
            return None
    _strengthen(m, family)
    zero = family.up(0)
    for i in range(size):
        m[i][i] = zero
    return m


def _strengthen(m, family: BoundFamily) -> None:
    size = len(m)
    for i in range(size):
        hi = m[i][bar(i)]
        if hi is INF:
            continue
        mi = m[i]
        for j in range(size):
            hj = m[bar(j)][j]
            if hj is INF:
                continue
            v = family.half_up(family.add(hi, hj))
            if _le(v, mi[j]) and v != mi[j]:
                mi[j] = v


def naive_strong_closure(m: list[list], family: BoundFamily) -> Optional[list[list]]:
    """Strengthening interleaved in every shortest-path step (reference version)."""
    m = [row[:] for row in m]
    size = len(m)
    add = family.add
    for k in range(size):
        for i in range(size):
            for j in range(size):
                if m[i][k] is not INF and m[k][j] is not INF:
                    v = add(m[i][k], m[k][j])
                    if _le(v, m[i][j]):
                        m[i][j] = v
        _strengthen(m, family)
        if any(m[i][i] is not INF and m[i][i] < 0 for i in range(size)):
            return None
    for i in range(size):
        if m[i][i] < 0:
            return None
        m[i][i] = family.up(0)
    return m


class OctShape:
    """An octagonal shape of fixed dimension and bound family."""

    def __init__(self, dim: int = 0, kind: str = "universe", family="rational"):
        if dim < 0:
            raise InvalidArgument("space dimension must be non-negative")
        self._n = dim
        self._family = BoundFamily.of(family)
        self._m = self._top(dim)
        self._closed = True
        self._empty = kind == "empty"
        if kind not in ("universe", "empty"):
            raise InvalidArgument(f"unknown shape kind {kind!r}")

    def _top(self, n: int) -> list[list]:
        zero = self._family.up(0)
        return [[zero if i == j else INF for j in range(2 * n)] for i in range(2 * n)]

    @classmethod
    def universe(cls, dim: int, family="rational") -> "OctShape":
        return cls(dim, "universe", family)

    @classmethod
    def empty(cls, dim: int, family="rational") -> "OctShape":
        return cls(dim, "empty", family)

    @classmethod
    def from_constraints(cls, cs: Iterable[Constraint], dim: Optional[int] = None,
                         family="rational") -> "OctShape":
        if dim is None and isinstance(cs, ConstraintSystem):
            dim = cs.space_dim
        cs = list(cs)
        if dim is None:
            dim = max((c.space_dimension() for c in cs), default=0)
        s = cls(dim, "universe", family)
        s.add_constraints(cs)
        return s

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence], family="rational") -> "OctShape":
        """Build from a matrix; it is made coherent by taking the tighter entry."""
        if len(m) % 2:
            raise InvalidArgument("octagon matrices have even size")
        s = cls(len(m) // 2, "universe", family)
        f = s._family
        mm = [[v if v is INF else f.up(v) for v in row] for row in m]
        for i in range(len(mm)):
            for j in range(len(mm)):
                mm[i][j] = _min(mm[i][j], mm[bar(j)][bar(i)])
        s._m = mm
        s._closed = False
        return s

    @classmethod
    def from_bd_shape(cls, bd: BdShape) -> "OctShape":
        n = bd.space_dimension()
        s = cls(n, "universe", bd.family)
        if bd.is_empty():
            s._empty = True
            return s
        m = bd.dbm()
        for i in range(n + 1):
            for j in range(n + 1):
                if i == j or m[i][j] is INF:
                    continue
                if i == 0:
                    s._put(s._m, 2 * (j - 1) + 1, 2 * (j - 1), 2 * m[i][j])
                elif j == 0:
                    s._put(s._m, 2 * (i - 1), 2 * (i - 1) + 1, 2 * m[i][j])
                else:
                    s._put(s._m, 2 * (i - 1), 2 * (j - 1), m[i][j])
        s._closed = False
        return s

    def to_bd_shape(self) -> BdShape:
        """Bounded differences implied by the shape (exact projection)."""
        bd = BdShape(self._n, "universe", self._family)
        if self.is_empty():
            return BdShape(self._n, "empty", self._family)
        m = self._m
        bm = bd._m
        f = self._family
        for k in range(self._n):
            if m[2 * k + 1][2 * k] is not INF:
                bm[0][k + 1] = f.half_up(m[2 * k + 1][2 * k])
            if m[2 * k][2 * k + 1] is not INF:
                bm[k + 1][0] = f.half_up(m[2 * k][2 * k + 1])
            for l in range(self._n):
                if l != k:
                    bm[k + 1][l + 1] = m[2 * k][2 * l]
        bd._closed = False
        return bd

    def copy(self) -> "OctShape":
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

    def _commit(self, s: "OctShape") -> None:
        self._n, self._m, self._closed, self._empty = s._n, s._m, s._closed, s._empty

    # -- closure -----------------------------------------------------------------------

    def _close(self) -> None:
        if self._closed or self._empty:
            return
        m = strong_closure(self._m, self._family)
        if m is None:
            self._empty = True
        else:
            self._m = m
        self._closed = True

    def strong_closure_assign(self) -> "OctShape":
        self._close()
        return self

    def matrix(self) -> Optional[list[list]]:
        """Strongly closed matrix (a copy); None if empty."""
        self._close()
        return None if self._empty else [row[:] for row in self._m]

    def raw_matrix(self) -> list[list]:
        return [row[:] for row in self._m]

    def is_coherent(self) -> bool:
        m = self._m
        return all(m[i][j] == m[bar(j)][bar(i)] for i in range(len(m)) for j in range(len(m)))

    # -- predicates ------------------------------------------------------------------------

    def is_empty(self) -> bool:
        self._close()
        return self._empty

    def is_universe(self) -> bool:
        if self.is_empty():
            return False
        return all(self._m[i][j] is INF for i in range(2 * self._n)
                   for j in range(2 * self._n) if i != j)

    def _check_dim(self, other: "OctShape") -> None:
        if not isinstance(other, OctShape):
            raise InvalidArgument(f"expected an OctShape, got {type(other).__name__}")
        if other._n != self._n:
            raise DimensionMismatch(f"space dimensions {self._n} and {other._n} differ")

    def contains(self, other: "OctShape") -> bool:
        self._check_dim(other)
        if other.is_empty():
            return True
        if self.is_empty():
            return False
        return all(_le(a, b) for ra, rb in zip(other._m, self._m) for a, b in zip(ra, rb))

    def strictly_contains(self, other: "OctShape") -> bool:
        return self.contains(other) and not other.contains(self)

    def __eq__(self, other):
        if not isinstance(other, OctShape):
            return NotImplemented
        if other._n != self._n:
            return False
        return self.contains(other) and other.contains(self)

    __hash__ = None

    def __le__(self, other):
        return other.contains(self)

    def __ge__(self, other):
        return self.contains(other)

    def bound(self, expr) -> object:
        """Tightest upper bound of an octagonal expression (or +inf)."""
        e = _as_expr(expr)
        form = octagonal_form(e <= 0)
        if form is None or not form:
            raise InvalidArgument(f"{e} is not an octagonal expression")
        self._close()
        i, j, _ = form[0]
        v = self._m[i][j]
        if v is INF or i != bar(j):
            return v
        return Fraction(v) / 2

    # -- constraints ---------------------------------------------------------------------------

    def _put(self, m, i: int, j: int, d) -> bool:
        d = self._family.up(d)
        if _le(d, m[i][j]) and d != m[i][j]:
            m[i][j] = d
            m[bar(j)][bar(i)] = d
            return True
        return False

    @guarded
    def add_constraint(self, c: Constraint) -> "OctShape":
        return self.add_constraints([c])

    @guarded
    def add_constraints(self, cs: Iterable[Constraint]) -> "OctShape":
        entries = []
        inconsistent = False
        for c in cs:
            if c.space_dimension() > self._n:
                raise DimensionMismatch("constraint dimension exceeds the space dimension")
            if c.is_strict_inequality():
                raise InvalidArgument(f"strict constraint {c} is not octagonal")
            form = octagonal_form(c)
            if form is None:
                raise InvalidArgument(f"{c} is not an octagonal constraint")
            if not form and c.is_inconsistent():
                inconsistent = True
            entries += form
        if self._empty:
            return self
        if inconsistent:
            self._empty, self._closed = True, True
            return self
        m = [row[:] for row in self._m]
        changed = False
        for i, j, d in entries:
            changed |= self._put(m, i, j, d)
        if changed:
            self._m = m
            self._closed = False
        return self

    def refine_with_constraint(self, c: Constraint) -> "OctShape":
        return self.refine_with_constraints([c])

    @guarded
    def refine_with_constraints(self, cs: Iterable[Constraint]) -> "OctShape":
        """Add any constraints, keeping the best octagonal approximation."""
        cs = [c.closure() for c in cs]
        exact = [c for c in cs if octagonal_form(c) is not None]
        other = [c for c in cs if octagonal_form(c) is None]
        for c in other:
            if c.space_dimension() > self._n:
                raise DimensionMismatch("constraint dimension exceeds the space dimension")
        s = self.copy().add_constraints(exact)
        if other and not s.is_empty():
            s = OctShape.from_polyhedron(s.to_polyhedron().add_constraints(other), self._family)
        self._commit(s)
        return self

    def constraints(self) -> ConstraintSystem:
        out = ConstraintSystem([], self._n)
        if self.is_empty():
            out.insert(Constraint(LinearExpression(-1)))
            return out
        m = self._m
        size = 2 * self._n
        seen = set()
        for i in range(size):
            for j in range(size):
                d = m[i][j]
                if i == j or d is INF:
                    continue
                key = min((i, j), (bar(j), bar(i)))
                if key in seen:
                    continue
                seen.add(key)
                e = signed(j) - signed(i)
                if i == bar(j):
                    d = Fraction(d) / 2
                    e = signed(j)
                    opp = m[j][i]
                    if opp is not INF and Fraction(opp) / 2 == -d:
                        if j % 2 == 0:
                            out.insert(e == d)
                        continue
                elif m[j][i] is not INF and m[j][i] == -d:
                    okey = min((j, i), (bar(i), bar(j)))
                    if okey < key:
                        continue
                    out.insert(e == d)
                    seen.add(okey)
                    continue
                out.insert(e <= d)
        return out

    def _raw_constraints(self) -> list[Constraint]:
        m = self._m
        out = []
        for i in range(len(m)):
            for j in range(len(m)):
                if i != j and m[i][j] is not INF:
                    out.append(signed(j) - signed(i) <= m[i][j])
        return out

    def minimized_constraints(self) -> ConstraintSystem:
        if self.is_empty():
            return self.constraints()
        return self.to_polyhedron().minimized_constraints()

    # -- lattice -----------------------------------------------------------------------------------

    @guarded
    def intersection_assign(self, other: "OctShape") -> "OctShape":
        self._check_dim(other)
        if self._empty or other._empty:
            self._empty, self._closed = True, True
            return self
        self._m = [[_min(a, b) for a, b in zip(r, s)] for r, s in zip(self._m, other._m)]
        self._closed = False
        return self

    meet_assign = intersection_assign

    @guarded
    def upper_bound_assign(self, other: "OctShape") -> "OctShape":
        self._check_dim(other)
        if other.is_empty():
            return self
        if self.is_empty():
            self._commit(other.copy())
            return self
        self._m = [[_max(a, b) for a, b in zip(r, s)] for r, s in zip(self._m, other._m)]
        self._closed = True
        return self

    join_assign = oct_hull_assign = upper_bound_assign

    # -- affine maps ----------------------------------------------------------------------------------

    def _forget(self, m, k: int) -> None:
        for t in (2 * k, 2 * k + 1):
            for u in range(2 * self._n):
                if u != t:
                    m[t][u] = INF
                    m[u][t] = INF

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

    @guarded
    def affine_image(self, var: Variable, expr, denominator=1) -> "OctShape":
        """``var := expr/denominator``; exact for ``+-w + b``, best approximation otherwise."""
        e, den = self._affine_args(var, expr, denominator)
        if self.is_empty():
            return self
        k = var.index
        nz = [(t, a) for t, a in enumerate(e.coeffs) if a]
        b = Fraction(e.inhomogeneous) / den
        if len(nz) == 1 and nz[0][0] == k and nz[0][1] == den:
            m = [row[:] for row in self._m]
            f = self._family
            p, q = 2 * k, 2 * k + 1
            for u in range(2 * self._n):
                # w_p grows by b, w_q shrinks by b
                for t, delta in ((p, b), (q, -b)):
                    if u in (p, q):
                        continue
                    if m[u][t] is not INF:
                        m[u][t] = f.up(m[u][t] + delta)
                    if m[t][u] is not INF:
                        m[t][u] = f.up(m[t][u] - delta)
            if m[q][p] is not INF:
                m[q][p] = f.up(m[q][p] + 2 * b)
            if m[p][q] is not INF:
                m[p][q] = f.up(m[p][q] - 2 * b)
            self._m = m
            return self
        if len(nz) == 0 or (len(nz) == 1 and abs(nz[0][1]) == abs(den) and nz[0][0] != k):
            m = [row[:] for row in self._m]
            self._forget(m, k)
            v = Variable(k)
            if nz:
                w = Variable(nz[0][0])
                s = Fraction(nz[0][1], den)
                rel = (v - s * w == b)
            else:
                rel = (v == b)
            for i, j, d in octagonal_form(rel):
                self._put(m, i, j, d)
            self._m = m
            self._closed = False
            return self
        p = self.to_polyhedron().affine_image(var, e, den)
        self._commit(OctShape.from_polyhedron(p, self._family))
        return self

    @guarded
    def affine_preimage(self, var: Variable, expr, denominator=1) -> "OctShape":
        e, den = self._affine_args(var, expr, denominator)
        if self.is_empty():
            return self
        nz = [(t, a) for t, a in enumerate(e.coeffs) if a]
        if len(nz) == 1 and nz[0] == (var.index, den):
            return self.affine_image(var, var - Fraction(e.inhomogeneous) / den)
        p = self.to_polyhedron().affine_preimage(var, e, den)
        self._commit(OctShape.from_polyhedron(p, self._family))
        return self

    def unconstrain(self, *variables: Variable) -> "OctShape":
        if any(v.index >= self._n for v in variables):
            raise DimensionMismatch("variable outside the space dimension")
        if self.is_empty():
            return self
        m = [row[:] for row in self._m]
        for v in variables:
            self._forget(m, v.index)
        self._m = m
        return self

    # -- widening ----------------------------------------------------------------------------------

    def _widened(self, other: "OctShape") -> "OctShape":
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

    def _finish(self, r, other, tokens):
        if tokens is not None and r != other and tokens.consume():
            r = other.copy()
        self._commit(r)
        return self

    @guarded
    def widening_oct_assign(self, other: "OctShape", tokens: Optional[TokenPool] = None) -> "OctShape":
        """Widening; self is the previous iterate, other the next (other contains self)."""
        self._check_dim(other)
        return self._finish(self._widened(other), other, tokens)

    widening_assign = widening_oct_assign

    @guarded
    def limited_oct_extrapolation_assign(self, other: "OctShape", cs: Iterable[Constraint],
                                         tokens: Optional[TokenPool] = None) -> "OctShape":
        self._check_dim(other)
        r = self._widened(other)
        keep = []
        for c in cs:
            form = octagonal_form(c)
            if form is None:
                continue
            if all(s.is_empty() or _le(s._m[i][j], self._family.up(d))
                   for s in (self, other) for i, j, d in form):
                keep.append(c)
        r.add_constraints(keep)
        return self._finish(r, other, tokens)

    # -- dimensions -----------------------------------------------------------------------------------

    def add_space_dimensions_and_embed(self, k: int) -> "OctShape":
        if k < 0:
            raise InvalidArgument("negative number of dimensions")
        zero = self._family.up(0)
        size = 2 * (self._n + k)
        m = [row + [INF] * (2 * k) for row in self._m]
        for i in range(len(m), size):
            row = [INF] * size
            row[i] = zero
            m.append(row)
        self._n, self._m = self._n + k, m
        return self

    def add_space_dimensions_and_project(self, k: int) -> "OctShape":
        old = self._n
        self.add_space_dimensions_and_embed(k)
        zero = self._family.up(0)
        for v in range(old, old + k):
            self._m[2 * v + 1][2 * v] = zero
            self._m[2 * v][2 * v + 1] = zero
        if k:
            self._closed = False
        return self

    def _select(self, keep: Sequence[int]) -> None:
        self._close()
        idx = [t for k in keep for t in (2 * k, 2 * k + 1)]
        self._m = [[self._m[i][j] for j in idx] for i in idx]
        self._n = len(keep)

    def remove_space_dimensions(self, variables: Iterable[Variable]) -> "OctShape":
        drop = {v.index for v in variables}
        if any(i >= self._n for i in drop):
            raise DimensionMismatch("variable outside the space dimension")
        self._select([i for i in range(self._n) if i not in drop])
        return self

    def remove_higher_space_dimensions(self, new_dim: int) -> "OctShape":
        if new_dim > self._n or new_dim < 0:
            raise DimensionMismatch("cannot grow the space with remove_higher_space_dimensions")
        self._select(list(range(new_dim)))
        return self

    def map_space_dimensions(self, pfunc: Mapping[int, int]) -> "OctShape":
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

    def concatenate_assign(self, other: "OctShape") -> "OctShape":
        n = self._n
        empty = self.is_empty() or other.is_empty()
        self.add_space_dimensions_and_embed(other._n)
        if empty:
            self._empty = True
            return self
        off = 2 * n
        for i, row in enumerate(other._m):
            for j, v in enumerate(row):
                self._m[off + i][off + j] = _min(self._m[off + i][off + j], v)
        self._closed = False
        return self

    # -- conversions ------------------------------------------------------------------------------------

    def to_polyhedron(self):
        from .polyhedron import Polyhedron
        if self.is_empty():
            return Polyhedron.empty(self._n)
        return Polyhedron.from_constraints(self.constraints(), dim=self._n)

    @classmethod
    def from_polyhedron(cls, p, family="rational") -> "OctShape":
        """Smallest octagon containing polyhedron ``p`` (bounds by optimization)."""
        n = p.space_dimension()
        if p.is_empty():
            return cls(n, "empty", family)
        s = cls(n, "universe", family)
        for i in range(2 * n):
            for j in range(2 * n):
                if i == j:
                    continue
                e = signed(j) - signed(i)
                hi = p.maximize(e)[0]
                if hi is not None:
                    s._m[i][j] = s._family.up(hi)
        s._closed = not s._family.integral
        return s

    def __repr__(self):
        if self.is_empty():
            return f"<OctShape dim={self._n}: false>"
        body = ", ".join(str(c) for c in self.constraints()) or "true"
        return f"<OctShape dim={self._n}: {body}>"

    def ascii_dump(self) -> str:
        lines = [f"space_dim {self._n}", f"family {self._family.name}",
                 f"status closed={int(self._closed)} empty={int(self._empty)}"]
        for row in self._m:
            lines.append(" ".join("+inf" if v is INF else str(v) for v in row))
        return "\n".join(lines)

"""Rational grids: sets cut out by linear congruences.

Both descriptions live in homogeneous coordinates as a rational lattice plus
a subspace.  A grid is the set of ``x`` with ``(1, x)`` in

    L = Z-span{(1, p) for points, (0, q) for parameters} + R-span{(0, l)}.

A congruence ``b + a.x == 0 (mod f)`` is the row ``(b, a) / f`` of the
dual lattice ``{r : r.v in Z for v in L}``; equalities form its subspace
part.  Converting between the two descriptions is computing that dual,
which for a lattice plus subspace is exact linear algebra over the
rationals.  Both sides are kept in a canonical echelon form (rational
Hermite form for the lattice, reduced row echelon form for the subspace),
so minimized systems are unique.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Optional, Sequence

from .core import (DimensionMismatch, InvalidArgument, TokenPool, budget_checkpoint,
                   check_coefficient, current_coefficient_bits, guarded)
from .linear_forms import (Congruence, CongruenceSystem, Constraint, GridGenerator,
                           GridGeneratorSystem, GridGeneratorType, LinearExpression, Variable,
                           _as_expr)

Vec = tuple  # of Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


# -- exact lattice algebra -------------------------------------------------------

def _check_int(v: int) -> None:
    if current_coefficient_bits() is not None:
        check_coefficient(v)


def _rref(rows: Iterable[Sequence[Fraction]], order: Sequence[int]) -> list[list[Fraction]]:
    """Reduced row echelon basis (pivots equal to 1, taken in ``order``)."""
    rows = [list(r) for r in rows if any(r)]
    out: list[tuple[int, list[Fraction]]] = []
    for col in order:
        piv = next((r for r in rows if r[col]), None)
        if piv is None:
            continue
        rows = [r for r in rows if r is not piv]
        p = piv[col]
        piv = [x / p for x in piv]
        for r in rows:
            if r[col]:
                f = r[col]
                for k in range(len(r)):
                    r[k] -= f * piv[k]
        for _, q in out:
            if q[col]:
                f = q[col]
                for k in range(len(q)):
                    q[k] -= f * piv[k]
        out.append((col, piv))
        rows = [r for r in rows if any(r)]
    return [r for _, r in out]


def _null_space(rows: Sequence[Sequence[Fraction]], m: int) -> list[list[Fraction]]:
    """Basis of ``{x : r.x == 0 for every row r}``."""
    red = _rref(rows, range(m))
    pivots = {next(c for c in range(m) if r[c]): r for r in red}
    basis = []
    for free in range(m):
        if free in pivots:
            continue
        x = [_ZERO] * m
        x[free] = _ONE
        for c, r in pivots.items():
            x[c] = -r[free]
        basis.append(x)
    return basis


def _hnf(rows: Iterable[Sequence[Fraction]], order: Sequence[int]) -> list[list[Fraction]]:
    """Hermite basis of the Z-span of rational ``rows``, pivots in ``order``.

    Pivots are positive and the entries above each pivot lie in
    ``[0, pivot)``, which makes the basis unique for a given lattice.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    den = 1
    for r in rows:
        for x in r:
            den = lcm(den, Fraction(x).denominator)
    work = [[int(x * den) for x in r] for r in rows]
    out: list[tuple[int, list[int]]] = []
    for col in order:
        while True:
            budget_checkpoint()
            nz = [r for r in work if r[col]]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda r: abs(r[col]))
            for r in nz:
                if r is piv:
                    continue
                q = r[col] // piv[col]
                for k in range(len(r)):
                    r[k] -= q * piv[k]
                    _check_int(r[k])
            work = [r for r in work if any(r)]
        if nz:
            p = nz[0]
            work = [r for r in work if r is not p]
            if p[col] < 0:
                p = [-x for x in p]
            out.append((col, p))
    for i, (col, p) in enumerate(out):
        for _, q in out[:i]:
            f = q[col] // p[col]
            if f:
                for k in range(len(q)):
                    q[k] -= f * p[k]
                    _check_int(q[k])
    return [[Fraction(x, den) for x in p] for _, p in out]


def _canon(lat, sub, order) -> tuple[list[Vec], list[Vec]]:
    """Canonical (lattice, subspace) bases of ``Z-span(lat) + R-span(sub)``."""
    sub = _rref(sub, order)
    pcols = [next(c for c in order if r[c]) for r in sub]
    red = []
    for v in lat:
        v = list(v)
        for c, r in zip(pcols, sub):
            if v[c]:
                f = v[c]
                v = [a - f * b for a, b in zip(v, r)]
        red.append(v)
    lat = _hnf(red, order)
    return [tuple(v) for v in lat], [tuple(_primitive(r)) for r in sub]


def _primitive(r: Sequence[Fraction]) -> list[Fraction]:
    """Scale a subspace row to coprime integers, keeping the sign of its pivot."""
    den = 1
    for x in r:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in r]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [Fraction(x // g) for x in ints]


def _dual(lat: Sequence[Vec], sub: Sequence[Vec], m: int) -> tuple[list[Vec], list[Vec]]:
    """Dual ``{r : r.v in Z for v in lat, r.s == 0 for s in sub}``.

    ``lat`` must be independent modulo ``sub`` (as ``_canon`` returns).
    """
    q = _null_space(sub, m)
    k = len(q)
    g = [[sum((a * b for a, b in zip(qi, v)), _ZERO) for qi in q] for v in lat]
    s = len(g)
    gram = [[sum((a * b for a, b in zip(g[i], g[j])), _ZERO) for j in range(s)]
            for i in range(s)]
    inv = _inverse(gram)
    ys = [[sum((inv[i][j] * g[j][c] for j in range(s)), _ZERO) for c in range(k)]
          for i in range(s)]
    zs = _null_space(g, k)

    def back(y):
        return tuple(sum((y[i] * q[i][c] for i in range(k)), _ZERO) for c in range(m))

    return [back(y) for y in ys], [back(z) for z in zs]


def _inverse(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(r) + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(a)]
    red = _rref(aug, range(n))
    return [r[n:] for r in red]


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), _ZERO)


def _is_integer(f: Fraction) -> bool:
    return Fraction(f).denominator == 1


def _corder(n: int) -> list[int]:
    # congruence rows (b, a1..an): last variable first, inhomogeneous term last
    return list(range(n, -1, -1))


def _gorder(n: int) -> list[int]:
    # generator rows (t, x1..xn): divisor column first, then last variable first
    return [0] + list(range(n, 0, -1))


def _e0(n: int) -> Vec:
    return (_ONE,) + (_ZERO,) * n


def _fgcd(a: Fraction, b: Fraction) -> Fraction:
    a, b = abs(Fraction(a)), abs(Fraction(b))
    if not a:
        return b
    if not b:
        return a
    d = a.denominator * b.denominator
    return Fraction(gcd(a.numerator * b.denominator, b.numerator * a.denominator), d)


def _satisfies_all(lat, sub, glat, gsub) -> bool:
    """Whether every generator of (glat, gsub) satisfies the congruence rows."""
    for r in lat:
        if any(not _is_integer(_dot(r, v)) for v in glat) or any(_dot(r, l) for l in gsub):
            return False
    for e in sub:
        if any(_dot(e, v) for v in glat) or any(_dot(e, l) for l in gsub):
            return False
    return True


def _var_index(v) -> int:
    return v.index if isinstance(v, Variable) else int(v)


class Grid:
    """A grid in ``dim``-dimensional rational space."""

    def __init__(self, dim: int = 0, kind: str = "universe"):
        if dim < 0:
            raise InvalidArgument("space dimension must be non-negative")
        if kind not in ("universe", "empty"):
            raise InvalidArgument(f"unknown grid kind {kind!r}")
        self._dim = dim
        self._empty = kind == "empty"
        # (lattice rows, subspace rows); None when out of date
        self._cong: Optional[tuple] = ((), ())
        self._gen: Optional[tuple] = None
        self._cmin = True
        self._gmin = False

    # -- construction ----------------------------------------------------------

    @classmethod
    def universe(cls, dim: int) -> "Grid":
        return cls(dim, "universe")

    @classmethod
    def empty(cls, dim: int) -> "Grid":
        return cls(dim, "empty")

    @classmethod
    def from_congruences(cls, cgs: Iterable[Congruence], dim: Optional[int] = None) -> "Grid":
        cgs = list(cgs)
        need = max((c.space_dimension() for c in cgs), default=0)
        if dim is None:
            dim = need
        elif need > dim:
            raise DimensionMismatch("congruence dimension exceeds the space dimension")
        g = cls(dim)
        g._cong = g._rows_of(cgs)
        g._cmin = False
        return g

    @classmethod
    def from_constraints(cls, cs: Iterable[Constraint], dim: Optional[int] = None) -> "Grid":
        """Grid of the equalities in ``cs``; other constraints must be tautological."""
        cgs = []
        empty = False
        cs = list(cs)
        for c in cs:
            if c.is_equality():
                cgs.append(Congruence.from_constraint(c))
            elif c.is_inconsistent():
                empty = True
            elif not c.is_tautological():
                raise InvalidArgument(f"a grid cannot represent {c}")
        g = cls.from_congruences(cgs, dim if dim is not None
                                 else max((c.space_dimension() for c in cs), default=0))
        if empty:
            g._set_empty()
        return g

    @classmethod
    def from_generators(cls, ggs: Iterable[GridGenerator], dim: Optional[int] = None) -> "Grid":
        ggs = list(ggs)
        need = max((g.space_dimension() for g in ggs), default=0)
        if dim is None:
            dim = need
        elif need > dim:
            raise DimensionMismatch("generator dimension exceeds the space dimension")
        if not ggs:
            return cls(dim, "empty")
        if not any(g.is_point() for g in ggs):
            raise InvalidArgument("a nonempty grid generator system needs a point")
        out = cls(dim)
        out._gen = out._gen_rows_of(ggs)
        out._gmin = False
        out._cong = None
        return out

    def copy(self) -> "Grid":
        g = Grid.__new__(Grid)
        g.__dict__.update(self.__dict__)
        return g

    def _rows_of(self, cgs: Iterable[Congruence]) -> tuple:
        n = self._dim
        lat, sub = [], []
        for c in cgs:
            if not isinstance(c, Congruence):
                raise InvalidArgument("expected a Congruence")
            if c.space_dimension() > n:
                raise DimensionMismatch("congruence dimension exceeds the space dimension")
            row = tuple(Fraction(x) for x in c.row(n))
            if c.modulus:
                lat.append(tuple(x / c.modulus for x in row))
            else:
                sub.append(row)
        return tuple(lat), tuple(sub)

    def _gen_rows_of(self, ggs: Iterable[GridGenerator]) -> tuple:
        n = self._dim
        lat, sub = [], []
        for g in ggs:
            if not isinstance(g, GridGenerator):
                raise InvalidArgument("expected a GridGenerator")
            if g.space_dimension() > n:
                raise DimensionMismatch("generator dimension exceeds the space dimension")
            x = g.rational_coords(n)
            if g.is_line():
                sub.append((_ZERO,) + x)
            else:
                lat.append(((_ONE if g.is_point() else _ZERO),) + x)
        return tuple(lat), tuple(sub)

    # -- conversion ------------------------------------------------------------

    def _set_empty(self) -> None:
        self._empty = True
        self._cong = ((), ())
        self._gen = None
        self._cmin = True
        self._gmin = False

    def _ensure_gens(self) -> Optional[tuple]:
        """Canonical generator rows, or None for the empty grid."""
        if self._empty:
            return None
        n = self._dim
        if self._gen is None:
            lat, sub = self._cong
            lat, sub = _canon(list(lat) + [_e0(n)], sub, _corder(n))
            dl, ds = _dual(lat, sub, n + 1)
            dl, ds = _canon(dl, ds, _gorder(n))
            if not dl or dl[0][0] != 1:
                self._set_empty()
                return None
            self._gen = (tuple(dl), tuple(ds))
            self._gmin = True
        elif not self._gmin:
            lat, sub = _canon(*self._gen, _gorder(n))
            self._gen = (tuple(lat), tuple(sub))
            self._gmin = True
        return self._gen

    def _ensure_cons(self) -> Optional[tuple]:
        """Canonical congruence rows (without the implicit ``1 == 0 mod 1``)."""
        gen = self._ensure_gens()
        if gen is None:
            return None
        if self._cong is None or not self._cmin:
            n = self._dim
            dl, ds = _dual(*gen, n + 1)
            lat, sub = _canon(dl, ds, _corder(n))
            self._cong = (tuple(r for r in lat if any(r[1:])), tuple(sub))
            self._cmin = True
        return self._cong

    def _any_cons(self) -> Optional[tuple]:
        """Congruence rows in any form, converting only when missing."""
        if self._empty:
            return None
        if self._cong is None:
            return self._ensure_cons()
        return self._cong

    def _any_gens(self) -> Optional[tuple]:
        if self._empty:
            return None
        if self._gen is None:
            return self._ensure_gens()
        return self._gen

    def _set_cons(self, cong: tuple) -> None:
        self._cong = (tuple(cong[0]), tuple(cong[1]))
        self._gen = None
        self._cmin = False
        self._gmin = False

    def _set_gens(self, gen: tuple) -> None:
        self._gen = (tuple(gen[0]), tuple(gen[1]))
        self._cong = None
        self._cmin = False
        self._gmin = False

    # -- views --------------------------------------------------------------------

    def space_dimension(self) -> int:
        return self._dim

    def minimized_congruences(self) -> CongruenceSystem:
        n = self._dim
        cong = self._ensure_cons()
        if cong is None:
            return CongruenceSystem([Congruence(LinearExpression(1), 0)], n)
        out = []
        for r in cong[1]:
            out.append(Congruence(LinearExpression(r[0], r[1:]), 0))
        for r in cong[0]:
            den = 1
            for x in r:
                den = lcm(den, x.denominator)
            out.append(Congruence(LinearExpression(r[0] * den, [x * den for x in r[1:]]), den))
        return CongruenceSystem(out, n)

    congruences = minimized_congruences

    def minimized_grid_generators(self) -> GridGeneratorSystem:
        n = self._dim
        gen = self._ensure_gens()
        if gen is None:
            return GridGeneratorSystem([], n)
        out = []
        for r in gen[0]:
            den = 1
            for x in r[1:]:
                den = lcm(den, x.denominator)
            kind = GridGeneratorType.POINT if r[0] else GridGeneratorType.PARAMETER
            out.append(GridGenerator(kind, [int(x * den) for x in r[1:]], den))
        for r in gen[1]:
            out.append(GridGenerator(GridGeneratorType.LINE, [int(x) for x in r[1:]]))
        return GridGeneratorSystem(out, n)

    grid_generators = minimized_grid_generators

    # -- predicates ----------------------------------------------------------------

    def is_empty(self) -> bool:
        return self._ensure_gens() is None

    def is_universe(self) -> bool:
        cong = self._ensure_cons()
        return cong is not None and not cong[0] and not cong[1]

    def is_bounded(self) -> bool:
        gen = self._ensure_gens()
        return gen is None or (len(gen[0]) == 1 and not gen[1])

    def is_discrete(self) -> bool:
        gen = self._ensure_gens()
        return gen is None or not gen[1]

    def is_topologically_closed(self) -> bool:
        return True

    def affine_dimension(self) -> int:
        gen = self._ensure_gens()
        if gen is None:
            return 0
        return len(gen[0]) - 1 + len(gen[1])

    def _same_dim(self, other: "Grid") -> None:
        if not isinstance(other, Grid):
            raise InvalidArgument("expected a Grid")
        if other._dim != self._dim:
            raise DimensionMismatch(f"grids of dimension {self._dim} and {other._dim}")

    def contains(self, other: "Grid") -> bool:
        self._same_dim(other)
        og = other._any_gens()
        if og is None:
            return True
        cong = self._any_cons()
        if cong is None:
            return False
        return _satisfies_all(cong[0], cong[1], og[0], og[1])

    def strictly_contains(self, other: "Grid") -> bool:
        return self.contains(other) and not other.contains(self)

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        if other._dim != self._dim:
            return False
        return self._ensure_gens() == other._ensure_gens()

    def __hash__(self):
        return hash((self._dim, self._ensure_gens()))

    def __le__(self, other: "Grid") -> bool:
        return other.contains(self)

    def __ge__(self, other: "Grid") -> bool:
        return self.contains(other)

    def is_disjoint_from(self, other: "Grid") -> bool:
        return self.copy().intersection_assign(other).is_empty()

    def contains_point(self, pt: Sequence) -> bool:
        if len(pt) != self._dim:
            raise DimensionMismatch("point dimension differs from the space dimension")
        cong = self._any_cons()
        if cong is None:
            return False
        v = (_ONE,) + tuple(Fraction(x) for x in pt)
        return _satisfies_all(cong[0], cong[1], [v], [])

    def satisfies(self, cg: Congruence) -> bool:
        """Whether every point of the grid satisfies ``cg``."""
        gen = self._any_gens()
        if gen is None:
            return True
        lat, sub = self._rows_of([cg])
        return _satisfies_all(lat, sub, gen[0], gen[1])

    # -- adding information ---------------------------------------------------------

    @guarded
    def add_congruence(self, cg: Congruence) -> "Grid":
        return self.add_congruences([cg])

    @guarded
    def add_congruences(self, cgs: Iterable[Congruence]) -> "Grid":
        lat, sub = self._rows_of(cgs)
        cong = self._any_cons()
        if cong is not None:
            self._set_cons((cong[0] + lat, cong[1] + sub))
        return self

    refine_with_congruence = add_congruence
    refine_with_congruences = add_congruences

    @guarded
    def add_constraint(self, c: Constraint) -> "Grid":
        return self.add_constraints([c])

    @guarded
    def add_constraints(self, cs: Iterable[Constraint]) -> "Grid":
        g = Grid.from_constraints(cs, self._dim)
        return self.intersection_assign(g)

    @guarded
    def add_grid_generator(self, g: GridGenerator) -> "Grid":
        return self.add_grid_generators([g])

    @guarded
    def add_grid_generators(self, ggs: Iterable[GridGenerator]) -> "Grid":
        ggs = list(ggs)
        rows = self._gen_rows_of(ggs)
        gen = self._any_gens()
        if gen is None:
            if not ggs:
                return self
            if not any(g.is_point() for g in ggs):
                raise InvalidArgument("adding generators to an empty grid needs a point")
            self._empty = False
            self._set_gens(rows)
            return self
        self._set_gens((gen[0] + rows[0], gen[1] + rows[1]))
        return self

    # -- lattice operations ----------------------------------------------------------

    @guarded
    def intersection_assign(self, other: "Grid") -> "Grid":
        self._same_dim(other)
        a, b = self._any_cons(), other._any_cons()
        if a is None or b is None:
            self._set_empty()
        else:
            self._set_cons((a[0] + b[0], a[1] + b[1]))
        return self

    meet_assign = intersection_assign

    @guarded
    def upper_bound_assign(self, other: "Grid") -> "Grid":
        self._same_dim(other)
        b = other._any_gens()
        if b is None:
            return self
        a = self._any_gens()
        if a is None:
            self.__dict__.update(other.copy().__dict__)
            return self
        self._set_gens((a[0] + b[0], a[1] + b[1]))
        return self

    join_assign = upper_bound_assign

    @guarded
    def grid_difference_assign(self, other: "Grid") -> "Grid":
        """Smallest grid containing the points of ``self`` not in ``other``."""
        self._same_dim(other)
        gen = self._ensure_gens()
        if gen is None or other.is_empty():
            return self
        if other.contains(self):
            self._set_empty()
            return self
        point, params = gen[0][0], gen[0][1:]
        lines = gen[1]
        pieces: list[Grid] = []
        lat, sub = other._ensure_cons()
        for r, is_eq in [(r, False) for r in lat] + [(e, True) for e in sub]:
            if any(_dot(r, l) for l in lines):
                return self
            c = _dot(r, point)
            h = _ZERO
            for q in params:
                h = _fgcd(h, _dot(r, q))
            if not h:
                if (c == 0) if is_eq else _is_integer(c):
                    continue
                return self
            if is_eq:
                return self
            m = h.denominator
            k0 = next((k for k in range(m) if _is_integer(c + h * k)), None)
            if k0 is None or m >= 3:
                return self
            if m == 1:
                continue
            # two residue classes along r: keep the one that avoids the congruence
            shift = c + h * (k0 + 1)
            row = tuple((x - (shift if i == 0 else 0)) / (2 * h) for i, x in enumerate(r))
            piece = self.copy()
            piece._set_cons((self._ensure_cons()[0] + (row,), self._cong[1]))
            pieces.append(piece)
        if not pieces:
            self._set_empty()
            return self
        out = pieces[0]
        for p in pieces[1:]:
            out.upper_bound_assign(p)
        self.__dict__.update(out.__dict__)
        return self

    difference_assign = grid_difference_assign

    @guarded
    def time_elapse_assign(self, other: "Grid") -> "Grid":
        self._same_dim(other)
        a, b = self._any_gens(), other._any_gens()
        if a is None or b is None:
            self._set_empty()
            return self
        moved = tuple((_ZERO,) + v[1:] for v in b[0] if any(v[1:]))
        self._set_gens((a[0] + moved, a[1] + b[1]))
        return self

    # -- affine maps ---------------------------------------------------------------------

    def _affine_args(self, var, expr, denominator) -> tuple:
        if not isinstance(var, Variable):
            raise InvalidArgument("expected a Variable")
        if var.index >= self._dim:
            raise DimensionMismatch(f"variable {var} outside a {self._dim}-dimensional space")
        e = _as_expr(expr)
        if e.space_dimension() > self._dim:
            raise DimensionMismatch("expression dimension exceeds the space dimension")
        if denominator == 0:
            raise InvalidArgument("zero denominator")
        k = _ONE / Fraction(denominator)
        return (var.index + 1, Fraction(e.inhomogeneous) * k,
                [Fraction(x) * k for x in e.dense(self._dim)])

    @guarded
    def affine_image(self, var: Variable, expr, denominator=1) -> "Grid":
        """``var := expr / denominator``; non-invertible maps are handled exactly."""
        v, e0, e = self._affine_args(var, expr, denominator)
        gen = self._any_gens()
        if gen is None:
            return self

        def image(w):
            out = list(w)
            out[v] = e0 * w[0] + _dot(e, w[1:])
            return tuple(out)

        self._set_gens((tuple(map(image, gen[0])), tuple(map(image, gen[1]))))
        return self

    @guarded
    def affine_preimage(self, var: Variable, expr, denominator=1) -> "Grid":
        v, e0, e = self._affine_args(var, expr, denominator)
        cong = self._any_cons()
        if cong is None:
            return self

        def pre(r):
            a = r[v]
            out = list(r)
            out[v] = _ZERO
            out[0] += a * e0
            for j, x in enumerate(e):
                out[j + 1] += a * x
            return tuple(out)

        self._set_cons((tuple(map(pre, cong[0])), tuple(map(pre, cong[1]))))
        return self

    def _add_parameter(self, index: int, modulus) -> None:
        gen = self._any_gens()
        if gen is None or not modulus:
            return
        step = [_ZERO] * (self._dim + 1)
        step[index] = Fraction(modulus)
        self._set_gens((gen[0] + (tuple(step),), gen[1]))

    @guarded
    def generalized_affine_image(self, var: Variable, expr, denominator=1,
                                 modulus=1) -> "Grid":
        """``var' == expr / denominator (mod modulus)``; modulus 0 is the affine image."""
        if modulus < 0:
            raise InvalidArgument("negative modulus")
        v, _, _ = self._affine_args(var, expr, denominator)
        r = self.copy().affine_image(var, expr, denominator)
        r._add_parameter(v, modulus)
        self.__dict__.update(r.__dict__)
        return self

    @guarded
    def generalized_affine_preimage(self, var: Variable, expr, denominator=1,
                                    modulus=1) -> "Grid":
        if modulus < 0:
            raise InvalidArgument("negative modulus")
        v, _, _ = self._affine_args(var, expr, denominator)
        r = self.copy()
        r._add_parameter(v, modulus)
        r.affine_preimage(var, expr, denominator)
        self.__dict__.update(r.__dict__)
        return self

    @guarded
    def unconstrain(self, *variables: Variable) -> "Grid":
        if any(v.index >= self._dim for v in variables):
            raise DimensionMismatch("variable outside the space dimension")
        gen = self._any_gens()
        if gen is None:
            return self
        lines = []
        for v in variables:
            row = [_ZERO] * (self._dim + 1)
            row[v.index + 1] = _ONE
            lines.append(tuple(row))
        self._set_gens((gen[0], gen[1] + tuple(lines)))
        return self

    # -- space dimensions -------------------------------------------------------------------

    def _select(self, keep: Sequence[int]) -> None:
        """Project onto the dimensions ``keep`` (new dimension i is old ``keep[i]``)."""
        gen = self._any_gens()
        self._dim = len(keep)
        if gen is None:
            self._set_empty()
            return
        cols = [0] + [k + 1 for k in keep]
        self._set_gens((tuple(tuple(w[c] for c in cols) for w in gen[0]),
                        tuple(tuple(w[c] for c in cols) for w in gen[1])))

    @guarded
    def add_space_dimensions_and_embed(self, m: int) -> "Grid":
        if m < 0:
            raise InvalidArgument("negative number of dimensions")
        cong = self._any_cons()
        self._dim += m
        if cong is None:
            self._set_empty()
            return self
        pad = (_ZERO,) * m
        self._set_cons((tuple(r + pad for r in cong[0]), tuple(r + pad for r in cong[1])))
        return self

    @guarded
    def add_space_dimensions_and_project(self, m: int) -> "Grid":
        if m < 0:
            raise InvalidArgument("negative number of dimensions")
        gen = self._any_gens()
        self._dim += m
        if gen is None:
            self._set_empty()
            return self
        pad = (_ZERO,) * m
        self._set_gens((tuple(r + pad for r in gen[0]), tuple(r + pad for r in gen[1])))
        return self

    @guarded
    def remove_space_dimensions(self, variables: Iterable[Variable]) -> "Grid":
        drop = {v.index for v in variables}
        if any(i >= self._dim for i in drop):
            raise DimensionMismatch("variable outside the space dimension")
        self._select([i for i in range(self._dim) if i not in drop])
        return self

    @guarded
    def remove_higher_space_dimensions(self, new_dim: int) -> "Grid":
        if new_dim > self._dim or new_dim < 0:
            raise DimensionMismatch("cannot grow the space with remove_higher_space_dimensions")
        self._select(list(range(new_dim)))
        return self

    @guarded
    def map_space_dimensions(self, pfunc: Mapping) -> "Grid":
        pf = {_var_index(k): _var_index(v) for k, v in pfunc.items()}
        if any(k >= self._dim or k < 0 for k in pf):
            raise DimensionMismatch("map domain outside the space dimension")
        codomain = sorted(pf.values())
        if codomain != list(range(len(codomain))):
            raise InvalidArgument("map must be injective onto an initial segment")
        keep = [0] * len(codomain)
        for k, v in pf.items():
            keep[v] = k
        self._select(keep)
        return self

    @guarded
    def concatenate_assign(self, other: "Grid") -> "Grid":
        if not isinstance(other, Grid):
            raise InvalidArgument("expected a Grid")
        n, k = self._dim, other._dim
        a, b = self._any_cons(), other._any_cons()
        self._dim = n + k
        if a is None or b is None:
            self._set_empty()
            return self
        pad = (_ZERO,) * k

        def shift(r):
            return (r[0],) + (_ZERO,) * n + r[1:]

        self._set_cons((tuple(r + pad for r in a[0]) + tuple(map(shift, b[0])),
                        tuple(r + pad for r in a[1]) + tuple(map(shift, b[1]))))
        return self

    # -- widening --------------------------------------------------------------------------

    def _widened(self, other: "Grid") -> "Grid":
        self._same_dim(other)
        if not other.contains(self):
            raise InvalidArgument("widening needs the second grid to contain the first")
        cong = self._ensure_cons()
        gen = other._ensure_gens()
        if cong is None or gen is None:
            return other.copy()
        lat = tuple(r for r in cong[0] if _satisfies_all([r], [], *gen))
        sub = tuple(e for e in cong[1] if _satisfies_all([], [e], *gen))
        if len(lat) == len(cong[0]) and len(sub) == len(cong[1]):
            return self.copy()
        out = Grid(self._dim)
        out._set_cons((lat, sub))
        return out

    @guarded
    def widening_grid_assign(self, other: "Grid", tokens: Optional[TokenPool] = None) -> "Grid":
        """Keep the congruences of ``self`` that ``other`` (a superset) satisfies."""
        r = self._widened(other)
        if tokens is not None and r != other and tokens.consume():
            r = other.copy()
        self.__dict__.update(r.__dict__)
        return self

    @guarded
    def limited_extrapolation_assign(self, other: "Grid", cgs: Iterable[Congruence],
                                     tokens: Optional[TokenPool] = None) -> "Grid":
        """Widening, then the congruences of ``cgs`` that ``other`` satisfies."""
        cgs = list(cgs)
        r = self._widened(other)
        if tokens is not None and r != other and tokens.consume():
            r = other.copy()
        r.add_congruences([c for c in cgs if other.satisfies(c)])
        self.__dict__.update(r.__dict__)
        return self

    def widening_measure(self) -> int:
        """Proper congruences plus twice the equalities of the minimized system."""
        cong = self._ensure_cons()
        if cong is None:
            return 2 * (self._dim + 1)
        return len(cong[0]) + 2 * len(cong[1])

    # -- text --------------------------------------------------------------------------------

    def __repr__(self):
        if self.is_empty():
            return f"<Grid dim={self._dim}: false>"
        body = ", ".join(str(c) for c in self.minimized_congruences()) or "true"
        return f"<Grid dim={self._dim}: {body}>"

    def ascii_dump(self) -> str:
        lines = [f"space_dim {self._dim}",
                 f"status empty={int(self._empty)} con_min={int(self._cmin)} "
                 f"gen_min={int(self._gmin)}"]
        for name, part in (("congruences", self._cong), ("generators", self._gen)):
            if part is None:
                lines.append(f"{name} stale")
                continue
            lines.append(f"{name} lattice {len(part[0])} subspace {len(part[1])}")
            for r in part[0] + part[1]:
                lines.append(" ".join(str(x) for x in r))
        return "\n".join(lines)

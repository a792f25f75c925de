"""Finite powersets of a base domain.

A ``Powerset`` is a finite sequence of non-bottom disjuncts, none of which
entails another, denoting their union.  The base domain is reached only
through a ``DomainOps`` object, so any domain with an entailment test, a
meet and an upper bound can be lifted.  ``DomainOps`` itself works out of
the box for the numerical domains of this package (polyhedra, shapes,
grids).

Certificate widening measures a collection by a pair compared
lexicographically.  The first component is the certificate of the hull of
all disjuncts.  The second is the multiset of disjunct certificates: both
collections are reduced to at most ``max_disjuncts`` elements, padded to
exactly that many with a top element above every certificate, and compared
by the Dershowitz-Manna extension of the certificate order.  Both orders
are well founded, so their lexicographic product is too.  Splitting a
disjunct into smaller certified pieces counts as progress, and the size
bound stops that from going on forever.
"""
from __future__ import annotations

from collections import Counter
from typing import Any, Callable, Iterable, Optional

from .core import DimensionMismatch, InvalidArgument

DEFAULT_MAX_DISJUNCTS = 8

_WIDENINGS = ("widening_h79_assign", "widening_bds_assign", "widening_oct_assign",
              "widening_grid_assign")


class DomainOps:
    """Operations a base domain supplies to ``Powerset``.

    The defaults call the methods shared by this package's domains.
    Subclass and override them to lift another domain.
    """

    def entails(self, a, b) -> bool:
        """Whether ``a`` is below ``b``."""
        return b.contains(a)

    def equals(self, a, b) -> bool:
        return a == b

    def meet(self, a, b):
        return a.copy().intersection_assign(b)

    def upper_bound(self, a, b):
        return a.copy().upper_bound_assign(b)

    def upper_bound_if_exact(self, a, b):
        """The upper bound when it adds nothing to the union, else None."""
        if self.entails(a, b):
            return b
        if self.entails(b, a):
            return a
        if hasattr(a, "upper_bound_assign_if_exact"):
            c = a.copy()
            return c if c.upper_bound_assign_if_exact(b) else None
        return None

    def is_bottom(self, a) -> bool:
        return a.is_empty()

    def dimension(self, a) -> Optional[int]:
        return a.space_dimension() if hasattr(a, "space_dimension") else None

    def widen(self, a, b):
        """Base widening of ``a`` by ``b``, where ``a`` entails ``b``."""
        for name in _WIDENINGS:
            if hasattr(a, name):
                return getattr(a.copy(), name)(b)
        raise InvalidArgument(f"no widening known for {type(a).__name__}")

    def certificate(self, a):
        """Value in a well-founded order decreased by ``widen``."""
        if hasattr(a, "widening_certificate"):
            return a.widening_certificate()
        raise InvalidArgument(f"no certificate known for {type(a).__name__}")

    def copy(self, a):
        return a.copy() if hasattr(a, "copy") else a

    def format(self, a) -> str:
        return repr(a)


class _Top:
    """Padding element above every certificate."""

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return not isinstance(other, _Top)

    def __eq__(self, other):
        return isinstance(other, _Top)

    def __hash__(self):
        return hash("_Top")


def multiset_less(xs: Iterable, ys: Iterable, size: int) -> bool:
    """Padded Dershowitz-Manna order: is multiset ``xs`` strictly below ``ys``?"""
    xs, ys = list(xs), list(ys)
    if len(xs) > size or len(ys) > size:
        raise InvalidArgument("multiset larger than the padding size")
    top = _Top()
    cx = Counter(xs + [top] * (size - len(xs)))
    cy = Counter(ys + [top] * (size - len(ys)))
    only_x = cx - cy
    only_y = cy - cx
    if not only_x and not only_y:
        return False
    return all(any(_less(x, y) for y in only_y) for x in only_x)


def _less(x, y) -> bool:
    if isinstance(y, _Top):
        return not isinstance(x, _Top)
    if isinstance(x, _Top):
        return False
    return x < y


class Powerset:
    """Omega-reduced finite disjunction of base-domain elements."""

    def __init__(self, disjuncts: Iterable = (), ops: Optional[DomainOps] = None,
                 dim: Optional[int] = None):
        self.ops = ops if ops is not None else DomainOps()
        self._dim = dim
        self._ds: list = []
        for d in disjuncts:
            self.add_disjunct(d)

    def _new(self, disjuncts: Iterable = ()) -> "Powerset":
        out = Powerset.__new__(type(self))
        out.__dict__.update(self.__dict__)
        out._ds = []
        for d in disjuncts:
            out.add_disjunct(d)
        return out

    def copy(self) -> "Powerset":
        out = self._new()
        out._ds = [self.ops.copy(d) for d in self._ds]
        return out

    # -- basic access -------------------------------------------------------------

    @property
    def disjuncts(self) -> tuple:
        return tuple(self._ds)

    def __len__(self):
        return len(self._ds)

    def __iter__(self):
        return iter(self._ds)

    def space_dimension(self) -> Optional[int]:
        return self._dim

    def is_bottom(self) -> bool:
        return not self._ds

    is_empty = is_bottom

    def _check(self, d) -> None:
        k = self.ops.dimension(d)
        if k is None:
            return
        if self._dim is None:
            self._dim = k
        elif k != self._dim:
            raise DimensionMismatch(f"disjunct of dimension {k} in a {self._dim}-dimensional set")

    def _check_other(self, other: "Powerset") -> None:
        if not isinstance(other, Powerset):
            raise InvalidArgument("expected a Powerset")
        if self._dim is not None and other._dim is not None and self._dim != other._dim:
            raise DimensionMismatch(f"powersets of dimension {self._dim} and {other._dim}")

    # -- reduction ------------------------------------------------------------------

    def add_disjunct(self, d) -> "Powerset":
        """Insert ``d`` and drop the disjuncts it entails."""
        self._check(d)
        ops = self.ops
        if ops.is_bottom(d):
            return self
        if any(ops.entails(d, e) for e in self._ds):
            return self
        self._ds = [e for e in self._ds if not ops.entails(e, d)] + [d]
        return self

    def omega_reduce(self) -> "Powerset":
        ds, self._ds = self._ds, []
        for d in ds:
            self.add_disjunct(d)
        return self

    def pairwise_reduce(self) -> "Powerset":
        """Merge pairs of disjuncts whose upper bound is exact, until none is left."""
        ops = self.ops
        ds = list(self._ds)
        merged = True
        while merged:
            merged = False
            for i in range(len(ds)):
                for j in range(i + 1, len(ds)):
                    u = ops.upper_bound_if_exact(ds[i], ds[j])
                    if u is not None:
                        ds = ds[:i] + ds[i + 1:j] + ds[j + 1:] + [u]
                        merged = True
                        break
                if merged:
                    break
        self._ds = []
        for d in ds:
            self.add_disjunct(d)
        return self

    def collapse(self, max_disjuncts: int = 1) -> "Powerset":
        """Join the disjuncts from position ``max_disjuncts - 1`` on into one."""
        if max_disjuncts < 1:
            raise InvalidArgument("max_disjuncts must be positive")
        if len(self._ds) <= max_disjuncts:
            return self
        keep = self._ds[:max_disjuncts - 1]
        acc = self._ds[max_disjuncts - 1]
        for d in self._ds[max_disjuncts:]:
            acc = self.ops.upper_bound(acc, d)
        self._ds = []
        for d in keep + [acc]:
            self.add_disjunct(d)
        return self

    def hull(self):
        """Upper bound of all disjuncts in the base domain (None when bottom)."""
        if not self._ds:
            return None
        acc = self._ds[0]
        for d in self._ds[1:]:
            acc = self.ops.upper_bound(acc, d)
        return acc

    # -- lattice ----------------------------------------------------------------------

    def entails(self, other: "Powerset") -> bool:
        """Every disjunct of ``self`` is entailed by some disjunct of ``other``."""
        self._check_other(other)
        return all(any(self.ops.entails(d, e) for e in other._ds) for d in self._ds)

    definitely_entails = entails

    def equals(self, other: "Powerset") -> bool:
        """Same disjuncts up to order (mutual entailment of reduced sequences)."""
        return self.entails(other) and other.entails(self)

    def __eq__(self, other):
        if not isinstance(other, Powerset):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def upper_bound_assign(self, other: "Powerset") -> "Powerset":
        self._check_other(other)
        for d in other._ds:
            self.add_disjunct(self.ops.copy(d))
        return self

    def meet_assign(self, other: "Powerset") -> "Powerset":
        self._check_other(other)
        out = [self.ops.meet(a, b) for a in self._ds for b in other._ds]
        self._ds = []
        for d in out:
            self.add_disjunct(d)
        return self

    intersection_assign = meet_assign

    # -- extrapolation -------------------------------------------------------------------

    def _widen_fn(self, widen: Optional[Callable]) -> Callable:
        return widen if widen is not None else self.ops.widen

    def bgp99_extrapolation_assign(self, other: "Powerset", widen: Optional[Callable] = None,
                                   max_disjuncts: int = DEFAULT_MAX_DISJUNCTS) -> "Powerset":
        """Widen each disjunct of ``self`` against the first disjunct of ``other`` above it.

        ``self`` is the previous iterate and ``other`` the next one.  Disjuncts
        of ``other`` matched by nobody pass through unchanged.  The result is
        reduced to at most ``max_disjuncts`` disjuncts.
        """
        self._check_other(other)
        widen = self._widen_fn(widen)
        ops = self.ops
        if other.entails(self) and self.entails(other):
            self._ds = [ops.copy(d) for d in other._ds]
            return self
        matched: dict[int, list] = {}
        for d in self._ds:
            j = next((j for j, e in enumerate(other._ds) if ops.entails(d, e)), None)
            if j is not None:
                matched.setdefault(j, []).append(d)
        out = []
        for j, e in enumerate(other._ds):
            if j in matched:
                out.extend(widen(d, e) for d in matched[j])
            else:
                out.append(ops.copy(e))
        res = self._new(out)
        res.pairwise_reduce()
        res.collapse(max_disjuncts)
        self._ds = res._ds
        return self

    def certificate_widening_assign(self, other: "Powerset", widen: Optional[Callable] = None,
                                    certificate: Optional[Callable] = None,
                                    max_disjuncts: int = DEFAULT_MAX_DISJUNCTS) -> "Powerset":
        """Return ``other`` when its measure strictly improves, else widen the hulls.

        ``self`` is the previous iterate and ``other`` the next one.  The
        measure is described in the module docstring.
        """
        self._check_other(other)
        widen = self._widen_fn(widen)
        cert = certificate if certificate is not None else self.ops.certificate
        ops = self.ops
        if other.entails(self) and self.entails(other):
            self._ds = [ops.copy(d) for d in other._ds]
            return self
        q = other.copy().pairwise_reduce().collapse(max_disjuncts)
        p = self.copy().pairwise_reduce().collapse(max_disjuncts)
        hq = q.hull()
        hp = p.hull()
        if hp is None:
            self._ds = [hq] if hq is not None else []
            return self
        cq, cp = cert(hq), cert(hp)
        if cq < cp or (cq == cp and multiset_less([cert(d) for d in q], [cert(d) for d in p],
                                                  max_disjuncts)):
            self._ds = q._ds
            return self
        self._ds = [widen(hp, hq)]
        return self

    # -- text ---------------------------------------------------------------------------

    def __str__(self):
        return "{ " + ", ".join(self.ops.format(d) for d in self._ds) + " }"

    def __repr__(self):
        return f"Powerset({self})"


class PointsetPowerset(Powerset):
    """Powerset of numerical shapes with pointwise transfer functions."""

    def __init__(self, dim: int, disjuncts: Iterable = (), ops: Optional[DomainOps] = None):
        super().__init__((), ops, dim)
        for d in disjuncts:
            self.add_disjunct(d)

    def _map(self, name: str, *args: Any) -> "PointsetPowerset":
        ds = []
        for d in self._ds:
            c = self.ops.copy(d)
            getattr(c, name)(*args)
            ds.append(c)
        self._ds = []
        for d in ds:
            self.add_disjunct(d)
        return self

    def add_constraint(self, c) -> "PointsetPowerset":
        return self._map("add_constraint", c)

    def refine_with_constraint(self, c) -> "PointsetPowerset":
        return self._map("refine_with_constraint", c)

    def affine_image(self, var, expr, denominator=1) -> "PointsetPowerset":
        return self._map("affine_image", var, expr, denominator)

    def affine_preimage(self, var, expr, denominator=1) -> "PointsetPowerset":
        return self._map("affine_preimage", var, expr, denominator)

    def contains_point(self, pt) -> bool:
        return any(d.contains_point(pt) for d in self._ds)

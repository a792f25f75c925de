"""Double description conversion on homogeneous integer cones.

A cone is described either by rows ``c`` (``c . x >= 0`` or ``c . x == 0``)
or by generators (rays ``x`` and lines ``+-x``).  :func:`convert` turns one
description into a minimal version of the other; by duality the same
routine serves both directions.  The incremental step is Chernikova's:
saturation bitsets decide adjacency and pairwise combinations keep integer
rows normalized by their gcd.
"""
from __future__ import annotations

import math
from functools import reduce
from operator import mul
from typing import Iterable, Sequence

from .core import Overflow, budget_checkpoint, check_row, current_coefficient_bits

Row = tuple


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(map(mul, a, b))


def normalize(v: Sequence[int]) -> Row:
    g = reduce(math.gcd, v, 0)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def normalize_line(v: Sequence[int]) -> Row:
    v = normalize(v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _combine(a: int, u: Sequence[int], b: int, w: Sequence[int], bits) -> Row:
    row = [a * x + b * y for x, y in zip(u, w)]
    if bits is not None:
        check_row(row, bits)
    return normalize(row)


class _Ticker:
    """Polls the installed budget every ``period`` ticks."""

    __slots__ = ("n", "period")

    def __init__(self, period: int = 64):
        self.n = 0
        self.period = period

    def tick(self) -> None:
        self.n += 1
        if self.n >= self.period:
            self.n = 0
            budget_checkpoint()


class Cone:
    """Incrementally maintained generators of a cone given by rows.

    ``lines``/``rays`` generate ``{x | r . x (=|>=) 0 for r in rows}``;
    :meth:`add` intersects with one more row (Chernikova's step).
    """

    def __init__(self, dim: int, lines=None, rays=None, rows=()):
        self.dim = dim
        if lines is None:
            lines = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
        self.lines: list[Row] = list(lines)
        self.rays: list[Row] = list(rays or [])
        self.nrows = 0
        self.sats: list[int] = [0] * len(self.rays)
        for r in rows:
            bit = 1 << self.nrows
            self.sats = [s | bit if dot(r, g) == 0 else s for s, g in zip(self.sats, self.rays)]
            self.nrows += 1
        self._bits = current_coefficient_bits()
        self._ticker = _Ticker()

    def add(self, c: Sequence[int], is_eq: bool) -> None:
        budget_checkpoint()
        bits = self._bits
        bit = 1 << self.nrows
        done = bit - 1
        self.nrows += 1
        lines, rays, sats = self.lines, self.rays, self.sats
        pivot = -1
        for i, l in enumerate(lines):
            if dot(c, l):
                pivot = i
                break
        if pivot >= 0:
            l = lines.pop(pivot)
            ls = dot(c, l)
            if ls < 0:
                l = tuple(-x for x in l)
                ls = -ls
            new_lines = []
            for m in lines:
                s = dot(c, m)
                new_lines.append(normalize_line(_combine(ls, m, -s, l, bits)) if s else m)
            new_rays = []
            for r in rays:
                s = dot(c, r)
                new_rays.append(_combine(ls, r, -s, l, bits) if s else r)
            sats = [sat | bit for sat in sats]
            if not is_eq:
                new_rays.append(normalize(l))
                sats.append(done)
            self.lines, self.rays, self.sats = new_lines, new_rays, sats
            return

        sps = [dot(c, r) for r in rays]
        pos = [i for i, s in enumerate(sps) if s > 0]
        neg = [i for i, s in enumerate(sps) if s < 0]
        if not neg and (not is_eq or not pos):
            self.sats = [sat | bit if sps[i] == 0 else sat for i, sat in enumerate(sats)]
            return
        need = self.dim - len(lines) - 2
        new_rays = []
        new_sats = []
        for i, s in enumerate(sps):
            if s == 0:
                new_rays.append(rays[i])
                new_sats.append(sats[i] | bit)
            elif s > 0 and not is_eq:
                new_rays.append(rays[i])
                new_sats.append(sats[i])
        if pos and neg:
            nrays = len(rays)
            tick = self._ticker.tick
            for i in pos:
                si = sps[i]
                sat_i = sats[i]
                for j in neg:
                    tick()
                    common = sat_i & sats[j]
                    if _popcount(common) < need:
                        continue
                    adjacent = True
                    for t in range(nrays):
                        if t != i and t != j and common & ~sats[t] == 0:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    new_rays.append(_combine(si, rays[j], -sps[j], rays[i], bits))
                    new_sats.append(common | bit)
        self.rays, self.sats = new_rays, new_sats


def convert(equalities: Iterable[Sequence[int]], inequalities: Iterable[Sequence[int]],
            dim: int) -> tuple[list[Row], list[Row]]:
    """Generators of ``{x | E x = 0, I x >= 0}`` in ``dim`` dimensions.

    Returns ``(lines, rays)``; both lists are minimal (lines linearly
    independent, rays extreme and pairwise non-equivalent modulo lines).
    """
    cone = Cone(dim)
    for r in equalities:
        cone.add(tuple(r), True)
    for r in inequalities:
        cone.add(tuple(r), False)
    return cone.lines, cone.rays


def saturation(rows: Sequence[Sequence[int]], gens: Sequence[Sequence[int]]) -> list[int]:
    """Bitset per row: bit ``j`` set iff ``gens[j]`` saturates the row."""
    out = []
    for r in rows:
        m = 0
        for j, g in enumerate(gens):
            if dot(r, g) == 0:
                m |= 1 << j
        out.append(m)
    return out


def independent_subset(rows: Sequence[Sequence[int]]) -> list[int]:
    """Indices of a maximal linearly independent subset (greedy, in order)."""
    basis: list[tuple[int, list[int]]] = []  # (pivot column, reduced row)
    keep = []
    for idx, r in enumerate(rows):
        v = list(r)
        for col, b in basis:
            if v[col]:
                f, g = b[col], v[col]
                v = [f * x - g * y for x, y in zip(v, b)]
                v = list(normalize(v))
        piv = next((i for i, x in enumerate(v) if x), -1)
        if piv >= 0:
            basis.append((piv, v))
            keep.append(idx)
    return keep


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(independent_subset(rows))


def minimize_source(eqs: Sequence[Row], ineqs: Sequence[Row],
                    dual_rays: Sequence[Row]) -> tuple[list[Row], list[Row]]:
    """Drop redundant rows of a description given the other one's rays.

    ``dual_rays`` are the rays (not lines) of the converted description;
    lines saturate every valid row and carry no information here.
    Returns ``(equalities, inequalities)`` with implicit equalities promoted.
    """
    full = (1 << len(dual_rays)) - 1
    sats = saturation(ineqs, dual_rays)
    implicit = [r for r, s in zip(ineqs, sats) if s == full]
    cand_eq = list(eqs) + implicit
    eq_out = [cand_eq[i] for i in independent_subset(cand_eq)]
    rest = [(r, s) for r, s in zip(ineqs, sats) if s != full]
    ineq_out = []
    seen: set[int] = set()
    for r, s in rest:
        if s in seen:
            continue
        if any(s & ~t == 0 and s != t for _, t in rest):
            continue
        seen.add(s)
        ineq_out.append(r)
    return eq_out, ineq_out


def null_space(rows: Sequence[Sequence[int]], dim: int) -> list[Row]:
    """Integer basis of ``{x | r . x = 0 for all rows}``."""
    lines, rays = convert(rows, (), dim)
    return [normalize_line(l) for l in lines]


def max_abs(rows: Iterable[Sequence[int]]) -> int:
    return max((abs(x) for r in rows for x in r), default=0)


__all__ = ["Cone", "convert", "saturation", "minimize_source", "independent_subset", "rank",
           "null_space", "dot", "normalize", "normalize_line", "Overflow"]

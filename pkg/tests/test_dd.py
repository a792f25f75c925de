import itertools

import pytest
from hypothesis import given, settings, strategies as st

from numdom import _dd
from numdom.core import Overflow, coefficient_mode


def test_normalize():
    assert _dd.normalize((4, -6, 0)) == (2, -3, 0)
    assert _dd.normalize_line((-2, 4)) == (1, -2)
    assert _dd.normalize((0, 0)) == (0, 0)


def test_square_cone():
    # homogeneous rows (b, a): x >= 0, 1 - x >= 0, y >= 0, 1 - y >= 0, plus t >= 0
    rows = [(1, 0, 0), (0, 1, 0), (1, -1, 0), (0, 0, 1), (1, 0, -1)]
    lines, rays = _dd.convert([], rows, 3)
    assert lines == []
    verts = {tuple(x * 1 // r[0] for x in r[1:]) for r in rays}
    assert verts == {(0, 0), (1, 0), (0, 1), (1, 1)}


def test_equalities_give_lines():
    lines, rays = _dd.convert([(0, 1, -1)], [], 3)
    assert len(lines) == 2 and rays == []
    assert _dd.rank(lines) == 2


def test_null_space_and_rank():
    ns = _dd.null_space([(1, 1, 1)], 3)
    assert len(ns) == 2 and all(_dd.dot(v, (1, 1, 1)) == 0 for v in ns)
    assert _dd.rank([(1, 2), (2, 4), (0, 1)]) == 2
    assert _dd.independent_subset([(1, 2), (2, 4), (0, 1)]) == [0, 2]


def test_saturation_bits():
    assert _dd.saturation([(1, 0)], [(0, 1), (1, 0), (0, 2)]) == [0b101]


def test_overflow_in_checked_mode():
    a, b = 2 ** 40 + 15, 2 ** 40 - 87
    rows = [(1, 0, 0), (0, a, b), (0, b, -a), (a, -1, -1)]
    with coefficient_mode("checked64"):
        with pytest.raises(Overflow):
            _dd.convert([], rows, 3)
    _dd.convert([], rows, 3)


cube_rows = st.integers(1, 5)


@given(cube_rows)
def test_cube_vertex_count(n):
    rows = [(1,) + (0,) * n]
    for i in range(n):
        for s in (1, -1):
            rows.append((1,) + tuple(s if k == i else 0 for k in range(n)))
    lines, rays = _dd.convert([], rows, n + 1)
    assert not lines and len(rays) == 2 ** n


rowvals = st.lists(st.tuples(*[st.integers(-3, 3)] * 3), max_size=6)


@settings(max_examples=80, deadline=None)
@given(rowvals)
def test_generators_satisfy_and_span(ineqs):
    lines, rays = _dd.convert([], ineqs, 3)
    for g in rays:
        assert all(_dd.dot(r, g) >= 0 for r in ineqs)
    for g in lines:
        assert all(_dd.dot(r, g) == 0 for r in ineqs)
    # converting the generators back must describe the same cone
    dual_lines, dual_rays = _dd.convert(lines, rays, 3)
    for v in itertools.product(range(-2, 3), repeat=3):
        inside = all(_dd.dot(r, v) >= 0 for r in ineqs)
        gen_inside = (all(_dd.dot(r, v) >= 0 for r in dual_rays)
                      and all(_dd.dot(r, v) == 0 for r in dual_lines))
        assert inside == gen_inside

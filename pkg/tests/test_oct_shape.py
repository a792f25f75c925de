import math
from fractions import Fraction


import pytest
from hypothesis import given, strategies as st

from numdom.bd_shape import INF, BdShape
from numdom.core import BoundFamily, DimensionMismatch, InvalidArgument, TokenPool
from numdom.linear_forms import Variable
from numdom.lp import MAXIMIZATION, LpProblem, LpStatus
from numdom.oct_shape import (OctShape, bar, naive_strong_closure, octagonal_form, signed,
                              strong_closure)

A, B, C = Variable(0), Variable(1), Variable(2)
RAT = BoundFamily("rational")


def test_index_convention():
    assert octagonal_form(A + B <= 3) == [(1, 2, 3)]
    assert octagonal_form(-A - B <= 3) == [(0, 3, 3)]
    assert octagonal_form(A <= 2) == [(1, 0, 4)]
    assert octagonal_form(A + 2 * B <= 1) is None
    assert bar(4) == 5 and bar(5) == 4


def test_strengthening_derives_sum():
    s = OctShape.from_constraints([A <= 1, B <= 1])
    assert s.bound(A + B) == 2


def test_empty_by_cycle():
    assert OctShape.from_constraints([A + B <= 0, -A - B <= -1]).is_empty()


def test_strong_closure_idempotent():
    s = OctShape.from_constraints([A - B <= 1, B + C <= 2, C <= 0])
    m = s.matrix()
    assert strong_closure(m, RAT) == m


def test_bd_embedding_round_trip():
    bd = BdShape.from_constraints([A - B <= 1, A >= 0, B <= 3])
    assert OctShape.from_bd_shape(bd).to_bd_shape() == bd


def test_join():
    x = OctShape.from_constraints([A + B <= 1], dim=2)
    y = OctShape.from_constraints([A + B <= 3], dim=2)
    assert x.upper_bound_assign(y) == y


def test_diamond_minimization():
    o = OctShape.from_constraints([A <= 1, A >= -1, B <= 1, B >= -1,
                                   A + B <= 1, A - B <= 1, -A + B <= 1, -A - B <= 1])
    # the box bounds are implied by the four diagonal faces
    assert len(o.minimized_constraints()) == 4


def test_widening():
    x = OctShape.from_constraints([A + B <= 1], dim=2)
    y = OctShape.from_constraints([A + B <= 2], dim=2)
    assert x.copy().widening_oct_assign(y).is_universe()
    assert x.copy().widening_oct_assign(x) == x
    r = x.copy().limited_oct_extrapolation_assign(y, [A + B <= 10])
    assert r == OctShape.from_constraints([A + B <= 10], dim=2)
    pool = TokenPool(1)
    assert x.copy().widening_oct_assign(y, pool) == y


def test_chain_stabilizes():
    x = OctShape.from_constraints([A + B <= 1, A - B <= 0], dim=2)
    for k in range(2, 65):
        nxt = x.copy().upper_bound_assign(
            OctShape.from_constraints([A + B <= k, A - B <= 0], dim=2))
        w = x.copy().widening_oct_assign(nxt)
        assert w.contains(nxt)
        if w == x:
            break
        x = w
    assert k <= 3


def test_affine_and_dimensions():
    sq = OctShape.from_constraints([A >= 0, A <= 1, B >= 0, B <= 1])
    assert sq.copy().affine_image(A, A + 2) == OctShape.from_constraints(
        [A >= 2, A <= 3, B >= 0, B <= 1])
    assert sq.copy().affine_image(A, -B + 1) == OctShape.from_constraints(
        [A + B == 1, B >= 0, B <= 1])
    assert sq.copy().affine_preimage(A, A + 2) == OctShape.from_constraints(
        [A >= -2, A <= -1, B >= 0, B <= 1])
    assert sq.copy().remove_space_dimensions([A]) == OctShape.from_constraints([A >= 0, A <= 1])
    assert sq.copy().add_space_dimensions_and_project(1) == OctShape.from_constraints(
        [A >= 0, A <= 1, B >= 0, B <= 1, C == 0])
    i = OctShape.from_constraints([A >= 0, A <= 1])
    assert i.concatenate_assign(OctShape.from_constraints([A >= 2, A <= 3])) == \
        OctShape.from_constraints([A >= 0, A <= 1, B >= 2, B <= 3])
    with pytest.raises(DimensionMismatch):
        sq.intersection_assign(OctShape.universe(3))
    with pytest.raises(InvalidArgument):
        sq.add_constraint(A + 2 * B <= 1)


def test_refine_non_octagonal():
    s = OctShape.universe(2).refine_with_constraint(A + 2 * B <= 2)
    assert s.is_universe()
    t = OctShape.from_constraints([A >= 0, B >= 0]).refine_with_constraint(A + 2 * B <= 2)
    assert t.bound(A) == 2 and t.bound(B) == 1


@st.composite
def coherent_matrix(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    size = 2 * n
    m = [[INF] * size for _ in range(size)]
    for i in range(size):
        m[i][i] = 0
    for _ in range(draw(st.integers(1, 3 * n))):
        i = draw(st.integers(0, size - 1))
        j = draw(st.integers(0, size - 1))
        if i == j:
            continue
        d = draw(st.integers(-4, 8))
        m[i][j] = d if m[i][j] is INF else min(m[i][j], d)
        m[bar(j)][bar(i)] = m[i][j]
    return m


@given(coherent_matrix())
def test_single_strengthening_matches_naive(m):
    assert strong_closure(m, RAT) == naive_strong_closure(m, RAT)


@given(coherent_matrix(max_n=3))
def test_closure_preserves_coherence_and_is_tightest(m):
    s = OctShape.from_matrix(m)
    if s.is_empty():
        p = s.raw_matrix()
        assert not LpProblem(s.space_dimension(), OctShape.from_matrix(p)._raw_constraints()
                             ).is_satisfiable()
        return
    assert s.is_coherent()
    n = s.space_dimension()
    cs = list(s.constraints())
    closed = s.matrix()
    for i in range(2 * n):
        for j in range(2 * n):
            if i == j:
                continue
            lp = LpProblem(n, cs, signed(j) - signed(i), MAXIMIZATION)
            st_ = lp.solve()
            if st_ is LpStatus.UNBOUNDED:
                assert closed[i][j] is INF
            else:
                assert closed[i][j] == lp.optimal_value()


@given(coherent_matrix(max_n=3))
def test_polyhedron_round_trip(m):
    s = OctShape.from_matrix(m)
    assert OctShape.from_polyhedron(s.to_polyhedron()) == s


half = st.integers(-8, 16).map(lambda k: Fraction(k, 2))


@given(st.lists(st.tuples(st.sampled_from([(1, 0), (0, 1), (1, 1), (1, -1), (-1, 0),
                                           (0, -1), (-1, -1), (-1, 1)]), half),
                min_size=1, max_size=6))
def test_integer_family_over_approximates_rational(rows):
    cs = [a * A + b * B <= d for (a, b), d in rows]
    q = OctShape.from_constraints(cs, dim=2)
    z = OctShape.from_constraints(cs, dim=2, family="integer")
    assert z.contains(q)
    if q.is_empty():
        return
    mq, mz = q.matrix(), z.matrix()
    for i in range(4):
        for j in range(4):
            if mq[i][j] is INF:
                assert mz[i][j] is INF
            else:
                # the integer entry is the rational one rounded up, or looser
                assert mz[i][j] is INF or mz[i][j] >= math.ceil(mq[i][j])

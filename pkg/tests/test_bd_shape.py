import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from numdom.bd_shape import INF, BdShape, difference_form
from numdom.core import DimensionMismatch, InvalidArgument, Overflow, TokenPool
from numdom.linear_forms import Variable
from numdom.lp import LpProblem

A, B, C = Variable(0), Variable(1), Variable(2)


def interval(lo, hi, family="rational"):
    return BdShape.from_constraints([A >= lo, A <= hi], family=family)


def brute_closure(m):
    """All-pairs shortest paths by enumerating simple paths (oracle)."""
    n = len(m)
    out = [[INF] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            best = m[i][j]
            mids = [k for k in range(n) if k not in (i, j)]
            for r in range(1, len(mids) + 1):
                for path in itertools.permutations(mids, r):
                    nodes = (i,) + path + (j,)
                    w = 0
                    for a, b in zip(nodes, nodes[1:]):
                        if m[a][b] is INF:
                            w = INF
                            break
                        w += m[a][b]
                    if w is not INF and (best is INF or w < best):
                        best = w
            out[i][j] = best
    for i in range(n):
        out[i][i] = 0
    return out


def test_closure_adds_transitive_bound():
    s = BdShape.from_constraints([A - B <= 1, B - C <= 2])
    m = s.dbm()
    assert m[3][1] == 3  # A - C <= 3


def test_closure_detects_negative_cycle():
    assert BdShape.from_constraints([A <= 1, -A <= -2]).is_empty()


def test_closure_idempotent():
    s = BdShape.from_constraints([A - B <= 1, B - C <= 2, C <= 0])
    m1 = s.dbm()
    s.shortest_path_closure_assign()
    assert s.dbm() == m1


def test_add_and_representability():
    s = BdShape.universe(2)
    s.add_constraint(A - B <= 3)
    assert s.raw_dbm()[2][1] == 3
    with pytest.raises(InvalidArgument):
        s.add_constraint(A + B <= 2)
    with pytest.raises(InvalidArgument):
        s.add_constraint(A > 0)
    u = BdShape.universe(2).refine_with_constraint(A + B <= 2)
    assert u.is_universe()
    assert difference_form(2 * A - 2 * B <= 3) == [(2, 1, Fraction(3, 2))]


def test_join_and_meet():
    assert interval(0, 1).upper_bound_assign(interval(0, 2)) == interval(0, 2)
    assert interval(0, 3).intersection_assign(interval(2, 5)) == interval(2, 3)
    assert interval(0, 1).intersection_assign(interval(2, 3)).is_empty()
    assert BdShape.empty(1).upper_bound_assign(interval(0, 1)) == interval(0, 1)


def test_widening():
    assert interval(0, 1).widening_bds_assign(interval(0, 2)) == \
        BdShape.from_constraints([A >= 0])
    assert interval(0, 1).widening_bds_assign(interval(0, 1)) == interval(0, 1)
    r = interval(0, 1).limited_bds_extrapolation_assign(interval(0, 2), [A <= 10])
    assert r == interval(0, 10)
    pool = TokenPool(1)
    assert interval(0, 1).widening_bds_assign(interval(0, 2), pool) == interval(0, 2)
    assert pool.count == 0


def test_widening_closes_first_argument_internally():
    # p written with a redundant loose bound: after closure A <= 1 is stable
    p = BdShape.from_constraints([A <= 1, B - A <= 0, B <= 5])
    q = BdShape.from_constraints([A <= 1, B - A <= 0, B <= 1])
    assert p.copy().widening_bds_assign(q) == q


def test_chain_stabilizes():
    x = interval(0, 1)
    steps = 0
    for k in range(2, 65):
        nxt = x.copy().upper_bound_assign(interval(0, k))
        w = x.copy().widening_bds_assign(nxt)
        assert w.contains(nxt)
        steps += 1
        if w == x:
            break
        x = w
    assert x == BdShape.from_constraints([A >= 0]) and steps <= 2


def test_affine_image():
    box = BdShape.from_constraints([A >= 0, A <= 1, B >= 0, B <= 1])
    assert box.copy().affine_image(A, A + 3) == BdShape.from_constraints(
        [A >= 3, A <= 4, B >= 0, B <= 1])
    assert box.copy().affine_image(A, B + 1) == BdShape.from_constraints(
        [A - B == 1, B >= 0, B <= 1])
    assert box.copy().affine_image(A, 2 * B) == BdShape.from_constraints(
        [A >= 0, A <= 2, A - B >= 0, A - B <= 1, B >= 0, B <= 1])
    assert box.copy().affine_preimage(A, A + 1) == BdShape.from_constraints(
        [A >= -1, A <= 0, B >= 0, B <= 1])


def test_dimensions():
    s = interval(0, 1)
    assert s.copy().add_space_dimensions_and_project(1) == BdShape.from_constraints(
        [A >= 0, A <= 1, B == 0])
    t = BdShape.from_constraints([A - B <= 1, B - C <= 2])
    assert t.copy().remove_space_dimensions([B]).dbm()[2][1] == 3
    assert interval(0, 1).concatenate_assign(interval(2, 3)) == BdShape.from_constraints(
        [A >= 0, A <= 1, B >= 2, B <= 3])
    u = BdShape.from_constraints([A >= 0, A <= 1, B >= 2, B <= 3])
    assert u.map_space_dimensions({0: 1, 1: 0}) == BdShape.from_constraints(
        [B >= 0, B <= 1, A >= 2, A <= 3])
    with pytest.raises(DimensionMismatch):
        interval(0, 1).intersection_assign(BdShape.universe(2))


def test_integer_family_rounds_up():
    s = interval(0, Fraction(3, 2), family="integer")
    assert s.upper_bound(A) == 2


def test_checked_family_overflow():
    s = BdShape.from_constraints([A - B <= 2 ** 62, B - C <= 2 ** 62], family="checked64")
    with pytest.raises(Overflow):
        s.is_empty()


@st.composite
def bd_system(draw, max_dim=4):
    dim = draw(st.integers(1, max_dim))
    cs = []
    for _ in range(draw(st.integers(1, 8))):
        i = draw(st.integers(0, dim))
        j = draw(st.integers(0, dim).filter(lambda x: x != i))
        d = draw(st.integers(-5, 5))
        e = (Variable(j - 1) if j else 0) - (Variable(i - 1) if i else 0)
        cs.append(e <= d)
    return dim, cs


@given(bd_system(max_dim=3))
def test_closure_matches_brute_force(system):
    dim, cs = system
    s = BdShape.from_constraints(cs, dim=dim)
    raw = s.raw_dbm()
    if s.is_empty():
        return
    assert s.dbm() == brute_closure(raw)
    closed = s.dbm()
    for i in range(dim + 1):
        for j in range(dim + 1):
            assert raw[i][j] is INF or closed[i][j] <= raw[i][j]


@given(bd_system())
def test_emptiness_agrees_with_lp(system):
    dim, cs = system
    assert BdShape.from_constraints(cs, dim=dim).is_empty() == \
        (not LpProblem(dim, cs).is_satisfiable())


@given(bd_system())
def test_polyhedron_round_trip(system):
    dim, cs = system
    s = BdShape.from_constraints(cs, dim=dim)
    p = s.to_polyhedron()
    back = BdShape.from_constraints(p.minimized_constraints(), dim=dim) \
        if not p.is_empty() else BdShape.empty(dim)
    assert back == s
    assert BdShape.from_polyhedron(p) == s


@given(bd_system())
def test_checked64_agrees_with_rational(system):
    dim, cs = system
    a = BdShape.from_constraints(cs, dim=dim)
    b = BdShape.from_constraints(cs, dim=dim, family="checked64")
    assert a.is_empty() == b.is_empty()
    if not a.is_empty():
        assert a.dbm() == b.dbm()


@given(bd_system(max_dim=2), bd_system(max_dim=2))
def test_join_is_upper_bound(s1, s2):
    p = BdShape.from_constraints(s1[1], dim=2)
    q = BdShape.from_constraints(s2[1], dim=2)
    h = p.copy().upper_bound_assign(q)
    assert h.contains(p) and h.contains(q)
    ph = p.to_polyhedron().upper_bound_assign(q.to_polyhedron())
    assert h == BdShape.from_polyhedron(ph)


import pytest
from hypothesis import given, strategies as st

from numdom.core import DimensionMismatch, InvalidArgument, TopologyMismatch
from numdom.linear_forms import Constraint, LinearExpression, Relation, Variable, point
from numdom.lp import MAXIMIZATION, MINIMIZATION, LpProblem, LpStatus
from numdom.polyhedron import Polyhedron

A, B, C = Variable(0), Variable(1), Variable(2)
WEDGE = [A + B >= 5, 2 * A - B >= -2, -A + 2 * B >= -2]


def test_wedge_satisfiable():
    assert LpProblem(2, WEDGE).is_satisfiable()


def test_trivial_satisfiability():
    assert not LpProblem(1, [A >= 1, A <= 0]).is_satisfiable()
    assert LpProblem(3).is_satisfiable()


def test_wedge_maximize_unbounded_with_witness():
    lp = LpProblem(2, WEDGE, A, MAXIMIZATION)
    assert lp.solve() is LpStatus.UNBOUNDED
    r = lp.unbounded_ray()
    assert r[0] > 0
    for c in WEDGE:
        assert sum(a * x for a, x in zip(c.coeffs, r)) >= 0


def test_wedge_minimize():
    lp = LpProblem(2, WEDGE, A, MINIMIZATION)
    assert lp.solve() is LpStatus.OPTIMIZED
    assert lp.optimizing_point() == point((1, 4))
    assert lp.evaluate_objective_function(lp.optimizing_point()) == (1, 1)


def test_objective_switch_keeps_phase_one():
    lp = LpProblem(2, WEDGE, A, MINIMIZATION)
    lp.solve()
    before = lp.phase1_pivots
    lp.set_objective_function(B)
    assert lp.solve() is LpStatus.OPTIMIZED
    assert lp.optimal_value() == 1
    assert lp.phase1_pivots == before


def test_mode_flip():
    lp = LpProblem(1, [A >= 0, A <= 5], A)
    assert lp.solve() is LpStatus.OPTIMIZED and lp.optimal_value() == 5
    lp.set_optimization_mode(MINIMIZATION)
    assert lp.solve() is LpStatus.OPTIMIZED and lp.optimal_value() == 0


def test_zero_objective():
    lp = LpProblem(2, WEDGE, 0)
    assert lp.solve() is LpStatus.OPTIMIZED
    assert lp.evaluate_objective_function(lp.optimizing_point()) == (0, 1)


def test_unused_dimension_constrained():
    lp = LpProblem(2, [A >= 0, A <= 1, B == 3], B)
    assert lp.solve() is LpStatus.OPTIMIZED and lp.optimal_value() == 3


def test_incremental_interval_collapse():
    lp = LpProblem(1, [A >= 0])
    lp.add_constraint(A <= 5)
    assert lp.is_satisfiable()
    lp.add_constraint(A >= 6)
    assert not lp.is_satisfiable()
    assert lp.solve() is LpStatus.UNFEASIBLE


def test_errors():
    lp = LpProblem(1)
    with pytest.raises(TopologyMismatch):
        lp.add_constraint(A > 0)
    with pytest.raises(DimensionMismatch):
        lp.add_constraint(B >= 0)
    with pytest.raises(DimensionMismatch):
        lp.set_objective_function(B)
    with pytest.raises(InvalidArgument):
        lp.optimizing_point()


def test_degenerate_instance_terminates():
    # many constraints through the optimum vertex
    cs = [A >= 0, B >= 0, C >= 0, A + B + C <= 1, A + B <= 1, A + C <= 1, B + C <= 1,
          2 * A + B + C <= 2, A + 2 * B + C <= 2, A + B + 2 * C <= 2]
    lp = LpProblem(3, cs, A + B + C)
    assert lp.solve() is LpStatus.OPTIMIZED and lp.optimal_value() == 1


def test_add_dimensions():
    lp = LpProblem(1, [A >= 0, A <= 2], A)
    lp.add_space_dimensions_and_embed(1)
    lp.add_constraint(B <= A)
    lp.add_constraint(B >= 1)
    lp.set_objective_function(B)
    assert lp.solve() is LpStatus.OPTIMIZED and lp.optimal_value() == 2


@st.composite
def bounded_system(draw):
    dim = draw(st.integers(1, 4))
    cs = []
    for i in range(dim):
        v = Variable(i)
        cs += [v >= draw(st.integers(-5, 0)), v <= draw(st.integers(0, 5))]
    for _ in range(draw(st.integers(0, 8 - min(8, 2 * dim) + 2))):
        coeffs = draw(st.lists(st.integers(-4, 4), min_size=dim, max_size=dim))
        rel = draw(st.sampled_from([Relation.GE, Relation.GE, Relation.EQ]))
        cs.append(Constraint(LinearExpression(draw(st.integers(-6, 6)), coeffs), rel))
    obj = LinearExpression(0, draw(st.lists(st.integers(-3, 3), min_size=dim, max_size=dim)))
    return dim, cs, obj


@given(bounded_system(), st.sampled_from([MAXIMIZATION, MINIMIZATION]))
def test_optimum_matches_vertices(system, mode):
    dim, cs, obj = system
    lp = LpProblem(dim, cs, obj, mode)
    status = lp.solve()
    poly = Polyhedron.from_constraints(cs, dim=dim)
    if poly.is_empty():
        assert status is LpStatus.UNFEASIBLE
        return
    assert status is LpStatus.OPTIMIZED
    vals = [obj.evaluate(g.rational_coords(dim)) for g in poly.generators() if g.is_point()]
    best = max(vals) if mode is MAXIMIZATION else min(vals)
    assert lp.optimal_value() == best
    x = lp.optimizing_point().rational_coords(dim)
    assert all(c.satisfied_by(x) for c in cs)


@given(bounded_system())
def test_incremental_matches_batch_on_prefixes(system):
    dim, cs, _ = system
    inc = LpProblem(dim)
    for k, c in enumerate(cs, 1):
        inc.add_constraint(c)
        assert inc.is_satisfiable() == LpProblem(dim, cs[:k]).is_satisfiable()

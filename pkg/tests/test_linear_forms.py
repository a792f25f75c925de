from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from numdom.core import InvalidArgument
from numdom.linear_forms import (Congruence, Constraint, LinearExpression, Relation,
                                 SatRelation, Variable, build_expression, closure_point,
                                 congruence, grid_line, grid_point, line, parameter, point,
                                 ray, satisfies, variable_name)

A, B, C = Variable(0), Variable(1), Variable(2)


def test_names():
    assert [variable_name(i) for i in (0, 1, 25, 26, 27)] == ["A", "B", "Z", "A1", "B1"]
    assert str(A) == "A"


def test_expression_arithmetic():
    e = 2 * A - B + 3
    assert e.coefficient(A) == 2 and e.coefficient(C) == 0
    assert e.inhomogeneous == 3 and e.space_dimension() == 2
    assert (e - e).is_constant()
    assert e.evaluate([1, 1]) == 4
    assert (A * Fraction(1, 2)).coefficient(A) == Fraction(1, 2)
    with pytest.raises(InvalidArgument):
        A * B
    assert build_expression([(0, 2), (2, -1)], 1).same_as(2 * A - C + 1)


def test_constraint_normal_form():
    c = 2 * A + 4 * B >= 6
    assert (c.coeffs, c.inhomogeneous, c.relation) == ((1, 2), -3, Relation.GE)
    assert (Fraction(1, 2) * A == Fraction(1, 3)) == (3 * A == 2)
    assert (-A == 2) == (A == -2)
    assert str(A - B <= 2) == "-A + B >= -2"
    assert (A > 0).is_strict_inequality() and (A > 0).closure() == (A >= 0)
    assert (LinearExpression(1) >= 0).is_tautological()
    assert (LinearExpression(-1) >= 0).is_inconsistent()
    assert (A >= 0).satisfied_by([0]) and not (A > 0).satisfied_by([0])


def test_generators_normalize():
    assert point([2, 4], 2) == point([1, 2])
    assert point([Fraction(1, 2)]).divisor == 2
    assert ray([2, 4]).coords == (1, 2)
    assert line([-2, 0]).coords == (1,)
    assert closure_point([1]).is_closure_point()
    with pytest.raises(InvalidArgument):
        ray([0, 0])
    with pytest.raises(InvalidArgument):
        point([1], 0)


def test_saturation_relation():
    assert satisfies(A >= 1, point([1])) is SatRelation.SATURATES
    assert satisfies(A >= 1, point([2])) is SatRelation.SATISFIES
    assert satisfies(A >= 1, point([0])) is SatRelation.VIOLATES
    assert satisfies(A > 1, point([1])) is SatRelation.VIOLATES
    assert satisfies(A > 1, closure_point([1])) is SatRelation.SATURATES
    assert satisfies(A >= 1, ray([1])) is SatRelation.SATISFIES
    assert satisfies(A >= 1, line([1])) is SatRelation.VIOLATES
    assert satisfies(A == 1, ray([0, 1])) is SatRelation.SATURATES


def test_congruences():
    c = congruence(A + 2 * B, 2, 4)
    assert c.modulus == 4 and c.residue == 2
    assert c.satisfied_by([0, 1]) and not c.satisfied_by([2, 1])
    assert congruence(A, 7, 4) == congruence(A, 3, 4)
    assert congruence(2 * A, 2, 4) == congruence(A, 1, 2)
    assert congruence(A, Fraction(1, 2), 1) == Congruence(2 * A - 1, 2)
    eq = Congruence.from_constraint(A == 3)
    assert eq.is_equality() and eq.satisfied_by([3])
    with pytest.raises(InvalidArgument):
        Congruence.from_constraint(A >= 3)
    assert Congruence(LinearExpression(4), 2).is_tautological()
    assert Congruence(LinearExpression(1), 2).is_inconsistent()


def test_grid_generators():
    assert grid_point([2, 0]).coords == (2,)
    assert parameter([4, 2], 2).coords == (2, 1)
    assert grid_line([0, -3]).coords == (0, 1)
    with pytest.raises(InvalidArgument):
        parameter([0])


small = st.integers(-6, 6)


@given(st.lists(small, min_size=1, max_size=4), small, st.integers(1, 5))
def test_scaling_invariance(coeffs, b, k):
    e = LinearExpression(b, coeffs)
    assert Constraint(e * k, Relation.GE) == Constraint(e, Relation.GE)
    assert Constraint(e * k, Relation.EQ) == Constraint(e * -k, Relation.EQ)


@given(st.lists(small, min_size=1, max_size=3), small, st.integers(1, 6),
       st.lists(small, min_size=3, max_size=3))
def test_congruence_normalization_keeps_solutions(coeffs, b, m, pt):
    raw = LinearExpression(b, coeffs)
    c = Congruence(raw, m)
    v = raw.evaluate(pt)
    assert c.satisfied_by(pt) == (v % m == 0)

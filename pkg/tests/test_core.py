import pickle
import threading
import time
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from numdom.core import (PLUS_INFINITY, Abandoned, BoundFamily, BudgetContext,
                         InvalidArgument, OutOfMemory, Overflow, ParseError, TokenPool,
                         bound, bound_add, bound_le, bound_max, bound_min, budget_checkpoint,
                         check_coefficient, checked_mul, coefficient_mode,
                         current_budget, current_coefficient_bits, guarded, rational_cmp,
                         to_rational)


def test_parse_error_position():
    e = ParseError("bad token", 3, 7)
    assert (e.line, e.column) == (3, 7)
    assert str(e) == "line 3, column 7: bad token"
    assert str(ParseError("eof")) == "eof"
    assert str(ParseError("x", 2)) == "line 2: x"


def test_to_rational_rejects_floats():
    assert to_rational("3/4") == Fraction(3, 4)
    assert to_rational(5) == 5
    with pytest.raises(InvalidArgument):
        to_rational(0.5)
    with pytest.raises(InvalidArgument):
        to_rational("abc")


def test_checked_modes():
    assert current_coefficient_bits() is None
    check_coefficient(2 ** 100)
    with coefficient_mode("checked64"):
        assert current_coefficient_bits() == 64
        check_coefficient(2 ** 63 - 1)
        check_coefficient(-2 ** 63)
        with pytest.raises(Overflow):
            check_coefficient(2 ** 63)
        with coefficient_mode("unbounded"):
            check_coefficient(2 ** 200)
    assert current_coefficient_bits() is None
    with pytest.raises(Overflow):
        checked_mul(2 ** 4, 2 ** 4, bits=8)
    with pytest.raises(InvalidArgument):
        with coefficient_mode("checked12"):
            pass


@given(st.integers(-2 ** 70, 2 ** 70), st.sampled_from([8, 16, 32, 64]))
def test_check_matches_range(v, bits):
    fits = -(1 << (bits - 1)) <= v < (1 << (bits - 1))
    if fits:
        assert check_coefficient(v, bits) == v
    else:
        with pytest.raises(Overflow):
            check_coefficient(v, bits)


def test_modes_are_thread_local():
    seen = []
    with coefficient_mode("checked8"):
        t = threading.Thread(target=lambda: seen.append(current_coefficient_bits()))
        t.start()
        t.join()
    assert seen == [None]


def test_extended_bounds():
    assert bound(3) == 3 and bound(PLUS_INFINITY) is PLUS_INFINITY
    assert bound_add(PLUS_INFINITY, 1) is PLUS_INFINITY
    assert bound_min(PLUS_INFINITY, Fraction(2)) == 2
    assert bound_max(PLUS_INFINITY, Fraction(2)) is PLUS_INFINITY
    assert bound_le(Fraction(1), PLUS_INFINITY) and not bound_le(PLUS_INFINITY, 1)
    assert rational_cmp(Fraction(1, 3), Fraction(1, 2)) == -1
    assert rational_cmp(PLUS_INFINITY, PLUS_INFINITY) == 0
    assert pickle.loads(pickle.dumps(PLUS_INFINITY)) is PLUS_INFINITY


def test_bound_families():
    q, z = BoundFamily("rational"), BoundFamily("integer")
    assert q.up(Fraction(5, 2)) == Fraction(5, 2)
    assert z.up(Fraction(5, 2)) == 3 and z.up(Fraction(-5, 2)) == -2
    assert z.down(Fraction(-5, 2)) == -3
    assert z.half_up(3) == 2 and z.half_up(-3) == -1
    c8 = BoundFamily("checked8")
    with pytest.raises(Overflow):
        c8.add(100, 100)
    assert BoundFamily.of(None) == q
    with pytest.raises(InvalidArgument):
        BoundFamily("float")


@given(st.fractions(max_denominator=50))
def test_integer_family_rounds_rational_up(x):
    z = BoundFamily("integer").up(x)
    assert z >= x > z - 1


def test_budget_expires():
    ctx = BudgetContext.from_hundredths(1)
    with ctx:
        assert current_budget() is ctx
        time.sleep(0.02)
        with pytest.raises(Abandoned):
            budget_checkpoint()
    assert current_budget() is None
    budget_checkpoint()


def test_budget_abandon_and_reset():
    ctx = BudgetContext.from_hundredths(0)
    assert not ctx.expired()
    ctx.abandon()
    assert ctx.abandoned
    with pytest.raises(Abandoned):
        budget_checkpoint(ctx)
    ctx.reset()
    budget_checkpoint(ctx)
    with pytest.raises(InvalidArgument):
        BudgetContext.from_hundredths(-1)


def test_token_pool():
    pool = TokenPool(2)
    assert [pool.consume() for _ in range(3)] == [True, True, False]


def test_guarded_translates_memory_error():
    @guarded
    def f():
        raise MemoryError("boom")
    with pytest.raises(OutOfMemory):
        f()

"""Exact arithmetic helpers, the error taxonomy and the resource budget.

Coefficients are plain Python ``int`` values and rationals are
``fractions.Fraction``.  A *checked* coefficient mode can be installed with
:func:`coefficient_mode`; in that mode every coefficient produced by the
expensive algorithms is range checked and :class:`Overflow` is raised
instead of silently producing a value that a fixed-width machine integer
could not hold.
"""
from __future__ import annotations

import contextlib
import contextvars
import functools
import threading
import time
from fractions import Fraction
from typing import Iterator, Optional, Union

Rational = Fraction


# -- errors ------------------------------------------------------------------

class DomainError(Exception):
    """Base class of every error raised by the library."""

    kind = "DomainError"


class Overflow(DomainError, OverflowError):
    kind = "Overflow"


class Abandoned(DomainError):
    kind = "Abandoned"


class OutOfMemory(DomainError, MemoryError):
    kind = "OutOfMemory"


class DimensionMismatch(DomainError, ValueError):
    kind = "DimensionMismatch"


class InvalidArgument(DomainError, ValueError):
    kind = "InvalidArgument"


class TopologyMismatch(DomainError, ValueError):
    kind = "TopologyMismatch"


class ParseError(DomainError, ValueError):
    kind = "ParseError"

    def __init__(self, message: str, line: Optional[int] = None,
                 column: Optional[int] = None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


def guarded(method):
    """Run ``method`` translating allocator exhaustion into OutOfMemory."""
    @functools.wraps(method)
    def wrapper(*args, **kwargs):
        try:
            return method(*args, **kwargs)
        except MemoryError as exc:
            if isinstance(exc, OutOfMemory):
                raise
            raise OutOfMemory(str(exc)) from exc
    return wrapper


# -- coefficients ------------------------------------------------------------

_WIDTHS = (8, 16, 32, 64)
_coeff_bits: contextvars.ContextVar[Optional[int]] = contextvars.ContextVar(
    "numdom_coefficient_bits", default=None)


def _limits(bits: int) -> tuple[int, int]:
    return -(1 << (bits - 1)), (1 << (bits - 1)) - 1


def current_coefficient_bits() -> Optional[int]:
    """Width of the installed checked mode, or None when unbounded."""
    return _coeff_bits.get()


@contextlib.contextmanager
def coefficient_mode(mode: Union[str, int, None]) -> Iterator[None]:
    """Install a coefficient mode for the dynamic extent of the block.

    ``mode`` is ``"unbounded"``/``None`` or ``"checked8"`` ... ``"checked64"``
    (an integer width is accepted too).
    """
    bits = _parse_mode(mode)
    token = _coeff_bits.set(bits)
    try:
        yield
    finally:
        _coeff_bits.reset(token)


def _parse_mode(mode: Union[str, int, None]) -> Optional[int]:
    if mode is None or mode == "unbounded":
        return None
    if isinstance(mode, str) and mode.startswith("checked"):
        mode = int(mode[len("checked"):])
    if mode not in _WIDTHS:
        raise InvalidArgument(f"unsupported coefficient width {mode!r}")
    return int(mode)


def check_coefficient(value: int, bits: Optional[int] = None) -> int:
    """Return ``value`` or raise Overflow if it does not fit the mode."""
    if bits is None:
        bits = _coeff_bits.get()
        if bits is None:
            return value
    lo, hi = _limits(bits)
    if value < lo or value > hi:
        raise Overflow(f"coefficient {value} exceeds {bits}-bit range")
    return value


def check_row(row, bits: Optional[int] = None):
    if bits is None:
        bits = _coeff_bits.get()
        if bits is None:
            return row
    lo, hi = _limits(bits)
    for v in row:
        if v < lo or v > hi:
            raise Overflow(f"coefficient {v} exceeds {bits}-bit range")
    return row


def checked_add(a: int, b: int, bits: Optional[int] = None) -> int:
    return check_coefficient(check_coefficient(a, bits) + check_coefficient(b, bits), bits)


def checked_sub(a: int, b: int, bits: Optional[int] = None) -> int:
    return check_coefficient(check_coefficient(a, bits) - check_coefficient(b, bits), bits)


def checked_mul(a: int, b: int, bits: Optional[int] = None) -> int:
    return check_coefficient(check_coefficient(a, bits) * check_coefficient(b, bits), bits)


def checked_neg(a: int, bits: Optional[int] = None) -> int:
    return check_coefficient(-check_coefficient(a, bits), bits)


def to_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise InvalidArgument("floating-point values are not accepted; use Fraction")
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise InvalidArgument(f"not a rational number: {value!r}") from exc


def rational_cmp(a, b) -> int:
    """Three-way comparison of rationals or extended bounds (-1, 0, 1)."""
    if a is PLUS_INFINITY or b is PLUS_INFINITY:
        if a is b:
            return 0
        return 1 if a is PLUS_INFINITY else -1
    a, b = to_rational(a), to_rational(b)
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    check_coefficient(lhs)
    check_coefficient(rhs)
    return (lhs > rhs) - (lhs < rhs)


# -- extended bounds ---------------------------------------------------------

@functools.total_ordering
class _PlusInfinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "PLUS_INFINITY"

    __str__ = lambda self: "+inf"  # noqa: E731

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("numdom.+inf")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (_PlusInfinity, ())


PLUS_INFINITY = _PlusInfinity()

ExtendedBound = Union[Fraction, _PlusInfinity]


def bound(value) -> ExtendedBound:
    """Coerce ``value`` to an extended bound (rational or +inf)."""
    if value is PLUS_INFINITY:
        return value
    return to_rational(value)


def bound_add(a: ExtendedBound, b: ExtendedBound) -> ExtendedBound:
    if a is PLUS_INFINITY or b is PLUS_INFINITY:
        return PLUS_INFINITY
    return a + b


def bound_min(a: ExtendedBound, b: ExtendedBound) -> ExtendedBound:
    if a is PLUS_INFINITY:
        return b
    if b is PLUS_INFINITY:
        return a
    return a if a <= b else b


def bound_max(a: ExtendedBound, b: ExtendedBound) -> ExtendedBound:
    if a is PLUS_INFINITY or b is PLUS_INFINITY:
        return PLUS_INFINITY
    return a if a >= b else b


def bound_le(a: ExtendedBound, b: ExtendedBound) -> bool:
    if b is PLUS_INFINITY:
        return True
    if a is PLUS_INFINITY:
        return False
    return a <= b


# -- resource budget ---------------------------------------------------------

class BudgetContext:
    """A deadline and an abandon flag polled by expensive computations.

    Install with ``with ctx:`` (per thread/context) or pass explicitly to
    :func:`budget_checkpoint`.  ``timeout`` is in seconds.
    """

    def __init__(self, timeout: Optional[float] = None,
                 deadline: Optional[float] = None):
        if timeout is not None:
            if timeout < 0:
                raise InvalidArgument("timeout must be non-negative")
            deadline = time.monotonic() + timeout
        self.deadline = deadline
        self._flag = threading.Event()
        self._tokens: list = []

    @classmethod
    def from_hundredths(cls, hs: int) -> "BudgetContext":
        """Budget of ``hs`` hundredths of a second; 0 means no timeout."""
        if hs < 0:
            raise InvalidArgument("timeout must be non-negative")
        return cls(timeout=hs / 100.0) if hs else cls()

    def abandon(self) -> None:
        self._flag.set()

    def reset(self) -> None:
        self._flag.clear()

    @property
    def abandoned(self) -> bool:
        return self._flag.is_set()

    def expired(self) -> bool:
        if self._flag.is_set():
            return True
        return self.deadline is not None and time.monotonic() >= self.deadline

    def __enter__(self):
        self._tokens.append(_budget.set(self))
        return self

    def __exit__(self, *exc):
        _budget.reset(self._tokens.pop())
        return False


_budget: contextvars.ContextVar[Optional[BudgetContext]] = contextvars.ContextVar(
    "numdom_budget", default=None)


def current_budget() -> Optional[BudgetContext]:
    return _budget.get()


def budget_checkpoint(ctx: Optional[BudgetContext] = None) -> None:
    """Raise Abandoned if the (given or installed) budget is exhausted."""
    if ctx is None:
        ctx = _budget.get()
        if ctx is None:
            return
    if ctx.expired():
        raise Abandoned("computation abandoned: budget exhausted")


class TokenPool:
    """Caller-held supply of widening tokens (widening delay)."""

    def __init__(self, count: int = 0):
        if count < 0:
            raise InvalidArgument("token count must be non-negative")
        self.count = count

    def consume(self) -> bool:
        if self.count > 0:
            self.count -= 1
            return True
        return False

    def __repr__(self):
        return f"TokenPool({self.count})"


# -- bound families ----------------------------------------------------------

class BoundFamily:
    """Number family of the inhomogeneous bounds of weakly relational shapes.

    ``"rational"`` stores ``Fraction`` values, ``"integer"`` unbounded ints and
    ``"checked8"`` ... ``"checked64"`` fixed-width ints that raise Overflow.
    Integer families round bounds upward, which keeps every shape sound.
    """

    def __init__(self, name: str = "rational"):
        if name in ("rational", "integer"):
            self.bits = None
        else:
            self.bits = _parse_mode(name)
            if self.bits is None:
                raise InvalidArgument(f"unknown bound family {name!r}")
            name = f"checked{self.bits}"
        self.name = name
        self.integral = name != "rational"

    @classmethod
    def of(cls, family) -> "BoundFamily":
        return family if isinstance(family, BoundFamily) else cls(family or "rational")

    def _check(self, v):
        if self.bits is not None:
            check_coefficient(v, self.bits)
        return v

    def up(self, value) -> ExtendedBound:
        """Smallest representable bound not below ``value``."""
        if value is PLUS_INFINITY:
            return value
        q = to_rational(value)
        if self.integral:
            return self._check(-((-q.numerator) // q.denominator))
        return q

    def down(self, value) -> ExtendedBound:
        """Largest representable bound not above ``value``."""
        q = to_rational(value)
        if self.integral:
            return self._check(q.numerator // q.denominator)
        return q

    def add(self, a: ExtendedBound, b: ExtendedBound) -> ExtendedBound:
        if a is PLUS_INFINITY or b is PLUS_INFINITY:
            return PLUS_INFINITY
        return self._check(a + b)

    def half_up(self, a: ExtendedBound) -> ExtendedBound:
        if a is PLUS_INFINITY:
            return a
        if self.integral:
            return -((-a) // 2)
        return a / 2

    def neg(self, a):
        return self._check(-a)

    def __eq__(self, other):
        return isinstance(other, BoundFamily) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"BoundFamily({self.name!r})"

"""Directed-rounded scalar arithmetic and the interval type built on it.

Every rigorous bound in this package reduces to the directed operations
here: each add/sub/mul/div/sqrt returns a value guaranteed to sit on the
requested side of the exact result.  Two interchangeable backends exist:

* native binary64 floats, where the correctly rounded result is nudged
  one representable step outward whenever it is inexact (detected by
  exact rational comparison, so exact results pass through unchanged);
* :class:`Fixed`, a software big-float with a configurable number of
  fractional bits, where floor/ceil integer arithmetic makes the
  rounding direction exact by construction.

All values are immutable and all operations are pure, so everything in
this module is safe for unrestricted concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

DOWN = "down"
UP = "up"


def _check_direction(direction):
    if direction not in (DOWN, UP):
        raise ValueError(f"direction must be '{DOWN}' or '{UP}', got {direction!r}")


# ---------------------------------------------------------------------------
# native binary64 backend

def _nudge(value: float, direction: str) -> float:
    return math.nextafter(value, -math.inf if direction == DOWN else math.inf)


def _settle(result: float, side: int, direction: str) -> float:
    """Move a correctly rounded result onto the requested side of the exact one.

    ``side`` compares the rounded result with the exact value: -1 below,
    0 equal, +1 above.  At most one representable step is taken.
    """
    if math.isnan(result) or math.isinf(result):
        raise OverflowError("operation left the finite binary64 range")
    if side == 0:
        return result
    if direction == DOWN:
        return result if side < 0 else _nudge(result, DOWN)
    return result if side > 0 else _nudge(result, UP)


def _float_round_dir(op: str, args: tuple, direction: str) -> float:
    for a in args:
        if not math.isfinite(a):
            raise DomainError(f"{op} requires finite operands, got {a!r}")
    if op == "sqrt":
        (x,) = args
        if x < 0:
            raise DomainError(f"sqrt of negative value {x!r}")
        r = math.sqrt(x)
        rr = Fraction(r) * Fraction(r)
        side = (rr > Fraction(x)) - (rr < Fraction(x))
        return _settle(r, side, direction)
    a, b = args
    if op == "add":
        r, exact = a + b, Fraction(a) + Fraction(b)
    elif op == "sub":
        r, exact = a - b, Fraction(a) - Fraction(b)
    elif op == "mul":
        r, exact = a * b, Fraction(a) * Fraction(b)
    elif op == "div":
        if b == 0:
            raise DomainError("division by zero")
        r, exact = a / b, Fraction(a) / Fraction(b)
    else:
        raise ValueError(f"unknown operation {op!r}")
    if math.isinf(r):
        raise OverflowError(f"{op} overflowed binary64")
    fr = Fraction(r)
    side = (fr > exact) - (fr < exact)
    return _settle(r, side, direction)


# ---------------------------------------------------------------------------
# software fixed-point backend

def isqrt_newton(n: int) -> int:
    """Floor integer square root by the classic Newton iteration.

    Starts above the root and decreases monotonically, stopping at the
    first non-decreasing step.
    """
    if n < 0:
        raise DomainError("isqrt of negative integer")
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 1) // 2)  # guaranteed >= floor(sqrt(n))
    while True:
        y = (x + n // x) >> 1
        if y >= x:
            return x
        x = y


def _shift_floor(n: int, k: int) -> int:
    return n >> k


def _shift_ceil(n: int, k: int) -> int:
    return -((-n) >> k)


class Fixed:
    """Fixed-point big-float: the exact rational ``mantissa / 2**bits``.

    Addition and subtraction are exact; multiplication, division and
    square root round the mantissa with floor or ceil, giving directed
    results that are at most one unit in the last place away from exact.
    """

    __slots__ = ("mantissa", "bits")

    def __init__(self, mantissa: int, bits: int):
        if bits < 1:
            raise ValueError("bits must be >= 1")
        self.mantissa = mantissa
        self.bits = bits

    @classmethod
    def from_int(cls, n: int, bits: int) -> "Fixed":
        return cls(n << bits, bits)

    @classmethod
    def from_fraction(cls, value: Fraction, bits: int, direction: str) -> "Fixed":
        _check_direction(direction)
        num = value.numerator << bits
        den = value.denominator
        m = num // den if direction == DOWN else -((-num) // den)
        return cls(m, bits)

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.bits)

    def __float__(self) -> float:
        return float(self.to_fraction())

    def _coerce(self, other):
        if isinstance(other, Fixed):
            if other.bits != self.bits:
                raise ValueError("mixed Fixed precisions")
            return other
        if isinstance(other, int):
            return Fixed.from_int(other, self.bits)
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.mantissa == o.mantissa

    def __lt__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.mantissa < o.mantissa

    def __le__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.mantissa <= o.mantissa

    def __gt__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.mantissa > o.mantissa

    def __ge__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.mantissa >= o.mantissa

    def __hash__(self):
        return hash((self.mantissa, self.bits))

    def __abs__(self):
        return Fixed(abs(self.mantissa), self.bits)

    def __repr__(self):
        return f"Fixed({float(self)!r} @ {self.bits} bits)"


def _fixed_round_dir(op: str, args: tuple, direction: str) -> Fixed:
    bits = args[0].bits
    for a in args:
        if a.bits != bits:
            raise ValueError("mixed Fixed precisions")
    if op == "sqrt":
        (x,) = args
        if x.mantissa < 0:
            raise DomainError("sqrt of negative value")
        n = x.mantissa << bits
        s = isqrt_newton(n)
        if direction == UP and s * s != n:
            s += 1
        return Fixed(s, bits)
    a, b = args
    if op == "add":
        return Fixed(a.mantissa + b.mantissa, bits)
    if op == "sub":
        return Fixed(a.mantissa - b.mantissa, bits)
    if op == "mul":
        prod = a.mantissa * b.mantissa
        shift = _shift_floor if direction == DOWN else _shift_ceil
        return Fixed(shift(prod, bits), bits)
    if op == "div":
        if b.mantissa == 0:
            raise DomainError("division by zero")
        num, den = a.mantissa << bits, b.mantissa
        if den < 0:
            num, den = -num, -den
        m = num // den if direction == DOWN else -((-num) // den)
        return Fixed(m, bits)
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# shared directed entry point

def round_dir(op: str, args: tuple, direction: str):
    """Apply ``op`` to ``args`` rounding the result in ``direction``.

    ``args`` must be homogeneous: all floats or all :class:`Fixed`.
    The result is guaranteed <= (down) or >= (up) the exact value, and
    exact results come back unchanged in both directions.
    """
    _check_direction(direction)
    if not args:
        raise ValueError("no operands")
    if isinstance(args[0], Fixed):
        return _fixed_round_dir(op, args, direction)
    return _float_round_dir(op, tuple(float(a) for a in args), direction)


def to_fraction(value) -> Fraction:
    if isinstance(value, Fixed):
        return value.to_fraction()
    return Fraction(value)


def scalar_from_fraction(value: Fraction, bits, direction: str):
    """Representable value on the requested side of an exact rational.

    ``bits`` selects the backend: ``None`` for binary64, otherwise the
    fractional bit count of a :class:`Fixed`.
    """
    if bits is not None:
        return Fixed.from_fraction(value, bits, direction)
    _check_direction(direction)
    r = float(value)
    if math.isinf(r):
        raise OverflowError("value outside the finite binary64 range")
    fr = Fraction(r)
    side = (fr > value) - (fr < value)
    return _settle(r, side, direction)


# ---------------------------------------------------------------------------
# intervals

@dataclass(frozen=True)
class Interval:
    """Closed enclosure [lo, hi]; endpoints share one backend.

    Arithmetic rounds lo down and hi up, so the result always contains
    the exact image set of the operands.  Multiplication is restricted
    to nonnegative intervals and division to positive divisors; that is
    all the polygon recurrences need, and it keeps endpoint selection
    monotone.
    """

    lo: object
    hi: object

    def __post_init__(self):
        if type(self.lo) is not type(self.hi):
            raise TypeError("interval endpoints must share a backend")
        if not self.lo <= self.hi:
            raise ValueError(f"interval endpoints out of order: [{self.lo!r}, {self.hi!r}]")

    # -- constructors

    @classmethod
    def exact(cls, value) -> "Interval":
        return cls(value, value)

    @classmethod
    def from_int(cls, n: int, bits) -> "Interval":
        if bits is not None:
            return cls.exact(Fixed.from_int(n, bits))
        f = float(n)
        if Fraction(f) != n:
            raise OverflowError(f"{n} not exactly representable")
        return cls.exact(f)

    @classmethod
    def from_fraction(cls, value: Fraction, bits) -> "Interval":
        return cls(
            scalar_from_fraction(value, bits, DOWN),
            scalar_from_fraction(value, bits, UP),
        )

    # -- queries

    @property
    def bits(self):
        return self.lo.bits if isinstance(self.lo, Fixed) else None

    def width(self):
        return round_dir("sub", (self.hi, self.lo), UP)

    def width_fraction(self) -> Fraction:
        return to_fraction(self.hi) - to_fraction(self.lo)

    def contains(self, value) -> bool:
        v = value if isinstance(value, Fraction) else to_fraction(value)
        return to_fraction(self.lo) <= v <= to_fraction(self.hi)

    def intersects(self, other: "Interval") -> bool:
        return (to_fraction(self.lo) <= to_fraction(other.hi)
                and to_fraction(other.lo) <= to_fraction(self.hi))

    def encloses(self, other: "Interval") -> bool:
        return (to_fraction(self.lo) <= to_fraction(other.lo)
                and to_fraction(other.hi) <= to_fraction(self.hi))

    def midpoint_fraction(self) -> Fraction:
        return (to_fraction(self.lo) + to_fraction(self.hi)) / 2

    def __float__(self) -> float:
        return float(self.midpoint_fraction())

    # -- arithmetic

    def _promote(self, other) -> "Interval":
        if isinstance(other, Interval):
            return other
        if isinstance(other, int):
            return Interval.from_int(other, self.bits)
        raise TypeError(f"cannot combine Interval with {type(other).__name__}")

    def __add__(self, other):
        o = self._promote(other)
        return Interval(round_dir("add", (self.lo, o.lo), DOWN),
                        round_dir("add", (self.hi, o.hi), UP))

    def __sub__(self, other):
        o = self._promote(other)
        return Interval(round_dir("sub", (self.lo, o.hi), DOWN),
                        round_dir("sub", (self.hi, o.lo), UP))

    def __mul__(self, other):
        o = self._promote(other)
        if to_fraction(self.lo) < 0 or to_fraction(o.lo) < 0:
            raise DomainError("interval multiplication requires nonnegative operands")
        return Interval(round_dir("mul", (self.lo, o.lo), DOWN),
                        round_dir("mul", (self.hi, o.hi), UP))

    def __rmul__(self, other):
        return self._promote(other).__mul__(self)

    def __truediv__(self, other):
        o = self._promote(other)
        if to_fraction(o.lo) <= 0:
            raise DomainError("interval division requires a positive divisor")
        if to_fraction(self.lo) < 0:
            raise DomainError("interval division requires a nonnegative dividend")
        return Interval(round_dir("div", (self.lo, o.hi), DOWN),
                        round_dir("div", (self.hi, o.lo), UP))

    def sqrt(self) -> "Interval":
        if to_fraction(self.lo) < 0:
            raise DomainError("interval sqrt requires a nonnegative lower endpoint")
        return Interval(round_dir("sqrt", (self.lo,), DOWN),
                        round_dir("sqrt", (self.hi,), UP))

    def __repr__(self):
        return f"Interval[{float(to_fraction(self.lo))!r}, {float(to_fraction(self.hi))!r}]"

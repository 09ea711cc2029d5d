# modules/exactnum.py
"""Exact scalars: rationals, points, real quadratic numbers and continued fractions."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, total_ordering

from mpmath import iv
from sympy import continued_fraction_periodic, factorint

from modules.errors import (
    ContinuedFractionExhaustedError,
    FieldMismatchError,
    RationalInputError,
)

logger = logging.getLogger(__name__)

Rational = Fraction
RatPoint = tuple  # tuple[Fraction, ...]


def as_point(coords) -> tuple:
    """Coerce an iterable of numbers to a tuple of Fractions."""
    point = tuple(Fraction(c) for c in coords)
    if not point:
        raise ValueError("a point needs at least one coordinate")
    return point


def den(point) -> int:
    """Least common denominator of the coordinates of a rational point."""
    point = as_point(point)
    return math.lcm(*(c.denominator for c in point))


def in_unit_cube(point) -> bool:
    return all(0 <= c <= 1 for c in point)


def farey_mediant(left: Fraction, right: Fraction) -> Fraction:
    """(p+r)/(q+s) for p/q and r/s in lowest terms."""
    left, right = Fraction(left), Fraction(right)
    return Fraction(left.numerator + right.numerator, left.denominator + right.denominator)


@lru_cache(maxsize=None)
def is_squarefree(d: int) -> bool:
    return d >= 2 and all(exp == 1 for exp in factorint(d).values())


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@total_ordering
class QuadExt:
    """An element a + b*sqrt(D) of the real quadratic field Q(sqrt(D))."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, a, b=0, d: int = 5) -> None:
        if not is_squarefree(d):
            raise FieldMismatchError(f"D={d} must be a square-free integer >= 2")
        self._a = Fraction(a)
        self._b = Fraction(b)
        self._d = d

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def d(self) -> int:
        return self._d

    @classmethod
    def golden(cls) -> QuadExt:
        """(sqrt(5) - 1) / 2."""
        return cls(Fraction(-1, 2), Fraction(1, 2), 5)

    @property
    def is_rational(self) -> bool:
        return self._b == 0

    def __repr__(self) -> str:
        return f"QuadExt({self._a}, {self._b}, {self._d})"

    def __str__(self) -> str:
        return f"{format_rational(self._a)}+{format_rational(self._b)}*sqrt({self._d})"

    def _coerce(self, other) -> QuadExt | None:
        if isinstance(other, QuadExt):
            if other.d != self._d:
                raise FieldMismatchError(f"cannot combine sqrt({self._d}) with sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self._d)
        return None

    def sign(self) -> int:
        """Exact sign by case analysis on a, b and a^2 versus b^2*D."""
        sa, sb = _sign(self._a), _sign(self._b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        gap = self._a * self._a - self._b * self._b * self._d
        if gap > 0:
            return sa
        if gap < 0:
            return sb
        return 0

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._a == other.a and self._b == other.b

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b, self._d))

    def __lt__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() < 0

    def __add__(self, other) -> QuadExt:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadExt(self._a + other.a, self._b + other.b, self._d)

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt(-self._a, -self._b, self._d)

    def __sub__(self, other) -> QuadExt:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadExt(self._a - other.a, self._b - other.b, self._d)

    def __rsub__(self, other) -> QuadExt:
        return (-self) + other

    def __mul__(self, other) -> QuadExt:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadExt(
            self._a * other.a + self._b * other.b * self._d,
            self._a * other.b + self._b * other.a,
            self._d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadExt:
        return QuadExt(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        return self._a * self._a - self._b * self._b * self._d

    def __truediv__(self, other) -> QuadExt:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(D))")
        num = self * other.conjugate()
        return QuadExt(num.a / n, num.b / n, self._d)

    def __rtruediv__(self, other) -> QuadExt:
        return QuadExt(other, 0, self._d) / self

    def __abs__(self) -> QuadExt:
        return -self if self.sign() < 0 else self

    def __floor__(self) -> int:
        # floor(sqrt(P/Q)) = isqrt(P*Q) // Q, then correct by exact comparison
        square = self._b * self._b * self._d
        root = math.isqrt(square.numerator * square.denominator) // square.denominator
        guess = math.floor(self._a) + (root if self._b >= 0 else -root - 1)
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess

    def to_interval(self, digits: int = 50):
        """Interval enclosure of the value at the given number of digits."""
        saved = iv.dps
        iv.dps = digits
        try:
            a = iv.mpf(self._a.numerator) / self._a.denominator
            b = iv.mpf(self._b.numerator) / self._b.denominator
            return a + b * iv.sqrt(self._d)
        finally:
            iv.dps = saved


def format_rational(x) -> str:
    """Always "p/q", also for integers."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    """Read "p/q" or an integer."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise RationalInputError(f"not a rational number: {text!r}") from e


def sign(x) -> int:
    """Exact sign of a Fraction, int or QuadExt."""
    if isinstance(x, QuadExt):
        return x.sign()
    return _sign(x)


@dataclass(frozen=True)
class ContinuedFraction:
    """[a0; a1, a2, ...] with an optional purely periodic tail."""

    quotients: tuple = ()
    period: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "quotients", tuple(int(q) for q in self.quotients))
        object.__setattr__(self, "period", tuple(int(q) for q in self.period))
        terms = self.quotients + self.period
        if not terms:
            raise ValueError("a continued fraction needs at least one partial quotient")
        if any(q < 1 for q in terms[1:]) or (self.quotients and self.quotients[0] < 0):
            raise ValueError(f"invalid partial quotients {terms}")
        if any(q < 1 for q in self.period):
            raise ValueError(f"invalid periodic tail {self.period}")

    @property
    def is_periodic(self) -> bool:
        return bool(self.period)

    def quotient(self, i: int) -> int:
        if i < len(self.quotients):
            return self.quotients[i]
        if not self.period:
            raise ContinuedFractionExhaustedError(
                f"partial quotient {i} requested from a finite expansion of length {len(self.quotients)}"
            )
        return self.period[(i - len(self.quotients)) % len(self.period)]

    def __str__(self) -> str:
        head = ",".join(str(q) for q in self.quotients)
        if self.period:
            return f"[{head};({','.join(str(q) for q in self.period)})]"
        return f"[{head}]"

    @classmethod
    def from_rational(cls, x) -> ContinuedFraction:
        x = Fraction(x)
        terms = []
        p, q = x.numerator, x.denominator
        while q:
            a, r = divmod(p, q)
            terms.append(a)
            p, q = q, r
        return cls(tuple(terms))

    @classmethod
    def from_quadext(cls, x: QuadExt) -> ContinuedFraction:
        """Expansion of a quadratic surd through sympy's periodic continued fractions."""
        if x.is_rational:
            return cls.from_rational(x.a)
        # x = (p + s*sqrt(d))/q with integers p, q and s = +-1
        q = math.lcm(x.a.denominator, x.b.denominator)
        p = int(x.a * q)
        m = int(x.b * q)
        terms = continued_fraction_periodic(p, q, m * m * x.d, 1 if m > 0 else -1)
        if terms and isinstance(terms[-1], list):
            head, period = terms[:-1], terms[-1]
        else:
            head, period = terms, []
        logger.debug(f"Expansion of {x}: pre-period {head}, period {period}")
        return cls(tuple(int(t) for t in head), tuple(int(t) for t in period))

    def value(self) -> Fraction:
        if self.period:
            raise RationalInputError("a periodic expansion has no rational value")
        return convergents(self, len(self.quotients))[-1]


def convergents(cf: ContinuedFraction, k: int) -> list:
    """First k convergents p_i/q_i by the standard recurrence."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if not cf.period and k > len(cf.quotients):
        raise ContinuedFractionExhaustedError(
            f"{k} convergents requested from a finite expansion of length {len(cf.quotients)}"
        )
    p_prev, p = 1, cf.quotient(0)
    q_prev, q = 0, 1
    result = [Fraction(p, q)]
    for i in range(1, k):
        a = cf.quotient(i)
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        result.append(Fraction(p, q))
    return result


def group_Z_plus_Z_equal(a: QuadExt, b: QuadExt) -> bool:
    """Whether Za + Z = Zb + Z for irrational a, b in (0, 1)."""
    if a.d != b.d:
        raise FieldMismatchError(f"cannot compare sqrt({a.d}) with sqrt({b.d})")
    if a.is_rational or b.is_rational:
        raise RationalInputError("both arguments must be irrational")
    return b == a or b == 1 - a


def simplest_between(lo, hi) -> Fraction:
    """The rational with least denominator in the open interval (lo, hi), 0 <= lo < hi."""
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if lo < 0:
        raise ValueError("simplest_between expects a nonnegative lower end")
    left_p, left_q = 0, 1
    right_p, right_q = 1, 0
    while True:
        m = Fraction(left_p + right_p, left_q + right_q)
        if m <= lo:
            left_p, left_q = m.numerator, m.denominator
        elif m >= hi:
            right_p, right_q = m.numerator, m.denominator
        else:
            return m

"""Exact arithmetic in real quadratic fields Q(sqrt(D)).

Rationals are plain :class:`fractions.Fraction` values.  :class:`QuadVal`
represents ``a + b*sqrt(D)`` with ``D`` square-free; every comparison is
decided by sign analysis and rational squaring, never by floating point.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

Rat = Fraction


class IncompatibleRadicands(ValueError):
    """Raised when two irrational values live in different quadratic fields."""


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n = k*k*m`` and ``m`` square-free."""
    k, m = 1, n
    f = 2
    while f * f <= m:
        while m % (f * f) == 0:
            m //= f * f
            k *= f
        f += 1
    return k, m


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class QuadVal:
    """The real number ``a + b*sqrt(D)`` with rational ``a, b``.

    Rational values are normalized to ``b = 0, D = 1``, so structural
    equality coincides with numeric equality.
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a=0, b=0, D: int = 1):
        a = _as_fraction(a)
        b = _as_fraction(b)
        D = int(D)
        if D < 0:
            raise ValueError("radicand must be nonnegative")
        if b == 0 or D == 0:
            b, D = Fraction(0), 1
        else:
            k, D = _squarefree_split(D)
            b *= k
            if D == 1:
                a, b = a + b, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):
        raise AttributeError("QuadVal is immutable")

    @classmethod
    def coerce(cls, x) -> QuadVal:
        if isinstance(x, QuadVal):
            return x
        return cls(_as_fraction(x))

    @classmethod
    def sqrt(cls, n) -> QuadVal:
        """Exact square root of a nonnegative rational."""
        n = _as_fraction(n)
        if n < 0:
            raise ValueError("square root of a negative number")
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(0, Fraction(1, n.denominator), n.numerator * n.denominator)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> QuadVal:
        return QuadVal(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 D
        diff = self.a * self.a - self.b * self.b * self.D
        return sa if diff > 0 else sb

    # arithmetic ----------------------------------------------------------

    @staticmethod
    def _radicand(x: QuadVal, y: QuadVal) -> int:
        if x.b == 0:
            return y.D
        if y.b == 0 or x.D == y.D:
            return x.D
        raise IncompatibleRadicands(f"sqrt({x.D}) and sqrt({y.D}) do not share a field")

    def __add__(self, other):
        try:
            other = QuadVal.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadVal(self.a + other.a, self.b + other.b, QuadVal._radicand(self, other))

    __radd__ = __add__

    def __neg__(self):
        return QuadVal(-self.a, -self.b, self.D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = QuadVal.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = QuadVal.coerce(other)
        except TypeError:
            return NotImplemented
        D = QuadVal._radicand(self, other)
        return QuadVal(
            self.a * other.a + self.b * other.b * D,
            self.a * other.b + self.b * other.a,
            D,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = QuadVal.coerce(other)
        except TypeError:
            return NotImplemented
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(D))")
        return self * QuadVal(other.a / n, -other.b / n, other.D)

    def __rtruediv__(self, other):
        return QuadVal.coerce(other) / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return QuadVal(1) / (self ** -e)
        out = QuadVal(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # comparison ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QuadVal):
            return (self.a, self.b, self.D) == (other.a, other.b, other.D)
        if isinstance(other, (int, Rational)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def _cmp(self, other) -> int:
        return quad_cmp(self, QuadVal.coerce(other))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.sign() != 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.D)

    def __floor__(self):
        if self.b == 0:
            return math.floor(self.a)
        n = math.floor(float(self))
        while self < n:
            n -= 1
        while self >= n + 1:
            n += 1
        return n

    def __ceil__(self):
        return -math.floor(-self)

    def __repr__(self):
        return f"QuadVal({str(self)!r})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        coeff = abs(self.b)
        surd = f"sqrt({self.D})" if coeff == 1 else f"{coeff}*sqrt({self.D})"
        if self.a == 0:
            return surd if self.b > 0 else f"-{surd}"
        return f"{self.a} {'+' if self.b > 0 else '-'} {surd}"


def quad_cmp(x: QuadVal, y: QuadVal) -> int:
    """Exact three-way comparison, returning -1, 0 or 1.

    Raises :class:`IncompatibleRadicands` when both values are irrational
    over different square-free radicands.
    """
    return (QuadVal.coerce(x) - QuadVal.coerce(y)).sign()


_RAT = r"[+-]?\s*\d+(?:\s*/\s*\d+)?"
_SURD = re.compile(
    rf"^\s*(?:(?P<a>{_RAT})\s*(?P<op>[+-])\s*)?(?P<b>{_RAT}\s*\*\s*|[+-]?\s*)sqrt\(\s*(?P<D>\d+)\s*\)\s*$"
)


def parse_quad(text: str) -> QuadVal:
    """Parse the canonical text form, e.g. ``"3 - 2*sqrt(2)"`` or ``"-1/2"``."""
    s = text.strip()
    m = _SURD.match(s)
    if m is None:
        try:
            return QuadVal(Fraction(s.replace(" ", "")))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact quadratic value: {text!r}") from exc
    a = Fraction(m["a"].replace(" ", "")) if m["a"] else Fraction(0)
    braw = m["b"].replace(" ", "").rstrip("*")
    if braw in ("", "+"):
        b = Fraction(1)
    elif braw == "-":
        b = Fraction(-1)
    else:
        b = Fraction(braw)
    if m["op"] == "-":
        b = -b
    return QuadVal(a, b, int(m["D"]))


class ExtPos:
    """A point of ``[0, inf]``: zero, infinity, or a positive finite value."""

    __slots__ = ("kind", "value")

    ZERO, FINITE, INF = 0, 1, 2

    def __init__(self, kind: int, value: QuadVal | None = None):
        if kind == ExtPos.FINITE:
            value = QuadVal.coerce(value)
            if value.sign() <= 0:
                raise ValueError(f"finite ExtPos payload must be positive, got {value}")
        else:
            value = None
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("ExtPos is immutable")

    @classmethod
    def zero(cls) -> ExtPos:
        return cls(cls.ZERO)

    @classmethod
    def inf(cls) -> ExtPos:
        return cls(cls.INF)

    @classmethod
    def of(cls, x) -> ExtPos:
        if isinstance(x, ExtPos):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        x = QuadVal.coerce(x)
        if x == 0:
            return cls.zero()
        return cls(cls.FINITE, x)

    @classmethod
    def parse(cls, text: str) -> ExtPos:
        s = text.strip().lower()
        if s in ("inf", "oo", "infinity", "+inf"):
            return cls.inf()
        return cls.of(parse_quad(text))

    @property
    def is_finite(self) -> bool:
        return self.kind == ExtPos.FINITE

    def _key_cmp(self, other: ExtPos) -> int:
        if self.kind != other.kind:
            return (self.kind > other.kind) - (self.kind < other.kind)
        if self.kind != ExtPos.FINITE:
            return 0
        return quad_cmp(self.value, other.value)

    def __eq__(self, other):
        if not isinstance(other, ExtPos):
            return NotImplemented
        return self.kind == other.kind and self.value == other.value

    def __hash__(self):
        return hash((self.kind, self.value))

    def __lt__(self, other):
        return self._key_cmp(ExtPos.of(other)) < 0

    def __le__(self, other):
        return self._key_cmp(ExtPos.of(other)) <= 0

    def __gt__(self, other):
        return self._key_cmp(ExtPos.of(other)) > 0

    def __ge__(self, other):
        return self._key_cmp(ExtPos.of(other)) >= 0

    def __repr__(self):
        return f"ExtPos({str(self)!r})"

    def __str__(self):
        if self.kind == ExtPos.ZERO:
            return "0"
        if self.kind == ExtPos.INF:
            return "inf"
        return str(self.value)


def interval_contains(lo, hi, x, open_flags: tuple[bool, bool] = (True, True)) -> bool:
    """Exact membership of ``x`` in the interval from ``lo`` to ``hi``."""
    lo, hi, x = ExtPos.of(lo), ExtPos.of(hi), ExtPos.of(x)
    if lo > hi:
        raise ValueError("empty interval: lo > hi")
    lo_open, hi_open = open_flags
    above = x > lo if lo_open else x >= lo
    below = x < hi if hi_open else x <= hi
    return above and below


def simplest_between(lo, hi) -> Fraction:
    """The rational of least height in the open interval ``(lo, hi)``.

    ``lo`` must be nonnegative; ``hi`` may be ``None`` for infinity.  Walks
    the Stern-Brocot tree via continued-fraction expansion.
    """
    lo = QuadVal.coerce(lo)
    if lo.sign() < 0:
        raise ValueError("lower end must be nonnegative")
    if hi is not None:
        hi = QuadVal.coerce(hi)
        if hi <= lo:
            raise ValueError("empty interval")
    n = math.floor(lo)
    if hi is None or hi > n + 1:
        return Fraction(n + 1)
    # n <= lo < hi <= n + 1
    inner_lo = 1 / (hi - n)
    inner_hi = None if lo == n else 1 / (lo - n)
    return n + 1 / simplest_between(inner_lo, inner_hi)


def isqrt_exact(n: int) -> int | None:
    """Integer square root of ``n`` if ``n`` is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None

"""Fixed-point dyadic interval arithmetic.

An :class:`RInterval` stores two integer mantissas and a number of fractional
bits ``prec``; it represents ``[lo / 2**prec, hi / 2**prec]``.  Every operation
rounds outward, so the true value of any expression built from enclosures is
contained in the computed enclosure.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from numbers import Rational

DEFAULT_PREC = 64


def precision_cap() -> int:
    """Largest working precision (fractional bits) before giving up on a sign."""
    return int(os.environ.get("BITANGENT_PRECISION_CAP", "4096"))


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class RInterval:
    __slots__ = ("_lo", "_hi", "prec")

    def __init__(self, lo, hi=None, prec: int = DEFAULT_PREC):
        if hi is None:
            hi = lo
        lo_f = _to_fraction(lo)
        hi_f = _to_fraction(hi)
        if lo_f > hi_f:
            raise ValueError(f"empty interval [{lo_f}, {hi_f}]")
        scale = 1 << prec
        self._lo = _floor_div(lo_f.numerator * scale, lo_f.denominator)
        self._hi = _ceil_div(hi_f.numerator * scale, hi_f.denominator)
        self.prec = prec

    @classmethod
    def _raw(cls, lo: int, hi: int, prec: int) -> "RInterval":
        obj = object.__new__(cls)
        obj._lo = lo
        obj._hi = hi
        obj.prec = prec
        return obj

    @classmethod
    def point(cls, x, prec: int = DEFAULT_PREC) -> "RInterval":
        return cls(x, x, prec)

    # -- inspection -----------------------------------------------------
    @property
    def lo(self) -> Fraction:
        return Fraction(self._lo, 1 << self.prec)

    @property
    def hi(self) -> Fraction:
        return Fraction(self._hi, 1 << self.prec)

    @property
    def mantissas(self) -> tuple[int, int]:
        return self._lo, self._hi

    def width(self) -> Fraction:
        return Fraction(self._hi - self._lo, 1 << self.prec)

    def mid(self) -> Fraction:
        return Fraction(self._lo + self._hi, 1 << (self.prec + 1))

    def __float__(self) -> float:
        return float(self.mid())

    def magnitude(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def mignitude(self) -> Fraction:
        if self._lo <= 0 <= self._hi:
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    def sign(self):
        """+1/-1 when the enclosure excludes zero, 0 for the exact point 0, else None."""
        if self._lo > 0:
            return 1
        if self._hi < 0:
            return -1
        if self._lo == 0 and self._hi == 0:
            return 0
        return None

    def contains(self, x) -> bool:
        if isinstance(x, RInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        x = _to_fraction(x)
        return self.lo <= x <= self.hi

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def contains_zero(self) -> bool:
        return self._lo <= 0 <= self._hi

    def intersects(self, other: "RInterval") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def hull(self, other: "RInterval") -> "RInterval":
        a, b, p = _align(self, _coerce(other, self.prec))
        return RInterval._raw(min(a[0], b[0]), max(a[1], b[1]), p)

    def with_prec(self, prec: int) -> "RInterval":
        if prec >= self.prec:
            s = prec - self.prec
            return RInterval._raw(self._lo << s, self._hi << s, prec)
        s = self.prec - prec
        return RInterval._raw(self._lo >> s, -((-self._hi) >> s), prec)

    def __repr__(self) -> str:
        return f"RInterval([{float(self.lo):.17g}, {float(self.hi):.17g}], prec={self.prec})"

    # -- arithmetic -----------------------------------------------------
    def __neg__(self) -> "RInterval":
        return RInterval._raw(-self._hi, -self._lo, self.prec)

    def __pos__(self) -> "RInterval":
        return self

    def __add__(self, other) -> "RInterval":
        o = _coerce(other, self.prec)
        if o is NotImplemented:
            return NotImplemented
        a, b, p = _align(self, o)
        return RInterval._raw(a[0] + b[0], a[1] + b[1], p)

    __radd__ = __add__

    def __sub__(self, other) -> "RInterval":
        o = _coerce(other, self.prec)
        if o is NotImplemented:
            return NotImplemented
        a, b, p = _align(self, o)
        return RInterval._raw(a[0] - b[1], a[1] - b[0], p)

    def __rsub__(self, other) -> "RInterval":
        o = _coerce(other, self.prec)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> "RInterval":
        if isinstance(other, int) and not isinstance(other, bool):
            if other >= 0:
                return RInterval._raw(self._lo * other, self._hi * other, self.prec)
            return RInterval._raw(self._hi * other, self._lo * other, self.prec)
        o = _coerce(other, self.prec)
        if o is NotImplemented:
            return NotImplemented
        (al, ah), (bl, bh), p = _align(self, o)
        if al >= 0 and bl >= 0:
            lo, hi = al * bl, ah * bh
        elif ah <= 0 and bh <= 0:
            lo, hi = ah * bh, al * bl
        elif al >= 0 and bh <= 0:
            lo, hi = ah * bl, al * bh
        elif ah <= 0 and bl >= 0:
            lo, hi = al * bh, ah * bl
        else:
            prods = (al * bl, al * bh, ah * bl, ah * bh)
            lo, hi = min(prods), max(prods)
        return RInterval._raw(lo >> p, -((-hi) >> p), p)

    __rmul__ = __mul__

    def square(self) -> "RInterval":
        lo, hi, p = self._lo, self._hi, self.prec
        if lo >= 0:
            a, b = lo * lo, hi * hi
        elif hi <= 0:
            a, b = hi * hi, lo * lo
        else:
            a, b = 0, max(lo * lo, hi * hi)
        return RInterval._raw(a >> p, -((-b) >> p), p)

    def __pow__(self, n: int) -> "RInterval":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        if n == 0:
            return RInterval._raw(1 << self.prec, 1 << self.prec, self.prec)
        if n % 2 == 0:
            return self.square() ** (n // 2)
        result = self
        base = self
        n -= 1
        while n:
            if n & 1:
                result = result * base
            base = base.square()
            n >>= 1
        return result

    def reciprocal(self) -> "RInterval":
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        p = self.prec
        num = 1 << (2 * p)
        return RInterval._raw(_floor_div(num, self._hi), _ceil_div(num, self._lo), p)

    def __truediv__(self, other) -> "RInterval":
        if isinstance(other, int) and not isinstance(other, bool) and other != 0:
            if other > 0:
                return RInterval._raw(self._lo // other, _ceil_div(self._hi, other), self.prec)
            return RInterval._raw(self._hi // other, _ceil_div(self._lo, other), self.prec)
        o = _coerce(other, self.prec)
        if o is NotImplemented:
            return NotImplemented
        if o.prec < self.prec:
            o = o.with_prec(self.prec)
        return self * o.reciprocal()

    def __rtruediv__(self, other) -> "RInterval":
        o = _coerce(other, self.prec)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def sqrt(self) -> "RInterval":
        """Square root; negative parts of the enclosure are clipped to zero."""
        if self._hi < 0:
            raise ValueError("square root of a negative interval")
        p = self.prec
        lo = max(self._lo, 0)
        s_lo = math.isqrt(lo << p)
        t = self._hi << p
        s_hi = math.isqrt(t)
        if s_hi * s_hi < t:
            s_hi += 1
        return RInterval._raw(s_lo, s_hi, p)

    def __abs__(self) -> "RInterval":
        if self._lo >= 0:
            return self
        if self._hi <= 0:
            return -self
        return RInterval._raw(0, max(-self._lo, self._hi), self.prec)

    # comparisons are certified: they raise when undecided
    def __lt__(self, other) -> bool:
        o = _coerce(other, self.prec)
        if self.hi < o.lo:
            return True
        if self.lo >= o.hi:
            return False
        raise ValueError("interval comparison undecided")

    def __gt__(self, other) -> bool:
        o = _coerce(other, self.prec)
        return o < self

    def __eq__(self, other) -> bool:
        if not isinstance(other, RInterval):
            return NotImplemented
        return (self.lo, self.hi) == (other.lo, other.hi)

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))


def _coerce(x, prec: int):
    if isinstance(x, RInterval):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, int):
        return RInterval._raw(x << prec, x << prec, prec)
    if isinstance(x, (Fraction, Rational)):
        return RInterval(x, x, prec)
    return NotImplemented


def _align(a: RInterval, b: RInterval):
    if a.prec == b.prec:
        return (a._lo, a._hi), (b._lo, b._hi), a.prec
    if a.prec > b.prec:
        s = a.prec - b.prec
        return (a._lo, a._hi), (b._lo << s, b._hi << s), a.prec
    s = b.prec - a.prec
    return (a._lo << s, a._hi << s), (b._lo, b._hi), b.prec


def as_interval(x, prec: int = DEFAULT_PREC) -> RInterval:
    if isinstance(x, RInterval):
        return x
    return RInterval(x, x, prec)


class CInterval:
    """Rectangular complex enclosure ``re + i*im``."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0, prec: int = DEFAULT_PREC):
        self.re = as_interval(re, prec)
        self.im = as_interval(im, self.re.prec)

    def __repr__(self) -> str:
        return f"CInterval({self.re!r}, {self.im!r})"

    @property
    def prec(self) -> int:
        return max(self.re.prec, self.im.prec)

    def __add__(self, other) -> "CInterval":
        if isinstance(other, CInterval):
            return CInterval(self.re + other.re, self.im + other.im)
        return CInterval(self.re + other, self.im)

    __radd__ = __add__

    def __neg__(self) -> "CInterval":
        return CInterval(-self.re, -self.im)

    def __sub__(self, other) -> "CInterval":
        if isinstance(other, CInterval):
            return CInterval(self.re - other.re, self.im - other.im)
        return CInterval(self.re - other, self.im)

    def __rsub__(self, other) -> "CInterval":
        return (-self) + other

    def __mul__(self, other) -> "CInterval":
        if isinstance(other, CInterval):
            return CInterval(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return CInterval(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CInterval":
        result = CInterval(1, 0, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "CInterval":
        return CInterval(self.re, -self.im)

    def abs2(self) -> RInterval:
        return self.re.square() + self.im.square()

    def excludes_zero(self) -> bool:
        return not (self.re.contains_zero() and self.im.contains_zero())

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

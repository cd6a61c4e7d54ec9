"""Directed-rounded real intervals for the positivity certification.

Outward rounding is realized portably by one-ulp inflation (math.nextafter)
after every arithmetic operation, which is all the containment property
needs: the exact image of any points in the inputs lies inside the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Number = Union[int, float, Fraction]

_INF = math.inf


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


class DomainError(ArithmeticError):
    """Operation undefined somewhere on the input interval."""


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi) or self.lo > self.hi:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Number) -> "Interval":
        if isinstance(x, Fraction):
            f = float(x)
            lo = f if Fraction(f) <= x else _down(f)
            hi = f if Fraction(f) >= x else _up(f)
            return cls(lo, hi)
        return cls(float(x), float(x))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0.0 <= self.hi

    def split(self) -> tuple["Interval", "Interval"]:
        m = self.mid
        return Interval(self.lo, m), Interval(m, self.hi)

    def __add__(self, other: "IntervalLike") -> "Interval":
        o = as_interval(other)
        return Interval(_down(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: "IntervalLike") -> "Interval":
        return self + (-as_interval(other))

    def __rsub__(self, other: "IntervalLike") -> "Interval":
        return as_interval(other) + (-self)

    def __mul__(self, other: "IntervalLike") -> "Interval":
        o = as_interval(other)
        cands = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(_down(min(cands)), _up(max(cands)))

    __rmul__ = __mul__

    def __truediv__(self, other: "IntervalLike") -> "Interval":
        o = as_interval(other)
        if o.contains_zero():
            raise DomainError(f"division by interval containing zero: {o}")
        cands = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Interval(_down(min(cands)), _up(max(cands)))

    def __rtruediv__(self, other: "IntervalLike") -> "Interval":
        return as_interval(other) / self

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"


IntervalLike = Union[Interval, int, float, Fraction]


def as_interval(x: IntervalLike) -> Interval:
    return x if isinstance(x, Interval) else Interval.point(x)


def ilog(x: Interval) -> Interval:
    """Monotone enclosure of log; the argument must be strictly positive."""
    if x.lo <= 0.0:
        raise DomainError(f"log of interval touching zero or below: {x}")
    return Interval(_down(math.log(x.lo)), _up(math.log(x.hi)))


def iexp(x: Interval) -> Interval:
    return Interval(_down(math.exp(x.lo)), _up(math.exp(x.hi)))


def intersect(a: Interval, b: Interval) -> Interval:
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        raise ValueError(f"empty intersection of {a} and {b}")
    return Interval(lo, hi)

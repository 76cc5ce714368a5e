"""Exact intervals on the real line with open/closed endpoints."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any


@dataclass(frozen=True)
class Interval:
    """A possibly empty interval.

    Endpoints are exact numbers: Fractions for equilibrium ranges, or
    quadratic irrationals for welfare crossings. Use :meth:`make` rather than
    the constructor so that degenerate bounds collapse to the empty interval.
    """

    lower: Any
    upper: Any
    lower_closed: bool
    upper_closed: bool
    empty: bool = False

    @classmethod
    def make(cls, lower, upper, lower_closed: bool, upper_closed: bool) -> Interval:
        if lower > upper or (lower == upper and not (lower_closed and upper_closed)):
            return EMPTY
        return cls(lower, upper, lower_closed, upper_closed)

    @classmethod
    def closed(cls, lower, upper) -> Interval:
        return cls.make(lower, upper, True, True)

    @classmethod
    def open(cls, lower, upper) -> Interval:
        return cls.make(lower, upper, False, False)

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def contains(self, x) -> bool:
        if self.empty:
            return False
        above = x >= self.lower if self.lower_closed else x > self.lower
        below = x <= self.upper if self.upper_closed else x < self.upper
        return above and below

    def intersect(self, other: Interval) -> Interval:
        if self.empty or other.empty:
            return EMPTY
        if self.lower > other.lower:
            lo, lc = self.lower, self.lower_closed
        elif self.lower < other.lower:
            lo, lc = other.lower, other.lower_closed
        else:
            lo, lc = self.lower, self.lower_closed and other.lower_closed
        if self.upper < other.upper:
            hi, hc = self.upper, self.upper_closed
        elif self.upper > other.upper:
            hi, hc = other.upper, other.upper_closed
        else:
            hi, hc = self.upper, self.upper_closed and other.upper_closed
        return Interval.make(lo, hi, lc, hc)

    def overlaps(self, other: Interval) -> bool:
        return not self.intersect(other).empty

    def subtract(self, other: Interval) -> list[Interval]:
        """Pieces of ``self`` not covered by ``other`` (at most two)."""
        if self.empty:
            return []
        if other.empty:
            return [self]
        left = Interval.make(self.lower, other.lower, self.lower_closed, not other.lower_closed)
        right = Interval.make(other.upper, self.upper, not other.upper_closed, self.upper_closed)
        pieces = (self.intersect(left), self.intersect(right))
        return [piece for piece in pieces if not piece.empty]

    def sample_point(self) -> Fraction:
        """A rational point inside the interval (the midpoint, or the sole point)."""
        if self.empty:
            raise ValueError("empty interval has no points")
        if self.lower == self.upper:
            return Fraction(self.lower)
        for digits in (12, 24, 48, 96):
            mid = (_approx(self.lower, digits) + _approx(self.upper, digits)) / 2
            if self.contains(mid):
                return mid
        raise ArithmeticError(f"could not find a rational point in {self}")

    def __str__(self) -> str:
        if self.empty:
            return "empty"
        return (("[" if self.lower_closed else "(") + f"{self.lower}, {self.upper}"
                + ("]" if self.upper_closed else ")"))


EMPTY = Interval(Fraction(0), Fraction(0), False, False, True)
UNIT_OPEN = Interval(Fraction(0), Fraction(1), False, False)


def _approx(x, digits: int) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return x.rational_approximation(digits)

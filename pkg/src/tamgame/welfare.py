"""Expected net welfare of symmetric profiles as exact quadratics in p(t_h)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .interval import UNIT_OPEN, Interval
from .model import (
    TYPES, CostModel, PureStrategy, ScalarLike, TamModel, TypeDistribution, as_distribution,
    exante_payoffs, stage_payoffs, GrandState, AgentType,
)
from .thresholds import sne_interval


def _is_square(q: Fraction) -> bool:
    n, d = q.numerator, q.denominator
    return n >= 0 and math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def _sqrt_exact(q: Fraction) -> Fraction:
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


def _sign(u: Fraction, k: Fraction, d: Fraction) -> int:
    """Sign of ``u + k * sqrt(d)`` for ``d > 0``."""
    if k == 0:
        return (u > 0) - (u < 0)
    if u == 0:
        return 1 if k > 0 else -1
    if (u > 0) == (k > 0):
        return 1 if u > 0 else -1
    # opposite signs: compare magnitudes squared
    diff = u * u - k * k * d
    s = (diff > 0) - (diff < 0)
    return s if u > 0 else -s


class QuadraticIrrational:
    """The real number ``rational + coeff * sqrt(radicand)`` with a non-square radicand."""

    __slots__ = ("rational", "coeff", "radicand")

    def __init__(self, rational: Fraction, coeff: Fraction, radicand: Fraction):
        if radicand <= 0 or _is_square(radicand) or coeff == 0:
            raise ValueError("use a Fraction for rational values")
        self.rational, self.coeff, self.radicand = rational, coeff, radicand

    def _cmp(self, other) -> int:
        if isinstance(other, (int, Fraction)):
            return _sign(self.rational - other, self.coeff, self.radicand)
        if isinstance(other, QuadraticIrrational):
            if other.radicand != self.radicand:
                raise TypeError("cannot compare surds with different radicands")
            return _sign(self.rational - other.rational, self.coeff - other.coeff,
                         self.radicand)
        return NotImplemented

    def __eq__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c == 0

    def __hash__(self):
        return hash((self.rational, self.coeff, self.radicand))

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __float__(self) -> float:
        return float(self.rational_approximation(20))

    def rational_approximation(self, digits: int = 20) -> Fraction:
        with localcontext() as ctx:
            ctx.prec = digits + 10
            root = Decimal(self.radicand.numerator).sqrt() / Decimal(self.radicand.denominator).sqrt()
        return self.rational + self.coeff * Fraction(root)

    def __repr__(self) -> str:
        return f"QuadraticIrrational({self.rational!r}, {self.coeff!r}, {self.radicand!r})"

    def __str__(self) -> str:
        op = "+" if self.coeff > 0 else "-"
        return f"{self.rational} {op} {abs(self.coeff)}*sqrt({self.radicand})"


Number = Fraction | QuadraticIrrational


def quadratic_roots(a2: Fraction, a1: Fraction, a0: Fraction) -> list[Number] | None:
    """Real roots in increasing order; ``None`` for the zero polynomial."""
    if a2 == 0:
        if a1 == 0:
            return None if a0 == 0 else []
        return [-a0 / a1]
    disc = a1 * a1 - 4 * a2 * a0
    if disc < 0:
        return []
    centre = -a1 / (2 * a2)
    if disc == 0:
        return [centre]
    half_width = 1 / (2 * abs(a2))
    if _is_square(disc):
        r = _sqrt_exact(disc) * half_width
        return [centre - r, centre + r]
    return [QuadraticIrrational(centre, -half_width, disc),
            QuadraticIrrational(centre, half_width, disc)]


@dataclass(frozen=True)
class WelfareCurve:
    """``a2 * p_h**2 + a1 * p_h + a0``."""

    a2: Fraction
    a1: Fraction
    a0: Fraction

    def __call__(self, p: TypeDistribution | ScalarLike) -> Fraction:
        x = p.p_high if isinstance(p, TypeDistribution) else Fraction(p)
        return (self.a2 * x + self.a1) * x + self.a0

    def __sub__(self, other: WelfareCurve) -> WelfareCurve:
        return WelfareCurve(self.a2 - other.a2, self.a1 - other.a1, self.a0 - other.a0)

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a2, self.a1, self.a0)

    def __str__(self) -> str:
        return f"{self.a2} p_h^2 + {self.a1} p_h + {self.a0}"


def welfare_curve(m: TamModel, c: CostModel, s: PureStrategy) -> WelfareCurve:
    """One employee's ex-ante payoff under ``(s, s)`` as a polynomial in p(t_h).

    This is half the firm's expected net surplus.
    """
    L, H = AgentType.LOW, AgentType.HIGH
    u = {(t1, t2): stage_payoffs(m, c, GrandState(s(t1), s(t2), t1, t2))[0]
         for t1 in TYPES for t2 in TYPES}
    mixed = u[L, H] + u[H, L]
    # p_l^2 = 1 - 2p + p^2, p_l p_h = p - p^2
    return WelfareCurve(u[L, L] - mixed + u[H, H], mixed - 2 * u[L, L], u[L, L])


def welfare_at(m: TamModel, c: CostModel, s: PureStrategy,
               p: TypeDistribution | ScalarLike) -> Fraction:
    return exante_payoffs(m, c, s, s, as_distribution(p))[0]


def sign_pieces(curve: WelfareCurve, domain: Interval = UNIT_OPEN) -> list[tuple[Interval, int]]:
    """Split ``domain`` into maximal pieces of constant sign of ``curve``."""
    if domain.empty:
        return []
    roots = quadratic_roots(*curve.coefficients)
    if roots is None:
        return [(domain, 0)]
    inside = [r for r in roots if domain.contains(r)]
    cuts = []
    lo, lo_closed = domain.lower, domain.lower_closed
    for r in inside:
        cuts.append(Interval.make(lo, r, lo_closed, False))
        cuts.append(Interval.closed(r, r))
        lo, lo_closed = r, False
    cuts.append(Interval.make(lo, domain.upper, lo_closed, domain.upper_closed))
    out = []
    for piece in cuts:
        if piece.empty:
            continue
        if piece.lower == piece.upper:
            out.append((piece, 0))
            continue
        v = curve(piece.sample_point())
        out.append((piece, (v > 0) - (v < 0)))
    return out


@dataclass(frozen=True)
class DominanceReport:
    first: PureStrategy
    second: PureStrategy
    difference: WelfareCurve
    roots: list[Number] | None
    pieces: list[tuple[Interval, int]]
    joint_region: Interval
    joint_pieces: list[tuple[Interval, int]]

    @property
    def roots_in_unit(self) -> list[Number]:
        return [r for r in self.roots or [] if UNIT_OPEN.contains(r)]

    def leader(self, sign: int) -> PureStrategy | None:
        return self.first if sign > 0 else self.second if sign < 0 else None

    def dominance_region(self, s: PureStrategy, joint: bool = True) -> list[Interval]:
        pieces = self.joint_pieces if joint else self.pieces
        return [iv for iv, sign in pieces if sign != 0 and self.leader(sign) == s]

    def dominates_throughout_joint_region(self, s: PureStrategy) -> bool:
        """True iff ``s`` has strictly higher welfare at every point where both are SNE."""
        if self.joint_region.empty:
            return False
        return all(self.leader(sign) == s for _, sign in self.joint_pieces)


def welfare_dominance(m: TamModel, c: CostModel, first: PureStrategy,
                      second: PureStrategy) -> DominanceReport:
    diff = welfare_curve(m, c, first) - welfare_curve(m, c, second)
    joint = sne_interval(m, c, first).intersect(sne_interval(m, c, second))
    return DominanceReport(
        first, second, diff,
        quadratic_roots(*diff.coefficients),
        sign_pieces(diff, UNIT_OPEN),
        joint,
        sign_pieces(diff, joint),
    )

"""Two-variable mixed strict/weak linear systems and their Farkas certificates.

A system ``A x <= b, B x < c`` over ``x = (p(t_l), p(t_h))`` is decided by
exact Fourier-Motzkin elimination. Every derived row carries the non-negative
multipliers that produced it from the original rows, so an infeasible system
ends in a contradictory row whose multipliers are the dual certificate
``(y, z)``. A feasible system yields a primal point by back-substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .model import CostModel, TamModel
from .thresholds import L, H, compute_deltas

Row = tuple[tuple[Fraction, Fraction], Fraction]

N_VARS = 2


class MalformedSystemError(ValueError):
    pass


@dataclass(frozen=True)
class LinearSystem:
    weak_rows: tuple[Row, ...]
    strict_rows: tuple[Row, ...]

    def __post_init__(self):
        for coeffs, _ in self.weak_rows + self.strict_rows:
            if len(coeffs) != N_VARS:
                raise MalformedSystemError(
                    f"rows must have exactly {N_VARS} coefficients, got {coeffs}")

    @classmethod
    def of(cls, weak: Sequence, strict: Sequence) -> LinearSystem:
        def norm(rows):
            return tuple((tuple(Fraction(a) for a in coeffs), Fraction(b)) for coeffs, b in rows)
        return cls(norm(weak), norm(strict))

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        weak = all(_dot(a, x) <= b for a, b in self.weak_rows)
        strict = all(_dot(a, x) < b for a, b in self.strict_rows)
        return weak and strict


def _dot(a, x) -> Fraction:
    return sum((ai * xi for ai, xi in zip(a, x)), Fraction(0))


@dataclass(frozen=True)
class PrimalFeasible:
    point: tuple[Fraction, Fraction]

    def verify(self, system: LinearSystem) -> bool:
        return system.satisfied_by(self.point)


@dataclass(frozen=True)
class DualFeasible:
    y: tuple[Fraction, ...]
    z: tuple[Fraction, ...]

    def verify(self, system: LinearSystem) -> bool:
        if any(v < 0 for v in self.y + self.z):
            return False
        for j in range(N_VARS):
            col = (sum((yi * a[j] for yi, (a, _) in zip(self.y, system.weak_rows)), Fraction(0))
                   + sum((zi * a[j] for zi, (a, _) in zip(self.z, system.strict_rows)),
                         Fraction(0)))
            if col != 0:
                return False
        value = (sum((yi * b for yi, (_, b) in zip(self.y, system.weak_rows)), Fraction(0))
                 + sum((zi * b for zi, (_, b) in zip(self.z, system.strict_rows)), Fraction(0)))
        return value < 0 or (value == 0 and any(v != 0 for v in self.z))


FeasibilityResult = PrimalFeasible | DualFeasible


@dataclass(frozen=True)
class _Derived:
    coeffs: tuple[Fraction, ...]
    bound: Fraction
    strict: bool
    multipliers: tuple[Fraction, ...]


def _eliminate(rows: list[_Derived], var: int) -> list[_Derived]:
    pos = [r for r in rows if r.coeffs[var] > 0]
    neg = [r for r in rows if r.coeffs[var] < 0]
    out = [r for r in rows if r.coeffs[var] == 0]
    for rp in pos:
        for rn in neg:
            lp, ln = -rn.coeffs[var], rp.coeffs[var]
            out.append(_Derived(
                tuple(lp * a + ln * b for a, b in zip(rp.coeffs, rn.coeffs)),
                lp * rp.bound + ln * rn.bound,
                rp.strict or rn.strict,
                tuple(lp * a + ln * b for a, b in zip(rp.multipliers, rn.multipliers)),
            ))
    return out


def _pick(rows: list[_Derived], var: int, fixed: dict[int, Fraction]) -> Fraction:
    """A value of ``var`` satisfying every row once the ``fixed`` variables are set."""
    lo = hi = None  # (bound, strict), tightest seen
    for r in rows:
        a = r.coeffs[var]
        if a == 0:
            continue
        rest = r.bound - sum((r.coeffs[j] * v for j, v in fixed.items()), Fraction(0))
        bound = rest / a
        if a > 0:
            if hi is None or bound < hi[0] or (bound == hi[0] and r.strict):
                hi = (bound, r.strict)
        elif lo is None or bound > lo[0] or (bound == lo[0] and r.strict):
            lo = (bound, r.strict)
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi[0] - 1
    if hi is None:
        return lo[0] + 1
    return (lo[0] + hi[0]) / 2


def farkas_check(system: LinearSystem) -> FeasibilityResult:
    """Decide ``{A x <= b, B x < c}``; return a primal point or a dual certificate."""
    n_weak, n_strict = len(system.weak_rows), len(system.strict_rows)
    n = n_weak + n_strict
    rows0 = []
    for i, (a, b) in enumerate(system.weak_rows + system.strict_rows):
        unit = tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))
        rows0.append(_Derived(tuple(a), b, i >= n_weak, unit))
    rows1 = _eliminate(rows0, 0)
    rows2 = _eliminate(rows1, 1)
    for r in rows2:
        if r.bound < 0 or (r.bound == 0 and r.strict):
            return DualFeasible(r.multipliers[:n_weak], r.multipliers[n_weak:])
    x1 = _pick(rows1, 1, {})
    x0 = _pick(rows0, 0, {1: x1})
    result = PrimalFeasible((x0, x1))
    if not result.verify(system):
        raise ArithmeticError("back-substitution produced an infeasible point")
    return result


def build_farkas_systems(m: TamModel, c: CostModel) -> tuple[LinearSystem, LinearSystem]:
    """The existence system for (s_hh, s_hh) and the system for its failure.

    The first asks for a distribution at which a low type does not gain from
    lowering effort against an opponent on high effort; the second asks for
    one at which the deviation strictly pays.
    """
    d = compute_deltas(m, c)
    a = d.delta_cost_low - d.raise_vs_high(L, L)
    b = d.delta_cost_low - d.raise_vs_high(L, H)
    simplex = [((1, 1), 1), ((-1, -1), -1)]
    existence = LinearSystem.of(
        weak=[((a, b), 0)] + simplex,
        strict=[((0, -1), 0), ((-1, 0), 0)],
    )
    failure = LinearSystem.of(
        weak=simplex,
        strict=[((-a, -b), 0), ((-1, 0), 0), ((0, -1), 0)],
    )
    return existence, failure

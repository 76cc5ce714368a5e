"""Brute-force ex-ante Nash analysis over the four pure strategies."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .model import (
    STRATEGIES, CostModel, PureStrategy, ScalarLike, TamModel, TypeDistribution,
    as_distribution, exante_matrix,
)

Profile = tuple[PureStrategy, PureStrategy]

DEFAULT_GRID = 200


@dataclass(frozen=True)
class DeviationWitness:
    deviator: int
    from_strategy: PureStrategy
    to_strategy: PureStrategy
    payoff_before: Fraction
    payoff_after: Fraction

    def __post_init__(self):
        if not self.payoff_after > self.payoff_before:
            raise ValueError("a deviation witness must be strictly profitable")

    def __str__(self) -> str:
        return (f"player {self.deviator}: {self.from_strategy} -> {self.to_strategy} "
                f"({self.payoff_before} -> {self.payoff_after})")


def best_response_violations(m: TamModel, c: CostModel, s1: PureStrategy, s2: PureStrategy,
                             p: TypeDistribution | ScalarLike) -> list[DeviationWitness]:
    """Every strictly profitable unilateral deviation from ``(s1, s2)``."""
    return _violations(exante_matrix(m, c, p), s1, s2)


def _violations(pi: dict, s1: PureStrategy, s2: PureStrategy) -> list[DeviationWitness]:
    # pi holds player 1's payoffs; player 2 at (a, b) earns pi[b, a]
    out = []
    base_1, base_2 = pi[s1, s2], pi[s2, s1]
    for alt in STRATEGIES:
        if alt != s1 and pi[alt, s2] > base_1:
            out.append(DeviationWitness(1, s1, alt, base_1, pi[alt, s2]))
    for alt in STRATEGIES:
        if alt != s2 and pi[alt, s1] > base_2:
            out.append(DeviationWitness(2, s2, alt, base_2, pi[alt, s1]))
    return out


def is_exante_nash(m: TamModel, c: CostModel, s1: PureStrategy, s2: PureStrategy,
                   p: TypeDistribution | ScalarLike) -> bool:
    # ties do not break an equilibrium
    return not best_response_violations(m, c, s1, s2, p)


@dataclass(frozen=True)
class EquilibriumReport:
    p: TypeDistribution
    sne_set: frozenset[PureStrategy]
    asymmetric_nash: frozenset[Profile]
    witnesses: dict[Profile, list[DeviationWitness]] = field(compare=False)

    def is_sne(self, s: PureStrategy) -> bool:
        return s in self.sne_set

    def sorted_sne(self) -> list[PureStrategy]:
        return [s for s in STRATEGIES if s in self.sne_set]


def enumerate_sne(m: TamModel, c: CostModel, p: TypeDistribution | ScalarLike,
                  include_asymmetric: bool = True) -> EquilibriumReport:
    p = as_distribution(p)
    pi = exante_matrix(m, c, p)
    witnesses: dict[Profile, list[DeviationWitness]] = {}
    sne = set()
    asym = set()
    for s1 in STRATEGIES:
        for s2 in STRATEGIES:
            if s1 != s2 and not include_asymmetric:
                continue
            w = _violations(pi, s1, s2)
            witnesses[s1, s2] = w
            if w:
                continue
            if s1 == s2:
                sne.add(s1)
            else:
                asym.add((s1, s2))
    return EquilibriumReport(p, frozenset(sne), frozenset(asym), witnesses)


def grid_points(grid_n: int) -> list[TypeDistribution]:
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    return [TypeDistribution(Fraction(k, grid_n)) for k in range(1, grid_n)]


def sne_grid_sweep(m: TamModel, c: CostModel, grid_n: int = DEFAULT_GRID,
                   include_asymmetric: bool = False
                   ) -> list[tuple[TypeDistribution, EquilibriumReport]]:
    """SNE sets at ``p_high = k / grid_n`` for ``k = 1 .. grid_n - 1``."""
    return [(p, enumerate_sne(m, c, p, include_asymmetric)) for p in grid_points(grid_n)]

"""Coalition-dependent strategies: effort may differ between probation and joint work.

Player 1's ex-ante payoff separates into three parts:

* a joint part, ``sum p(t1)p(t2) [M(grand)/2 - C(joint effort)]``;
* an own probation part, ``sum p(t) [M(singleton)/2 - C(probation effort)]``;
* minus the opponent's probation part ``sum p(t) M(opponent singleton)/2``.

The code below evaluates the full double sum; the separation is only used
by :func:`probation_best_efforts` and is checked in the tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .equilibrium import grid_points
from .model import (
    EFFORTS, STRATEGIES, TYPES, AgentType, CostModel, Effort, PureStrategy, ScalarLike,
    TamModel, TypeDistribution, as_distribution,
)
from .validation import check_hypotheses


@dataclass(frozen=True, order=True)
class CoalitionStrategy:
    probation: PureStrategy
    joint: PureStrategy

    @property
    def name(self) -> str:
        return f"({self.probation.name}, {self.joint.name})"

    def __str__(self) -> str:
        return self.name

    @classmethod
    def uniform(cls, s: PureStrategy) -> CoalitionStrategy:
        """The base-model strategy: same effort alone and jointly."""
        return cls(s, s)


COALITION_STRATEGIES = tuple(CoalitionStrategy(a, b) for a in STRATEGIES for b in STRATEGIES)


def _payoff_1(m: TamModel, c: CostModel, s1: CoalitionStrategy, s2: CoalitionStrategy,
              p: TypeDistribution, charge_probation: bool) -> Fraction:
    total = Fraction(0)
    for t1, t2, w in p.profile_weights():
        e1p, e2p = s1.probation(t1), s2.probation(t2)
        e1j, e2j = s1.joint(t1), s2.joint(t2)
        share = (m.grand(e1j, e2j, t1, t2) - m.single(e2p, t2) + m.single(e1p, t1)) / 2
        cost = c(e1j, t1) + (c(e1p, t1) if charge_probation else 0)
        total += w * (share - cost)
    return total


def exante_payoffs_coalition(m: TamModel, c: CostModel, s1: CoalitionStrategy,
                             s2: CoalitionStrategy, p: TypeDistribution | ScalarLike,
                             charge_probation: bool = True) -> tuple[Fraction, Fraction]:
    """Ex-ante payoffs; ``charge_probation=False`` drops the probation cost term."""
    m.require_symmetric()
    p = as_distribution(p)
    return (_payoff_1(m, c, s1, s2, p, charge_probation),
            _payoff_1(m, c, s2, s1, p, charge_probation))


def probation_gain(m: TamModel, c: CostModel, e: Effort, t: AgentType) -> Fraction:
    return m.single(e, t) / 2 - c(e, t)


def probation_best_efforts(m: TamModel, c: CostModel) -> dict[AgentType, frozenset[Effort]]:
    """Per-type argmax of the separable probation term (independent of p and the opponent)."""
    m.require_symmetric()
    out = {}
    for t in TYPES:
        gains = {e: probation_gain(m, c, e, t) for e in EFFORTS}
        best = max(gains.values())
        out[t] = frozenset(e for e, g in gains.items() if g == best)
    return out


def enumerate_coalition_sne(m: TamModel, c: CostModel, p: TypeDistribution | ScalarLike,
                            charge_probation: bool = True,
                            forced_equal: bool = False) -> frozenset[CoalitionStrategy]:
    """Symmetric coalition strategies ``sigma`` with ``(sigma, sigma)`` an ex-ante Nash equilibrium.

    Every alternative strategy is tried as a deviation. With
    ``forced_equal`` both the candidates and the deviations are restricted to
    probation == joint.
    """
    m.require_symmetric()
    p = as_distribution(p)
    space = COALITION_STRATEGIES
    if forced_equal:
        space = tuple(s for s in space if s.probation == s.joint)
    out = set()
    for sigma in space:
        base = _payoff_1(m, c, sigma, sigma, p, charge_probation)
        # by symmetry player 2's deviations mirror player 1's
        if all(_payoff_1(m, c, alt, sigma, p, charge_probation) <= base
               for alt in space if alt != sigma):
            out.add(sigma)
    return frozenset(out)


@dataclass(frozen=True)
class UniquenessViolation:
    p: TypeDistribution
    kind: str
    equilibria: frozenset[CoalitionStrategy]

    def __str__(self) -> str:
        eqs = ", ".join(str(s) for s in sorted(self.equilibria))
        return f"p_high={self.p.p_high}: {self.kind} among {{{eqs}}}"


@dataclass(frozen=True)
class UniquenessReport:
    supported: bool
    points_checked: int
    violations: tuple[UniquenessViolation, ...]
    joint_components: dict[Fraction, frozenset[PureStrategy]] = field(compare=False)

    @property
    def holds(self) -> bool:
        return not self.violations


def verify_grand_component_uniqueness(m: TamModel, c: CostModel,
                                      grid_n: int = 100) -> UniquenessReport:
    """Check that all coalition SNEs share one joint component at each grid point.

    Also checks that their probation components are per-type best efforts.
    ``supported`` records whether super-modularity, concavity and cost
    sub-modularity hold; the check runs either way.
    """
    hyp = check_hypotheses(m, c)
    supported = hyp.characterization_supported and hyp.concavity.passed
    best = probation_best_efforts(m, c)
    violations = []
    joints = {}
    for p in grid_points(grid_n):
        eqs = enumerate_coalition_sne(m, c, p)
        joint = frozenset(s.joint for s in eqs)
        joints[p.p_high] = joint
        if len(joint) > 1:
            violations.append(UniquenessViolation(p, "distinct joint components", eqs))
        if any(s.probation(t) not in best[t] for s in eqs for t in TYPES):
            violations.append(UniquenessViolation(p, "probation effort off the argmax", eqs))
    return UniquenessReport(supported, grid_n - 1, tuple(violations), joints)


def probation_patterns(best: dict[AgentType, frozenset[Effort]]) -> list[PureStrategy]:
    """Pure strategies whose efforts are best at every type."""
    lo, hi = AgentType.LOW, AgentType.HIGH
    return [PureStrategy(a, b) for a, b in itertools.product(sorted(best[lo]), sorted(best[hi]))]

"""Closed-form SNE ranges in p(t_h) and the existence/uniqueness checks built on them.

Notation used in names: ``raise_vs_high(t1, t2)`` is the change in player 1's
Shapley share when player 1 raises effort from low to high while player 2 plays
high, at type profile ``(t1, t2)``; ``raise_vs_low`` is the same with player 2
playing low.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .interval import EMPTY, UNIT_OPEN, Interval
from .model import (
    S_HH, S_HL, S_LH, S_LL, STRATEGIES, AgentType, CostModel, DegenerateModelError, Effort,
    GrandState, PureStrategy, TamModel, shapley_shares,
)
from .validation import HypothesisStatus, check_hypotheses

RationalInterval = Interval

L, H = AgentType.LOW, AgentType.HIGH


@dataclass(frozen=True)
class DeltaQuantities:
    delta_cost_low: Fraction
    delta_cost_high: Fraction
    # (player-2 effort, t1, t2) -> Sh_1(e_h, e2) - Sh_1(e_l, e2)
    delta_sh: dict[tuple[Effort, AgentType, AgentType], Fraction] = field(compare=False)

    def raise_vs_high(self, t1: AgentType, t2: AgentType) -> Fraction:
        return self.delta_sh[Effort.HIGH, t1, t2]

    def raise_vs_low(self, t1: AgentType, t2: AgentType) -> Fraction:
        return self.delta_sh[Effort.LOW, t1, t2]

    def delta_cost(self, t: AgentType) -> Fraction:
        return self.delta_cost_high if t is H else self.delta_cost_low

    @property
    def margin_vs_low_type(self) -> Fraction:
        return self.raise_vs_high(L, L) - self.delta_cost_low

    @property
    def margin_vs_high_type(self) -> Fraction:
        return self.raise_vs_high(L, H) - self.delta_cost_low


def compute_deltas(m: TamModel, c: CostModel) -> DeltaQuantities:
    m.require_symmetric()
    delta_sh = {}
    for e2 in (Effort.LOW, Effort.HIGH):
        for t1 in (L, H):
            for t2 in (L, H):
                up = shapley_shares(m, GrandState(Effort.HIGH, e2, t1, t2)).share_1
                down = shapley_shares(m, GrandState(Effort.LOW, e2, t1, t2)).share_1
                delta_sh[e2, t1, t2] = up - down
    return DeltaQuantities(c.delta(L), c.delta(H), delta_sh)


def _solve_on_unit(coef: Fraction, rhs: Fraction, sense: str) -> Interval:
    """``{p in (0,1) : coef * p >= rhs}`` (sense ``">="``) or ``<=``."""
    if coef == 0:
        holds = 0 >= rhs if sense == ">=" else 0 <= rhs
        return UNIT_OPEN if holds else EMPTY
    bound = rhs / coef
    if (sense == ">=") == (coef > 0):
        half = Interval.make(bound, Fraction(1), True, False)
    else:
        half = Interval.make(Fraction(0), bound, False, True)
    return half.intersect(UNIT_OPEN)


def sne_interval(m: TamModel, c: CostModel, s: PureStrategy,
                 deltas: DeltaQuantities | None = None) -> Interval:
    """Range of p(t_h) in (0,1) making ``(s, s)`` an SNE, from the closed forms.

    The closed forms keep only the binding best-response constraint(s); they
    agree with brute force when the machine is super-modular and the cost
    sub-modular.
    """
    d = deltas or compute_deltas(m, c)
    if s == S_HL:
        return EMPTY
    if s == S_HH:
        # a low-type player must not prefer e_l against an opponent on e_h
        denom = d.raise_vs_high(L, H) - d.raise_vs_high(L, L)
        if denom == 0:
            raise DegenerateModelError(
                "equal Shapley increments at (t_l,t_l) and (t_l,t_h): supermodularity fails")
        return _solve_on_unit(denom, d.delta_cost_low - d.raise_vs_high(L, L), ">=")
    if s == S_LL:
        # a high-type player must not prefer e_h against an opponent on e_l
        denom = d.raise_vs_low(H, H) - d.raise_vs_low(H, L)
        if denom == 0:
            raise DegenerateModelError(
                "equal Shapley increments at (t_h,t_l) and (t_h,t_h): supermodularity fails")
        return _solve_on_unit(denom, d.delta_cost_high - d.raise_vs_low(H, L), "<=")
    if s == S_LH:
        stay_low = _solve_on_unit(d.raise_vs_high(L, H) - d.raise_vs_low(L, L),
                                  d.delta_cost_low - d.raise_vs_low(L, L), "<=")
        stay_high = _solve_on_unit(d.raise_vs_high(H, H) - d.raise_vs_low(H, L),
                                   d.delta_cost_high - d.raise_vs_low(H, L), ">=")
        return stay_low.intersect(stay_high)
    raise ValueError(f"unknown strategy {s!r}")


@dataclass(frozen=True)
class IntervalReport:
    intervals: dict[PureStrategy, Interval]
    deltas: DeltaQuantities
    hypotheses: HypothesisStatus | None
    notes: tuple[str, ...] = ()

    @property
    def supported(self) -> bool:
        """Whether the closed forms are backed by super/sub-modularity."""
        return self.hypotheses is None or self.hypotheses.characterization_supported


def interval_report(m: TamModel, c: CostModel, skip_validation: bool = False) -> IntervalReport:
    d = compute_deltas(m, c)
    hyp = None if skip_validation else check_hypotheses(m, c)
    notes = []
    if hyp is not None and not hyp.characterization_supported:
        notes.append("unsupported by hypotheses: machine not super-modular or cost not "
                     "sub-modular; ranges may disagree with brute force")
    for t, label in ((L, "t_l"), (H, "t_h")):
        if d.raise_vs_high(t, H) - d.raise_vs_low(t, L) <= 0:
            notes.append(f"s_lh bound at {label} has a non-positive denominator; "
                         "solved with the inequality direction adjusted")
    intervals = {s: sne_interval(m, c, s, d) for s in STRATEGIES}
    return IntervalReport(intervals, d, hyp, tuple(notes))


@dataclass(frozen=True)
class ExistenceReport:
    deltas: DeltaQuantities
    chains: dict[PureStrategy, bool]
    nontrivial: dict[PureStrategy, bool]
    margin_vs_low_type: Fraction
    margin_vs_high_type: Fraction

    @property
    def agreement(self) -> dict[PureStrategy, bool]:
        return {s: self.chains[s] == self.nontrivial[s] for s in self.chains}

    @property
    def margin_signs_consistent(self) -> bool:
        """A non-negative margin at (t_l,t_l) forces a positive one at (t_l,t_h), and conversely."""
        a_ok = not (self.margin_vs_low_type >= 0) or self.margin_vs_high_type > 0
        b_ok = not (self.margin_vs_high_type <= 0) or self.margin_vs_low_type < 0
        return a_ok and b_ok


def _between(lo: Fraction, x: Fraction, hi: Fraction) -> bool:
    return lo < x < hi


def existence_conditions(m: TamModel, c: CostModel) -> ExistenceReport:
    """Evaluate each inequality chain next to the interval it characterises.

    ``nontrivial[s]`` is true when some p makes ``(s, s)`` an SNE and some
    other p does not, read off the closed-form ranges.
    """
    d = compute_deltas(m, c)
    dcl, dch = d.delta_cost_low, d.delta_cost_high
    hh_chain = _between(d.raise_vs_high(L, L), dcl, d.raise_vs_high(L, H))
    ll_chain = _between(d.raise_vs_low(H, L), dch, d.raise_vs_low(H, H))
    lh_i = (_between(d.raise_vs_low(L, L), dcl, d.raise_vs_high(L, H))
            or _between(d.raise_vs_low(H, L), dch, d.raise_vs_high(H, H)))
    lh_ii = (_between(d.raise_vs_high(L, H), dcl, d.raise_vs_low(L, L))
             or _between(d.raise_vs_high(H, H), dch, d.raise_vs_low(H, L)))
    chains = {S_HH: hh_chain, S_LL: ll_chain, S_LH: lh_i != lh_ii, S_HL: False}
    nontrivial = {}
    for s in STRATEGIES:
        iv = sne_interval(m, c, s, d)
        nontrivial[s] = not iv.empty and iv != UNIT_OPEN
    return ExistenceReport(d, chains, nontrivial, d.margin_vs_low_type, d.margin_vs_high_type)


@dataclass(frozen=True)
class RationalizabilityReport:
    intervals: dict[PureStrategy, Interval]
    witnesses: dict[PureStrategy, Fraction | None]
    overlaps: dict[tuple[PureStrategy, PureStrategy], Interval]
    concave_case: bool

    @property
    def rationalizable(self) -> dict[PureStrategy, bool]:
        return {s: w is not None for s, w in self.witnesses.items()}

    @property
    def pairwise_disjoint(self) -> bool:
        return not self.overlaps

    @property
    def disjointness_claim_holds(self) -> bool | None:
        """Disjointness under concavity; ``None`` when concavity etc. does not hold."""
        return self.pairwise_disjoint if self.concave_case else None


def rationalizability(m: TamModel, c: CostModel) -> RationalizabilityReport:
    """Find, for each strategy, a p at which it is the unique SNE."""
    d = compute_deltas(m, c)
    intervals = {s: sne_interval(m, c, s, d) for s in STRATEGIES}
    witnesses: dict[PureStrategy, Fraction | None] = {}
    for s in STRATEGIES:
        pieces = [intervals[s]] if not intervals[s].empty else []
        for other in STRATEGIES:
            if other == s:
                continue
            pieces = [q for piece in pieces for q in piece.subtract(intervals[other])]
        witnesses[s] = pieces[0].sample_point() if pieces else None
    overlaps = {}
    for i, a in enumerate(STRATEGIES):
        for b in STRATEGIES[i + 1:]:
            common = intervals[a].intersect(intervals[b])
            if not common.empty:
                overlaps[a, b] = common
    hyp = check_hypotheses(m, c)
    concave_case = hyp.characterization_supported and hyp.concavity.passed
    return RationalizabilityReport(intervals, witnesses, overlaps, concave_case)

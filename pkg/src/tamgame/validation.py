"""Structural checks on the machine and the cost function.

Each validator scans the whole (finite) domain and returns a
:class:`ValidationReport` listing every violated instance together with a
witness that can be re-checked by hand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .model import (
    EFFORTS, GRAND_STATES, TYPES, AgentType, CostModel, Effort, GrandState,
    SingletonState, TamModel,
)

Profile = tuple[int, int]


@dataclass(frozen=True)
class Violation:
    assumption: str
    witness: tuple
    values: tuple[Fraction, ...]

    def __str__(self) -> str:
        vals = ", ".join(str(v) for v in self.values)
        return f"{self.assumption}: witness {_fmt(self.witness)} values ({vals})"


@dataclass(frozen=True)
class ValidationReport:
    name: str
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed

    def summary(self) -> str:
        if self.passed:
            return f"{self.name}: passed"
        lines = [f"{self.name}: FAILED ({len(self.violations)} violation(s))"]
        lines += [f"  - {v}" for v in self.violations]
        return "\n".join(lines)


def _fmt(obj) -> str:
    if isinstance(obj, (Effort, AgentType)):
        return obj.label
    if isinstance(obj, tuple):
        return "(" + ",".join(_fmt(o) for o in obj) + ")"
    return str(obj)


class IntelligenceMode(Enum):
    GRAND_ONLY = "grand-only"
    STRICT = "strict"


def profile_less(a: Profile, b: Profile) -> bool:
    """Strict componentwise order on two-player profiles.

    ``(x_l, x_h)`` and ``(x_h, x_l)`` are incomparable.
    """
    return a != b and a[0] <= b[0] and a[1] <= b[1]


EFFORT_PROFILES = tuple(itertools.product(EFFORTS, repeat=2))
TYPE_PROFILES = tuple(itertools.product(TYPES, repeat=2))


def _comparable_pairs(profiles):
    return [(a, b) for a in profiles for b in profiles if profile_less(a, b)]


EFFORT_PAIRS = _comparable_pairs(EFFORT_PROFILES)
TYPE_PAIRS = _comparable_pairs(TYPE_PROFILES)

EFFORT_CHAINS = (
    ((Effort.LOW, Effort.LOW), (Effort.LOW, Effort.HIGH), (Effort.HIGH, Effort.HIGH)),
    ((Effort.LOW, Effort.LOW), (Effort.HIGH, Effort.LOW), (Effort.HIGH, Effort.HIGH)),
)


def _g(m: TamModel, e, t) -> Fraction:
    return m.grand(e[0], e[1], t[0], t[1])


def validate_symmetry(m: TamModel) -> ValidationReport:
    out = []
    for g in GRAND_STATES:
        h = g.swapped()
        if g < h and m[g] != m[h]:
            out.append(Violation("symmetry", (_state_tuple(g), _state_tuple(h)), (m[g], m[h])))
    return ValidationReport("symmetry", tuple(out))


def _state_tuple(g: GrandState) -> tuple:
    return (g.effort_1, g.effort_2, g.type_1, g.type_2)


def validate_intelligence(m: TamModel,
                          mode: IntelligenceMode = IntelligenceMode.GRAND_ONLY) -> ValidationReport:
    """Distinct outputs for distinct configurations, up to player relabelling.

    ``GRAND_ONLY`` compares grand states among themselves and singletons among
    themselves; ``STRICT`` also forbids singleton/grand collisions and a
    singleton worth the same as the empty coalition.
    """
    out = []
    classes = sorted({min(g, g.swapped()) for g in GRAND_STATES})
    for a, b in itertools.combinations(classes, 2):
        if m[a] == m[b]:
            out.append(Violation("intelligence/grand", (_state_tuple(a), _state_tuple(b)),
                                 (m[a], m[b])))
    singles = [SingletonState(e, t) for e in EFFORTS for t in TYPES]
    for a, b in itertools.combinations(singles, 2):
        if m[a] == m[b]:
            out.append(Violation("intelligence/singleton", ((a.effort, a.agent_type),
                                                            (b.effort, b.agent_type)),
                                 (m[a], m[b])))
    if mode is IntelligenceMode.STRICT:
        for s in singles:
            if m[s] == 0:
                out.append(Violation("intelligence/empty", ((s.effort, s.agent_type),),
                                     (m[s],)))
            for g in classes:
                if m[s] == m[g]:
                    out.append(Violation("intelligence/cross", ((s.effort, s.agent_type),
                                                                _state_tuple(g)),
                                         (m[s], m[g])))
    return ValidationReport(f"intelligence[{mode.value}]", tuple(out))


def validate_machine_monotonicity(m: TamModel) -> ValidationReport:
    out = []
    for t in TYPE_PROFILES:
        for lo, hi in EFFORT_PAIRS:
            if not _g(m, lo, t) < _g(m, hi, t):
                out.append(Violation("monotone in effort", (lo, hi, t),
                                     (_g(m, lo, t), _g(m, hi, t))))
    for e in EFFORT_PROFILES:
        for lo, hi in TYPE_PAIRS:
            if not _g(m, e, lo) < _g(m, e, hi):
                out.append(Violation("monotone in type", (lo, hi, e),
                                     (_g(m, e, lo), _g(m, e, hi))))
    for t in TYPES:
        lo, hi = m.single(Effort.LOW, t), m.single(Effort.HIGH, t)
        if not lo < hi:
            out.append(Violation("singleton monotone in effort", (Effort.LOW, Effort.HIGH, t),
                                 (lo, hi)))
    for e in EFFORTS:
        lo, hi = m.single(e, AgentType.LOW), m.single(e, AgentType.HIGH)
        if not lo < hi:
            out.append(Violation("singleton monotone in type",
                                 (AgentType.LOW, AgentType.HIGH, e), (lo, hi)))
    return ValidationReport("machine monotonicity", tuple(out))


def validate_supermodularity(m: TamModel) -> ValidationReport:
    """Effort increments must be strictly larger at more efficient type profiles."""
    out = []
    for t_lo, t_hi in TYPE_PAIRS:
        for e_lo, e_hi in EFFORT_PAIRS:
            inc_lo = _g(m, e_hi, t_lo) - _g(m, e_lo, t_lo)
            inc_hi = _g(m, e_hi, t_hi) - _g(m, e_lo, t_hi)
            if not inc_lo < inc_hi:
                out.append(Violation("supermodularity", (e_lo, e_hi, t_lo, t_hi),
                                     (inc_lo, inc_hi)))
    inc_lo = m.single(Effort.HIGH, AgentType.LOW) - m.single(Effort.LOW, AgentType.LOW)
    inc_hi = m.single(Effort.HIGH, AgentType.HIGH) - m.single(Effort.LOW, AgentType.HIGH)
    if not inc_lo < inc_hi:
        out.append(Violation("singleton supermodularity",
                             (Effort.LOW, Effort.HIGH, AgentType.LOW, AgentType.HIGH),
                             (inc_lo, inc_hi)))
    return ValidationReport("supermodularity", tuple(out))


def validate_concavity(m: TamModel) -> ValidationReport:
    """Along each maximal effort chain the output increments strictly shrink."""
    out = []
    for t in TYPE_PROFILES:
        for chain in EFFORT_CHAINS:
            v = [_g(m, e, t) for e in chain]
            first, second = v[1] - v[0], v[2] - v[1]
            if not second < first:
                out.append(Violation("concavity", (t, chain), (first, second)))
    return ValidationReport("concavity", tuple(out))


def validate_cost(c: CostModel) -> ValidationReport:
    out = []
    for t in TYPES:
        if not c(Effort.LOW, t) < c(Effort.HIGH, t):
            out.append(Violation("cost monotone in effort", (t,),
                                 (c(Effort.LOW, t), c(Effort.HIGH, t))))
    for e in EFFORTS:
        if not c(e, AgentType.HIGH) < c(e, AgentType.LOW):
            out.append(Violation("cost efficient in type", (e,),
                                 (c(e, AgentType.HIGH), c(e, AgentType.LOW))))
    if not c.delta(AgentType.HIGH) < c.delta(AgentType.LOW):
        out.append(Violation("cost submodularity", (AgentType.HIGH, AgentType.LOW),
                             (c.delta(AgentType.HIGH), c.delta(AgentType.LOW))))
    return ValidationReport("cost", tuple(out))


@dataclass(frozen=True)
class HypothesisStatus:
    """Outcome of every validator on a (machine, cost) pair."""

    symmetry: ValidationReport
    intelligence: ValidationReport
    intelligence_strict: ValidationReport
    monotonicity: ValidationReport
    supermodularity: ValidationReport
    cost: ValidationReport
    concavity: ValidationReport

    @property
    def reports(self) -> tuple[ValidationReport, ...]:
        return (self.symmetry, self.intelligence, self.intelligence_strict, self.monotonicity,
                self.supermodularity, self.cost, self.concavity)

    @property
    def characterization_supported(self) -> bool:
        """Super-modular machine and sub-modular cost: the interval results apply."""
        return self.symmetry.passed and self.supermodularity.passed and self.cost.passed

    @property
    def valid(self) -> bool:
        """All standing assumptions (intelligence in grand-only mode, no concavity)."""
        return all(r.passed for r in (self.symmetry, self.intelligence, self.monotonicity,
                                      self.supermodularity, self.cost))

    @property
    def valid_concave(self) -> bool:
        return self.valid and self.concavity.passed


def check_hypotheses(m: TamModel, c: CostModel) -> HypothesisStatus:
    return HypothesisStatus(
        symmetry=validate_symmetry(m),
        intelligence=validate_intelligence(m, IntelligenceMode.GRAND_ONLY),
        intelligence_strict=validate_intelligence(m, IntelligenceMode.STRICT),
        monotonicity=validate_machine_monotonicity(m),
        supermodularity=validate_supermodularity(m),
        cost=validate_cost(c),
        concavity=validate_concavity(m),
    )

"""Core model: the task aggregator machine, costs, strategies and payoffs.

Every quantity is an exact :class:`fractions.Fraction`. Model values are
usually built from decimal strings (``"12.9"`` becomes ``129/10``) so that
strict and weak inequalities downstream are decidable without rounding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from decimal import Decimal
from enum import IntEnum
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Union

ScalarLike = Union[Fraction, int, str, Decimal]


class ModelError(ValueError):
    """Raised when a model is malformed or violates a hard precondition."""


class AsymmetricModelError(ModelError):
    pass


class DegenerateModelError(ModelError):
    """A closed-form quantity is undefined because a strict assumption fails."""


class Effort(IntEnum):
    LOW = 0
    HIGH = 1

    @property
    def label(self) -> str:
        return "e_l" if self is Effort.LOW else "e_h"


class AgentType(IntEnum):
    LOW = 0
    HIGH = 1

    @property
    def label(self) -> str:
        return "t_l" if self is AgentType.LOW else "t_h"


EFFORTS = (Effort.LOW, Effort.HIGH)
TYPES = (AgentType.LOW, AgentType.HIGH)


def to_scalar(value: ScalarLike) -> Fraction:
    """Convert ``value`` to an exact rational.

    Floats are rejected: they cannot carry decimal inputs exactly.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Decimal)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True, order=True)
class SingletonState:
    effort: Effort
    agent_type: AgentType

    def __str__(self) -> str:
        return f"({self.effort.label},{self.agent_type.label})"


@dataclass(frozen=True, order=True)
class GrandState:
    effort_1: Effort
    effort_2: Effort
    type_1: AgentType
    type_2: AgentType

    @property
    def efforts(self) -> tuple[Effort, Effort]:
        return (self.effort_1, self.effort_2)

    @property
    def types(self) -> tuple[AgentType, AgentType]:
        return (self.type_1, self.type_2)

    def swapped(self) -> GrandState:
        return GrandState(self.effort_2, self.effort_1, self.type_2, self.type_1)

    def singleton(self, player: int) -> SingletonState:
        if player == 1:
            return SingletonState(self.effort_1, self.type_1)
        return SingletonState(self.effort_2, self.type_2)

    def __str__(self) -> str:
        return (f"({self.effort_1.label},{self.effort_2.label},"
                f"{self.type_1.label},{self.type_2.label})")


SINGLETON_STATES = tuple(SingletonState(e, t) for e in EFFORTS for t in TYPES)
GRAND_STATES = tuple(
    GrandState(e1, e2, t1, t2)
    for e1, e2 in itertools.product(EFFORTS, repeat=2)
    for t1, t2 in itertools.product(TYPES, repeat=2)
)


def _index_singleton(s: SingletonState) -> int:
    return 2 * s.effort + s.agent_type


def _index_grand(g: GrandState) -> int:
    return 8 * g.effort_1 + 4 * g.effort_2 + 2 * g.type_1 + g.type_2


@dataclass(frozen=True)
class TamModel:
    """Output of the machine on every admissible coalition.

    Values are stored positionally (``SINGLETON_STATES`` and ``GRAND_STATES``
    order) so the model is hashable; use :meth:`from_maps` to build one from
    dictionaries. The empty coalition is always worth zero.
    """

    singleton_values: tuple[Fraction, ...]
    grand_values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.singleton_values) != 4 or len(self.grand_values) != 16:
            raise ModelError("a TAM needs exactly 4 singleton and 16 grand values")
        for v in self.singleton_values + self.grand_values:
            if not isinstance(v, Fraction):
                raise TypeError("TAM values must be Fractions; use TamModel.from_maps")
            if v < 0:
                raise ModelError(f"TAM values must be non-negative, got {v}")

    @classmethod
    def from_maps(cls, singleton: Mapping[SingletonState, ScalarLike],
                  grand: Mapping[GrandState, ScalarLike]) -> TamModel:
        missing = [str(s) for s in SINGLETON_STATES if s not in singleton]
        missing += [str(g) for g in GRAND_STATES if g not in grand]
        if missing:
            raise ModelError(f"missing TAM entries: {', '.join(missing)}")
        return cls(
            tuple(to_scalar(singleton[s]) for s in SINGLETON_STATES),
            tuple(to_scalar(grand[g]) for g in GRAND_STATES),
        )

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.singleton_values, self.grand_values))

    @property
    def empty_value(self) -> Fraction:
        return Fraction(0)

    def single(self, effort: Effort, agent_type: AgentType) -> Fraction:
        return self.singleton_values[2 * effort + agent_type]

    def grand(self, e1: Effort, e2: Effort, t1: AgentType, t2: AgentType) -> Fraction:
        return self.grand_values[8 * e1 + 4 * e2 + 2 * t1 + t2]

    def __getitem__(self, state: SingletonState | GrandState) -> Fraction:
        if isinstance(state, SingletonState):
            return self.singleton_values[_index_singleton(state)]
        return self.grand_values[_index_grand(state)]

    def replace(self, state: SingletonState | GrandState, value: ScalarLike) -> TamModel:
        """Copy of the model with a single entry changed."""
        singles = list(self.singleton_values)
        grands = list(self.grand_values)
        if isinstance(state, SingletonState):
            singles[_index_singleton(state)] = to_scalar(value)
        else:
            grands[_index_grand(state)] = to_scalar(value)
        return TamModel(tuple(singles), tuple(grands))

    @cached_property
    def is_symmetric(self) -> bool:
        return all(self[g] == self[g.swapped()] for g in GRAND_STATES)

    def require_symmetric(self) -> None:
        if not self.is_symmetric:
            raise AsymmetricModelError(
                "grand values must satisfy M(e1,e2,t1,t2) = M(e2,e1,t2,t1)")


@dataclass(frozen=True)
class CostModel:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != 4:
            raise ModelError("a cost model needs exactly 4 values")
        if not all(isinstance(v, Fraction) for v in self.values):
            raise TypeError("cost values must be Fractions; use CostModel.from_map")

    @classmethod
    def from_map(cls, cost: Mapping[tuple[Effort, AgentType], ScalarLike]) -> CostModel:
        missing = [f"({e.label},{t.label})" for e in EFFORTS for t in TYPES if (e, t) not in cost]
        if missing:
            raise ModelError(f"missing cost entries: {', '.join(missing)}")
        return cls(tuple(to_scalar(cost[e, t]) for e in EFFORTS for t in TYPES))

    @classmethod
    def zero(cls) -> CostModel:
        return cls((Fraction(0),) * 4)

    def __call__(self, effort: Effort, agent_type: AgentType) -> Fraction:
        return self.values[2 * effort + agent_type]

    def delta(self, agent_type: AgentType) -> Fraction:
        """Cost increment of raising effort at ``agent_type``."""
        return self(Effort.HIGH, agent_type) - self(Effort.LOW, agent_type)


@dataclass(frozen=True, order=True)
class PureStrategy:
    """Map from types to efforts: ``at_low`` is played at t_l, ``at_high`` at t_h."""

    at_low: Effort
    at_high: Effort

    def __call__(self, agent_type: AgentType) -> Effort:
        return self.at_high if agent_type is AgentType.HIGH else self.at_low

    @property
    def name(self) -> str:
        return "s_" + "lh"[self.at_low] + "lh"[self.at_high]

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> PureStrategy:
        key = text.strip().lower().removeprefix("s_")
        if len(key) != 2 or any(ch not in "lh" for ch in key):
            raise ValueError(f"unknown strategy {text!r}; expected one of s_ll, s_lh, s_hl, s_hh")
        return cls(Effort("lh".index(key[0])), Effort("lh".index(key[1])))


S_LL = PureStrategy(Effort.LOW, Effort.LOW)
S_LH = PureStrategy(Effort.LOW, Effort.HIGH)
S_HL = PureStrategy(Effort.HIGH, Effort.LOW)
S_HH = PureStrategy(Effort.HIGH, Effort.HIGH)
STRATEGIES = (S_LL, S_LH, S_HL, S_HH)


@dataclass(frozen=True)
class TypeDistribution:
    """I.i.d. type distribution, parametrised by the probability of t_h."""

    p_high: Fraction

    def __post_init__(self):
        p = to_scalar(self.p_high)
        object.__setattr__(self, "p_high", p)
        if not 0 < p < 1:
            raise ValueError(f"p(t_h) must lie strictly between 0 and 1, got {p}")

    @property
    def p_low(self) -> Fraction:
        return 1 - self.p_high

    def __call__(self, agent_type: AgentType) -> Fraction:
        return self.p_high if agent_type is AgentType.HIGH else self.p_low

    def profile_weights(self) -> tuple[tuple[AgentType, AgentType, Fraction], ...]:
        return self._weights

    @cached_property
    def _weights(self) -> tuple[tuple[AgentType, AgentType, Fraction], ...]:
        return tuple((t1, t2, self(t1) * self(t2))
                     for t1, t2 in itertools.product(TYPES, repeat=2))


def as_distribution(p: TypeDistribution | ScalarLike) -> TypeDistribution:
    return p if isinstance(p, TypeDistribution) else TypeDistribution(to_scalar(p))


@dataclass(frozen=True)
class ShapleyShares:
    share_1: Fraction
    share_2: Fraction

    def __iter__(self):
        return iter((self.share_1, self.share_2))

    @property
    def total(self) -> Fraction:
        return self.share_1 + self.share_2


def shapley_shares(m: TamModel, g: GrandState) -> ShapleyShares:
    """Shapley value of the two-player characteristic-form game at ``g``."""
    m.require_symmetric()
    whole = m[g]
    alone_1 = m[g.singleton(1)]
    alone_2 = m[g.singleton(2)]
    return ShapleyShares((whole - alone_2 + alone_1) / 2, (whole - alone_1 + alone_2) / 2)


def stage_payoffs(m: TamModel, c: CostModel, g: GrandState) -> tuple[Fraction, Fraction]:
    sh1, sh2 = shapley_shares(m, g)
    return sh1 - c(g.effort_1, g.type_1), sh2 - c(g.effort_2, g.type_2)


# Player 1's stage payoff for all 16 grand states, indexed like GRAND_STATES.
# Player 2's payoff at g equals player 1's at g.swapped() by symmetry.
_STAGE_CACHE: dict[tuple[TamModel, CostModel], tuple[Fraction, ...]] = {}


def _stage_table(m: TamModel, c: CostModel) -> tuple[Fraction, ...]:
    key = (m, c)
    table = _STAGE_CACHE.get(key)
    if table is None:
        table = tuple(stage_payoffs(m, c, g)[0] for g in GRAND_STATES)
        if len(_STAGE_CACHE) > 4096:
            _STAGE_CACHE.clear()
        _STAGE_CACHE[key] = table
    return table


def _exante_1(table, s1: PureStrategy, s2: PureStrategy, p: TypeDistribution) -> Fraction:
    total = Fraction(0)
    for t1, t2, w in p.profile_weights():
        total += w * table[8 * s1(t1) + 4 * s2(t2) + 2 * t1 + t2]
    return total


def exante_matrix(m: TamModel, c: CostModel, p: TypeDistribution | ScalarLike
                  ) -> dict[tuple[PureStrategy, PureStrategy], Fraction]:
    """Player 1's ex-ante payoff for every pure profile (player 2's is the transpose)."""
    m.require_symmetric()
    p = as_distribution(p)
    table = _stage_table(m, c)
    return {(s1, s2): _exante_1(table, s1, s2, p) for s1 in STRATEGIES for s2 in STRATEGIES}


def exante_payoffs(m: TamModel, c: CostModel, s1: PureStrategy, s2: PureStrategy,
                   p: TypeDistribution | ScalarLike) -> tuple[Fraction, Fraction]:
    """Ex-ante expected payoffs ``(Pi_1, Pi_2)`` of the profile ``(s1, s2)``."""
    m.require_symmetric()
    p = as_distribution(p)
    table = _stage_table(m, c)
    return _exante_1(table, s1, s2, p), _exante_1(table, s2, s1, p)

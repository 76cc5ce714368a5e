"""Exact analysis of two-employee effort games on a task aggregator machine."""

from .coalition import (
    COALITION_STRATEGIES, CoalitionStrategy, enumerate_coalition_sne, exante_payoffs_coalition,
    probation_best_efforts, verify_grand_component_uniqueness,
)
from .equilibrium import enumerate_sne, is_exante_nash, sne_grid_sweep
from .farkas import LinearSystem, build_farkas_systems, farkas_check
from .interval import Interval
from .io import load_model, parse_model, serialize_model
from .model import (
    S_HH, S_HL, S_LH, S_LL, STRATEGIES, AgentType, CostModel, Effort, GrandState,
    PureStrategy, SingletonState, TamModel, TypeDistribution, exante_payoffs, shapley_shares,
    stage_payoffs,
)
from .thresholds import compute_deltas, existence_conditions, rationalizability, sne_interval
from .validation import IntelligenceMode, check_hypotheses
from .welfare import QuadraticIrrational, welfare_curve, welfare_dominance

__version__ = "0.1.0"

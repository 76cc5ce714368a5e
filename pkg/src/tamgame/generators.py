"""Seeded random models for property tests and the acceptance suite.

Machines come from a parametric family

    M(e, t) = base + a (e1 + e2) + b (t1 + t2) + g (e1 t1 + e2 t2)
              + x (e1 t2 + e2 t1) + d e1 e2 + z t1 t2 + noise

with efforts and types coded 0/1. ``g, x > 0`` gives super-modularity,
``a + d > 0`` keeps output increasing in effort and ``d < -|g - x|`` gives
concavity along both effort chains. A little symmetric noise breaks ties so
the intelligence check passes. Every candidate is re-validated and rejected
if any check fails, so the family only has to be a good proposal.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .model import GRAND_STATES, SINGLETON_STATES, CostModel, Effort, TamModel
from .thresholds import L, H, compute_deltas, rationalizability
from .validation import check_hypotheses

MAX_TRIES = 10_000


def _cents(rng: random.Random, lo: int, hi: int) -> Fraction:
    return Fraction(rng.randint(lo, hi), 100)


def random_symmetric_model(rng: random.Random) -> TamModel:
    """Arbitrary symmetric machine with values in [0, 50] on a 1/100 grid."""
    grand = {}
    for g in GRAND_STATES:
        if g.swapped() in grand:
            grand[g] = grand[g.swapped()]
        else:
            grand[g] = _cents(rng, 0, 5000)
    singles = {s: _cents(rng, 0, 5000) for s in SINGLETON_STATES}
    return TamModel.from_maps(singles, grand)


def _parametric_machine(rng: random.Random, concave: bool) -> TamModel | None:
    a = _cents(rng, 100, 400)
    g = _cents(rng, 20, 200)
    x = _cents(rng, 20, 200)
    if concave:
        hi = int((-abs(g - x)) * 100) - 1
        lo = max(int(-a * 100) + 1, hi - 200)
        if lo > hi:
            return None
        d = Fraction(rng.randint(lo, hi), 100)
    else:
        d = _cents(rng, int(-a * 50), 300)
    base = _cents(rng, 500, 1000)
    b = _cents(rng, 50, 300)
    z = _cents(rng, 0, 100)
    grand = {}
    for st in GRAND_STATES:
        if st.swapped() in grand:
            grand[st] = grand[st.swapped()]
            continue
        e1, e2, t1, t2 = (int(v) for v in (st.effort_1, st.effort_2, st.type_1, st.type_2))
        value = (base + a * (e1 + e2) + b * (t1 + t2) + g * (e1 * t1 + e2 * t2)
                 + x * (e1 * t2 + e2 * t1) + d * e1 * e2 + z * t1 * t2)
        grand[st] = value + _cents(rng, -3, 3)
    s0 = _cents(rng, 300, 800)
    sa, sb, sg = _cents(rng, 100, 500), _cents(rng, 100, 400), _cents(rng, 10, 200)
    singles = {s: s0 + sa * int(s.effort) + sb * int(s.agent_type)
               + sg * int(s.effort) * int(s.agent_type) for s in SINGLETON_STATES}
    return TamModel.from_maps(singles, grand)


def _pick_between(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction | None:
    """A 1/100-grid point strictly inside (lo, hi), if any."""
    first = math.floor(lo * 100) + 1
    last = math.ceil(hi * 100) - 1
    if first > last:
        return None
    return Fraction(rng.randint(first, last), 100)


def _cost_from_increments(rng: random.Random, dcl: Fraction, dch: Fraction) -> CostModel:
    base = _cents(rng, 100, 300)
    rebate = _cents(rng, 1, int(base * 100) - 1)
    return CostModel.from_map({
        (Effort.LOW, L): base, (Effort.HIGH, L): base + dcl,
        (Effort.LOW, H): base - rebate, (Effort.HIGH, H): base - rebate + dch,
    })


def _random_cost(rng: random.Random, m: TamModel, interesting: bool) -> CostModel | None:
    d = compute_deltas(m, CostModel.zero())
    if interesting:
        # put one threshold strictly inside (0, 1); the other increment is free
        if rng.random() < 0.5:
            dcl = _pick_between(rng, d.raise_vs_high(L, L), d.raise_vs_high(L, H))
            dch = _pick_between(rng, Fraction(0), dcl) if dcl is not None else None
        else:
            dch = _pick_between(rng, d.raise_vs_low(H, L), d.raise_vs_low(H, H))
            dcl = _pick_between(rng, dch, dch + 3) if dch is not None else None
    else:
        top = max(d.delta_sh.values()) + 1
        dcl = _pick_between(rng, Fraction(0), top)
        dch = _pick_between(rng, Fraction(0), dcl) if dcl is not None else None
    if dcl is None or dch is None:
        return None
    return _cost_from_increments(rng, dcl, dch)


def random_valid_model(rng: random.Random, concave: bool = False,
                       interesting: bool = False) -> tuple[TamModel, CostModel]:
    """Machine and cost passing every standing validator.

    ``concave`` also requires concavity. ``interesting`` requires s_lh and at
    least one of s_ll, s_hh to be the unique symmetric equilibrium somewhere
    in (0, 1). Asking for all three is hopeless under concavity: the s_ll and
    s_hh ranges cannot both be nonempty there.
    """
    for _ in range(MAX_TRIES):
        m = _parametric_machine(rng, concave)
        if m is None:
            continue
        c = _random_cost(rng, m, interesting)
        if c is None:
            continue
        hyp = check_hypotheses(m, c)
        if not (hyp.valid_concave if concave else hyp.valid):
            continue
        if interesting:
            wit = {s.name: w for s, w in rationalizability(m, c).witnesses.items()}
            if wit["s_lh"] is None or (wit["s_ll"] is None and wit["s_hh"] is None):
                continue
        return m, c
    raise RuntimeError("could not generate a model; the proposal family is too narrow")


def random_valid_models(seed: int, n: int, **kwargs) -> list[tuple[TamModel, CostModel]]:
    rng = random.Random(seed)
    return [random_valid_model(rng, **kwargs) for _ in range(n)]


def zero_cost_monotone_model() -> tuple[TamModel, CostModel]:
    """A small valid machine paired with zero cost (fails the cost checks by design)."""
    rng = random.Random(0)
    m, _ = random_valid_model(rng)
    return m, CostModel.zero()


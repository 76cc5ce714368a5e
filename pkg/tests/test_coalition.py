from fractions import Fraction

import pytest

from conftest import F
from tamgame.coalition import (
    COALITION_STRATEGIES, CoalitionStrategy, enumerate_coalition_sne, exante_payoffs_coalition,
    probation_best_efforts, probation_gain, probation_patterns,
    verify_grand_component_uniqueness,
)
from tamgame.equilibrium import enumerate_sne, grid_points
from tamgame.generators import zero_cost_monotone_model
from tamgame.model import (
    S_HH, S_LH, S_LL, STRATEGIES, TYPES, AgentType, CostModel, Effort, SingletonState,
    TypeDistribution, exante_payoffs,
)

EL, EH = Effort.LOW, Effort.HIGH
TL, TH = AgentType.LOW, AgentType.HIGH
LL = CoalitionStrategy(S_LL, S_LL)


def test_sixteen_strategies():
    assert len(set(COALITION_STRATEGIES)) == 16
    assert CoalitionStrategy.uniform(S_LH) == CoalitionStrategy(S_LH, S_LH)
    assert str(LL) == "(s_ll, s_ll)"


def test_reduces_to_base_payoff_minus_probation_cost(example1):
    m, c = example1
    p = TypeDistribution(F("1/5"))
    for a in STRATEGIES:
        for b in STRATEGIES:
            base = exante_payoffs(m, c, a, b, p)
            coal = exante_payoffs_coalition(m, c, CoalitionStrategy.uniform(a),
                                            CoalitionStrategy.uniform(b), p)
            extra_1 = sum(p(t) * c(a(t), t) for t in TYPES)
            extra_2 = sum(p(t) * c(b(t), t) for t in TYPES)
            assert coal == (base[0] - extra_1, base[1] - extra_2)
            free = exante_payoffs_coalition(m, c, CoalitionStrategy.uniform(a),
                                            CoalitionStrategy.uniform(b), p,
                                            charge_probation=False)
            assert free == base


def test_probation_terms_example1(example1):
    m, c = example1
    assert probation_gain(m, c, EL, TL) == F("1.5")
    assert probation_gain(m, c, EH, TL) == F("-1.55")
    assert probation_gain(m, c, EL, TH) == 4
    assert probation_gain(m, c, EH, TH) == F("1.7")
    assert probation_best_efforts(m, c) == {TL: {EL}, TH: {EL}}


def test_separability(example1):
    m, c = example1
    p = TypeDistribution(F("3/10"))
    for joint in STRATEGIES:
        for other in COALITION_STRATEGIES:
            ref = exante_payoffs_coalition(m, c, CoalitionStrategy(S_LL, joint), other, p)[0]
            for prob in STRATEGIES:
                got = exante_payoffs_coalition(m, c, CoalitionStrategy(prob, joint), other, p)[0]
                expected = sum(p(t) * (probation_gain(m, c, prob(t), t)
                                       - probation_gain(m, c, S_LL(t), t)) for t in TYPES)
                assert got - ref == expected


def test_zero_cost_isolates_shapley_term(example1):
    m, _ = example1
    zero = CostModel.zero()
    p = TypeDistribution(F("1/2"))
    a = exante_payoffs_coalition(m, zero, CoalitionStrategy(S_LL, S_HH), LL, p)[0]
    b = exante_payoffs_coalition(m, zero, CoalitionStrategy(S_HH, S_HH), LL, p)[0]
    assert b - a == sum(p(t) * (m.single(EH, t) - m.single(EL, t)) / 2 for t in TYPES)


def test_example1_coalition_sne(example1):
    assert enumerate_coalition_sne(*example1, F("1/5")) == {LL}
    # the base game at this p also has s_lh
    assert S_LH in enumerate_sne(*example1, F("1/5")).sne_set


def test_zero_cost_all_high():
    m, c = zero_cost_monotone_model()
    assert probation_best_efforts(m, c) == {TL: {EH}, TH: {EH}}
    for p in (F("1/10"), F("1/2"), F("9/10")):
        assert enumerate_coalition_sne(m, c, p) == {CoalitionStrategy(S_HH, S_HH)}


def test_probation_tie_gives_paired_equilibria(example1):
    m, c = example1
    # 20.6 / 2 - 6.3 == 10 / 2 - 1
    tied = m.replace(SingletonState(EH, TH), "20.6")
    best = probation_best_efforts(tied, c)
    assert best[TH] == {EL, EH} and best[TL] == {EL}
    assert probation_patterns(best) == [S_LL, S_LH]
    eqs = enumerate_coalition_sne(tied, c, F("1/5"))
    assert eqs == {CoalitionStrategy(S_LL, S_LL), CoalitionStrategy(S_LH, S_LL)}


def _full_two_player_sne(m, c, p):
    out = set()
    for sigma in COALITION_STRATEGIES:
        base = exante_payoffs_coalition(m, c, sigma, sigma, p)
        ok = all(exante_payoffs_coalition(m, c, alt, sigma, p)[0] <= base[0]
                 and exante_payoffs_coalition(m, c, sigma, alt, p)[1] <= base[1]
                 for alt in COALITION_STRATEGIES)
        if ok:
            out.add(sigma)
    return out


def test_both_players_checked_gives_same_set(example1, valid_models):
    for m, c in [example1] + valid_models[:3]:
        for p in (F("1/5"), F("1/2"), F("4/5")):
            assert _full_two_player_sne(m, c, p) == enumerate_coalition_sne(m, c, p)


def test_swap_symmetry_of_payoffs(example1):
    p = TypeDistribution(F("2/7"))
    for a in COALITION_STRATEGIES[::3]:
        for b in COALITION_STRATEGIES[::5]:
            ab = exante_payoffs_coalition(*example1, a, b, p)
            ba = exante_payoffs_coalition(*example1, b, a, p)
            assert ab == (ba[1], ba[0])


def test_componentwise_deviations_suffice(valid_models):
    m, c = valid_models[0]
    for p in grid_points(10):
        full = enumerate_coalition_sne(m, c, p)
        comp = set()
        for sigma in COALITION_STRATEGIES:
            base = exante_payoffs_coalition(m, c, sigma, sigma, p)[0]
            alts = [CoalitionStrategy(x, sigma.joint) for x in STRATEGIES]
            alts += [CoalitionStrategy(sigma.probation, x) for x in STRATEGIES]
            if all(exante_payoffs_coalition(m, c, a, sigma, p)[0] <= base for a in alts):
                comp.add(sigma)
        assert comp == full


def test_reduction_to_base_game(example1, valid_models):
    for m, c in [example1] + valid_models[:5]:
        for p in grid_points(40):
            reduced = enumerate_coalition_sne(m, c, p, charge_probation=False, forced_equal=True)
            assert {s.joint for s in reduced} == enumerate_sne(m, c, p).sne_set
            assert all(s.probation == s.joint for s in reduced)


def test_probation_monotonicity(valid_models):
    for m, c in valid_models:
        best = probation_best_efforts(m, c)
        if EH in best[TL]:
            assert best[TH] == {EH}


def test_uniqueness_on_example1_is_unsupported(example1):
    rep = verify_grand_component_uniqueness(*example1, grid_n=20)
    assert not rep.supported
    assert rep.points_checked == 19


def test_uniqueness_concave(concave_models):
    for m, c in concave_models[:5]:
        rep = verify_grand_component_uniqueness(m, c, grid_n=30)
        assert rep.supported and rep.holds, [str(v) for v in rep.violations]

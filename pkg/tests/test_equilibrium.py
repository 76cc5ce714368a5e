from fractions import Fraction

import pytest
from hypothesis import given

from conftest import F, probabilities
from tamgame.equilibrium import (
    DeviationWitness, best_response_violations, enumerate_sne, grid_points, is_exante_nash,
    sne_grid_sweep,
)
from tamgame.generators import zero_cost_monotone_model
from tamgame.model import S_HH, S_HL, S_LH, S_LL, STRATEGIES, exante_payoffs


def test_witness_must_be_profitable():
    with pytest.raises(ValueError):
        DeviationWitness(1, S_HH, S_LH, F(2), F(2))


def test_hh_stable_at_high_p(example1):
    assert best_response_violations(*example1, S_HH, S_HH, F("9/10")) == []


def test_hh_broken_at_low_p(example1):
    w = best_response_violations(*example1, S_HH, S_HH, F("1/10"))
    assert any(x.deviator == 1 and x.to_strategy == S_LH for x in w)
    assert all(x.payoff_after > x.payoff_before for x in w)


@pytest.mark.parametrize("s,p,expected", [
    (S_LL, "1/5", True), (S_HL, "1/2", False), (S_LH, "1/2", True),
])
def test_is_exante_nash_examples(example1, s, p, expected):
    assert is_exante_nash(*example1, s, s, F(p)) is expected


@pytest.mark.parametrize("p,expected", [
    ("1/5", {S_LL, S_LH}), ("9/10", {S_HH}), ("1/20", {S_LL}),
])
def test_enumerate_sne_examples(example1, p, expected):
    assert enumerate_sne(*example1, F(p)).sne_set == expected


def test_ties_keep_the_equilibrium(example1):
    # at the closed endpoint 11/19 the low type is indifferent about lowering effort
    m, c = example1
    p = F("11/19")
    stay = exante_payoffs(m, c, S_HH, S_HH, p)[0]
    drop = exante_payoffs(m, c, S_LH, S_HH, p)[0]
    assert stay == drop
    assert is_exante_nash(m, c, S_HH, S_HH, p)


def test_report_sorting_and_asymmetric(example1):
    rep = enumerate_sne(*example1, F("1/5"))
    assert rep.sorted_sne() == [S_LL, S_LH]
    assert rep.is_sne(S_LL) and not rep.is_sne(S_HH)
    for s1, s2 in rep.asymmetric_nash:
        assert s1 != s2 and not rep.witnesses[s1, s2]


def test_grid_points():
    assert [p.p_high for p in grid_points(2)] == [F("1/2")]
    assert len(grid_points(200)) == 199
    with pytest.raises(ValueError):
        grid_points(1)


def test_sweep_examples(example1):
    sweep = sne_grid_sweep(*example1, grid_n=200)
    assert all(not rep.is_sne(S_HL) for _, rep in sweep)
    by19 = sne_grid_sweep(*example1, grid_n=19)
    assert [k for k, (_, rep) in enumerate(by19, start=1) if rep.is_sne(S_LL)] == [1, 2, 3, 4, 5]


@given(probabilities)
def test_zero_cost_hh_always_stable(p):
    m, c = zero_cost_monotone_model()
    assert best_response_violations(m, c, S_HH, S_HH, p) == []


@given(probabilities)
def test_swap_invariance(p):
    m, c = zero_cost_monotone_model()
    for s1 in STRATEGIES:
        for s2 in STRATEGIES:
            assert is_exante_nash(m, c, s1, s2, p) == is_exante_nash(m, c, s2, s1, p)


def test_swap_invariance_example1(example1):
    for k in range(1, 20):
        p = Fraction(k, 20)
        for s1 in STRATEGIES:
            for s2 in STRATEGIES:
                assert is_exante_nash(*example1, s1, s2, p) == is_exante_nash(*example1, s2, s1, p)


def test_single_deviation_sufficiency(valid_models):
    checked = 0
    for m, c in valid_models:
        for p in grid_points(50):
            base = exante_payoffs(m, c, S_HH, S_HH, p)[0]
            if exante_payoffs(m, c, S_LH, S_HH, p)[0] <= base:
                checked += 1
                assert best_response_violations(m, c, S_HH, S_HH, p) == []
    assert checked > 0

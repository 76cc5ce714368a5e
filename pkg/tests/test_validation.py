from fractions import Fraction

from conftest import F
from tamgame.model import (
    GRAND_STATES, SINGLETON_STATES, AgentType, CostModel, Effort, GrandState, SingletonState,
    TamModel,
)
from tamgame.validation import (
    IntelligenceMode, check_hypotheses, profile_less, validate_concavity, validate_cost,
    validate_intelligence, validate_machine_monotonicity, validate_supermodularity,
    validate_symmetry,
)

L, H = Effort.LOW, Effort.HIGH
TL, TH = AgentType.LOW, AgentType.HIGH


def constant_model(v="5") -> TamModel:
    return TamModel.from_maps({s: v for s in SINGLETON_STATES}, {g: v for g in GRAND_STATES})


def test_orders_leave_mixed_profiles_incomparable():
    assert profile_less((0, 0), (0, 1)) and profile_less((0, 1), (1, 1))
    assert not profile_less((0, 1), (1, 0)) and not profile_less((1, 0), (0, 1))
    assert not profile_less((1, 1), (1, 1))


def test_symmetry(example1):
    m, _ = example1
    assert validate_symmetry(m).passed
    assert validate_symmetry(constant_model()).passed
    bad = m.replace(GrandState(H, L, TH, TL), "13.0")
    rep = validate_symmetry(bad)
    assert len(rep.violations) == 1
    v = rep.violations[0]
    assert v.witness == ((L, H, TL, TH), (H, L, TH, TL))
    assert v.values == (F("13.1"), F("13.0"))


def test_intelligence_grand_only_on_example1(example1):
    # example1 repeats 16 across two unrelated grand states
    m, _ = example1
    rep = validate_intelligence(m, IntelligenceMode.GRAND_ONLY)
    assert not rep.passed
    assert [v.witness for v in rep.violations] == [((L, H, TH, TH), (H, H, TL, TL))]
    assert rep.violations[0].values == (16, 16)


def test_intelligence_symmetric_duplicates_are_fine(example1):
    m, _ = example1
    fixed = m.replace(GrandState(H, H, TL, TL), "15.5")
    assert validate_intelligence(fixed, IntelligenceMode.GRAND_ONLY).passed


def test_intelligence_strict_flags_cross_collision(example1):
    m, _ = example1
    rep = validate_intelligence(m, IntelligenceMode.STRICT)
    cross = [v for v in rep.violations if v.assumption == "intelligence/cross"]
    assert ((H, TH), (H, H, TL, TL)) in [v.witness for v in cross]


def test_intelligence_injected_collision(example1):
    m, _ = example1
    fixed = m.replace(GrandState(H, H, TL, TL), "15.5")
    bad = fixed.replace(GrandState(L, L, TL, TL), "25")
    for mode in IntelligenceMode:
        rep = validate_intelligence(bad, mode)
        assert ((L, L, TL, TL), (H, H, TH, TH)) in [v.witness for v in rep.violations]


def test_strict_intelligence_rejects_zero_singleton(example1):
    m, _ = example1
    bad = m.replace(SingletonState(L, TL), "0")
    rep = validate_intelligence(bad, IntelligenceMode.STRICT)
    assert any(v.assumption == "intelligence/empty" for v in rep.violations)
    assert validate_intelligence(bad.replace(GrandState(H, H, TL, TL), "15.5")).passed


def test_monotonicity(example1):
    m, _ = example1
    assert validate_machine_monotonicity(m).passed
    rep = validate_machine_monotonicity(constant_model())
    # 4 type profiles x 5 effort pairs + 4 effort profiles x 5 type pairs + 4 singleton checks
    assert len(rep.violations) == 44
    bad = m.replace(GrandState(H, H, TL, TL), "10")
    witnesses = [v.witness for v in validate_machine_monotonicity(bad).violations]
    assert ((L, H), (H, H), (TL, TL)) in witnesses


def test_supermodularity(example1):
    m, _ = example1
    assert validate_supermodularity(m).passed
    bad = m.replace(GrandState(H, H, TH, TH), "17")
    rep = validate_supermodularity(bad)
    assert ((L, L), (H, H), (TL, TL), (TH, TH)) in [v.witness for v in rep.violations]


def test_additive_model_is_not_supermodular():
    def f(e):
        return 3 * int(e)

    def g(t):
        return 2 * int(t)
    m = TamModel.from_maps(
        {s: 1 + f(s.effort) + g(s.agent_type) for s in SINGLETON_STATES},
        {x: 1 + f(x.effort_1) + f(x.effort_2) + g(x.type_1) + g(x.type_2) for x in GRAND_STATES})
    rep = validate_supermodularity(m)
    assert not rep.passed
    assert all(a == b for a, b in (v.values for v in rep.violations))


def test_concavity(example1):
    m, _ = example1
    rep = validate_concavity(m)
    assert not rep.passed
    first = [v for v in rep.violations if v.witness[0] == (TL, TL)]
    assert first and all(v.values == (3, 5) for v in first)


def _chain_model(a, b, c):
    # both chains at every type profile read a < b < c
    grand = {}
    for g in GRAND_STATES:
        n = int(g.effort_1) + int(g.effort_2)
        grand[g] = (a, b, c)[n]
    return TamModel.from_maps({s: 1 for s in SINGLETON_STATES}, grand)


def test_concavity_chain_examples():
    assert validate_concavity(_chain_model(8, 11, 13)).passed
    rep = validate_concavity(_chain_model(8, 11, 14))
    assert len(rep.violations) == 8
    assert all(v.values == (3, 3) for v in rep.violations)


def test_cost(example1):
    _, c = example1
    assert validate_cost(c).passed
    zero = validate_cost(CostModel.zero())
    assert {v.assumption for v in zero.violations} >= {"cost monotone in effort"}
    bad = CostModel.from_map({(L, TL): 2, (H, TL): 8, (L, TH): 1, (H, TH): "7.2"})
    rep = validate_cost(bad)
    assert [v.assumption for v in rep.violations] == ["cost submodularity"]
    assert rep.violations[0].values == (F("6.2"), F(6))


def test_hypothesis_status(example1):
    hyp = check_hypotheses(*example1)
    assert hyp.characterization_supported
    assert not hyp.valid  # grand-only intelligence fails
    assert not hyp.concavity.passed
    assert "FAILED" in hyp.intelligence.summary()
    assert hyp.symmetry.summary() == "symmetry: passed"


def test_report_truthiness():
    m = constant_model()
    assert bool(validate_symmetry(m)) is True
    assert bool(validate_machine_monotonicity(m)) is False
    assert isinstance(validate_machine_monotonicity(m).violations[0].values[0], Fraction)

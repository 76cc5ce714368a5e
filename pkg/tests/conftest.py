from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tamgame.io import load_model
from tamgame.model import GRAND_STATES, SINGLETON_STATES, CostModel, TamModel

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def example1():
    return load_model("example1")


def F(x) -> Fraction:
    return Fraction(x)


cents = st.integers(min_value=0, max_value=5000).map(lambda n: Fraction(n, 100))
probabilities = st.integers(min_value=1, max_value=999).map(lambda n: Fraction(n, 1000))


@st.composite
def symmetric_models(draw):
    grand = {}
    for g in GRAND_STATES:
        grand[g] = grand[g.swapped()] if g.swapped() in grand else draw(cents)
    singles = {s: draw(cents) for s in SINGLETON_STATES}
    return TamModel.from_maps(singles, grand)


@st.composite
def cost_models(draw):
    return CostModel(tuple(draw(cents) for _ in range(4)))


@pytest.fixture(scope="session")
def valid_models():
    from tamgame.generators import random_valid_models
    return random_valid_models(seed=2024, n=50, interesting=True)


@pytest.fixture(scope="session")
def concave_models():
    from tamgame.generators import random_valid_models
    return random_valid_models(seed=7, n=25, concave=True, interesting=True)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

import pytest

from efl.model import validate
from efl.scenarios import SCENARIOS, figures, golden_suite, load


@pytest.mark.parametrize("check", golden_suite(), ids=lambda c: c.name)
def test_golden(check):
    assert check.passed, f"expected {check.expected!r}, observed {check.observed!r}"


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_scenarios_are_valid(name):
    sc = load(name)
    assert validate(sc.model) == []
    for text, want in sc.facts:
        assert sc.holds(text) == want


def test_unknown_scenario():
    with pytest.raises(KeyError):
        load("nope")


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_figures(name):
    for label, model, point in figures(name):
        assert validate(model) == []
        assert point in model.points

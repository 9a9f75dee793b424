import pytest

from fo_games.exceptions import InadmissibleStrategyError
from fo_games.game import Strategy, builtin_fixture
from fo_games.selfcomp import NiSpec, check_admissible, self_compose, translate_strategy_back

WEAKEST = Strategy(choices={"B1": "(y1, y2) := !Conf(y1, y2)"})


@pytest.fixture
def composed():
    return self_compose(builtin_fixture("conference"), NiSpec(secrets={"A2": "!Conf(a, y2)"}))


def test_computed_admissible_sets(composed):
    report = check_admissible(composed, WEAKEST)

    assert report.admissible
    assert report.predicates["1"] == ("Assign", "Conf", "Read", "Review")
    assert set(report.predicates) == set(composed.game.nodes)


def test_given_sets_must_cover_strategy(composed):
    report = check_admissible(composed, WEAKEST, {"1": ["Assign"]})

    assert not report
    assert any("reads ['Conf'], not admissible at 1" in message for message in report.diagnostics)


def test_given_sets_from_spec():
    spec = NiSpec(secrets={"A2": "!Conf(a, y2)"}, admissible={"1": ["Assign"]})
    composed = self_compose(builtin_fixture("conference"), spec)

    assert not check_admissible(composed, WEAKEST).admissible


def test_translate_back_drops_primes(composed):
    strategy = Strategy(choices={"B1": "(y1, y2) := !Conf(y1, y2) & !Conf'(y1, y2)"})

    assert translate_strategy_back(composed, strategy).to_text() == "B1(y1, y2) := !Conf(y1, y2)"


def test_translate_back_rejects_inadmissible(composed):
    with pytest.raises(InadmissibleStrategyError, match="not admissible at 1"):
        translate_strategy_back(composed, WEAKEST, {"1": ["Assign"]})

import pytest

from fo_games.config import SolverConfig
from fo_games.decide import replay
from fo_games.engine import extract_strategy, synthesize, verify
from fo_games.game import builtin_fixture, parse_game
from fo_games.logic import TRUE, conj, equivalent_bounded, parse_formula

SAFE_AFTER_ASSIGN = "forall x, p. !Conf(x, p) | !Assign(x, p)"

FLIP = """
state P/0;
node n0 start;
node n1;
edge n0 -> n1 owner A {{ P := !P; }}
init {init};
assert n1: P;
"""


@pytest.mark.parametrize("fixture", ["conference", "conference-acyclic"])
def test_synthesize_conference(fixture):
    result = synthesize(builtin_fixture(fixture))

    assert result.verdict == "safe"
    assert result.invariant_status == "inferred"
    assert result.certificate.holds
    assert result.exact["B1"]
    assert equivalent_bounded(result.strategies.choices["B1"].body, parse_formula("!Conf(y1, y2)"), 2)
    assert result.stats.h >= 1
    assert set(result.stats.phases_ms) >= {"iterate", "verdict", "strategy", "certify"}
    assert result.stats.memory_rss > 0


@pytest.mark.parametrize("size", [1, 2, 3, 4])
def test_conference_strategy_is_weakest_at_every_size(size):
    result = synthesize(builtin_fixture("conference"))

    assert equivalent_bounded(result.strategies.choices["B1"].body, parse_formula("!Conf(y1, y2)"), size)


def test_synthesize_transitive_closure_is_unknown():
    result = synthesize(builtin_fixture("transitive-closure"))

    assert result.verdict == "unknown"
    assert any("gamma sequence for B1 did not stabilize" in message for message in result.diagnostics)


def test_synthesize_unsafe_game_confirms_trace():
    game = parse_game(FLIP.format(init="true"))

    result = synthesize(game)

    assert result.verdict == "unsafe"
    assert result.witness is not None
    assert result.trace.winner == "A"
    assert replay(game, result.trace)


def test_synthesize_safe_game_without_b():
    result = synthesize(parse_game(FLIP.format(init="!P")))

    assert result.verdict == "safe"
    assert not result.strategies.choices
    assert result.invariant["n0"].to_text() == "!P"


def test_synthesize_iteration_cap_gives_unknown():
    result = synthesize(builtin_fixture("conference"), SolverConfig(max_iter=0))

    assert result.verdict == "unknown"
    assert "iteration cap reached" in result.diagnostics


def test_extract_strategy_for_irrelevant_input():
    game = builtin_fixture("conference")
    psi = {node: TRUE for node in game.nodes}

    strategy, exact = extract_strategy(game, psi)

    assert strategy.choices["B1"].body == TRUE
    assert exact == {"B1": True}


def test_verify_given_inductive_invariant():
    game = builtin_fixture("conference")
    safe = parse_formula(SAFE_AFTER_ASSIGN)
    invariant = {"0": parse_formula("forall x, p, r. !Read(x, p, r)"), "2": safe, "3": safe, "4": safe}

    result = verify(game, invariant)

    assert result.verdict == "safe"
    assert result.invariant_status == "inductive"
    assert result.invariant["2"] == conj(game.assertion_at("2"), safe)
    assert result.strategies.to_text() == "B1(y1, y2) := !Conf(y1, y2)"


def test_verify_without_invariant_synthesizes():
    result = verify(builtin_fixture("conference"))

    assert result.verdict == "safe"
    assert result.invariant_status == "inferred"


def test_verify_leader_election_is_never_unsafe():
    game = builtin_fixture("leader-election")

    result = verify(game, config=SolverConfig(max_iter=0, gamma_universe=3))

    assert result.verdict in {"safe", "unknown"}
    assert result.witness is None
    assert set(result.invariant) <= set(game.nodes)

import pytest

from fo_games.config import SolverConfig
from fo_games.decide import GroundGame, ground_game_solve, oracle_verdict, replay
from fo_games.exceptions import EnumerationBudgetError, GameSemanticError
from fo_games.game import builtin_fixture, parse_game

FLIP = """
state P/0;
node n0 start;
node n1;
edge n0 -> n1 owner A { P := !P; }
init {init};
assert n1: P;
"""

B_CHOOSES = """
state P/1;
inputB B1/1;
node n0 start;
node n1;
edge n0 -> n1 { P(y) := B1(y); }
init true;
assert n1: forall x. !P(x);
"""


def flip_game(init: str):
    return parse_game(FLIP.replace("{init}", init))


def test_a_wins_with_replayable_trace():
    game = flip_game("true")

    solution = ground_game_solve(game, 1)

    assert solution.winner == "A"
    assert [move.edge for move in solution.moves] == ["n0->n1"]
    assert solution.violation == "n1"
    assert replay(game, solution)


def test_replay_rejects_tampered_trace():
    game = flip_game("true")
    solution = ground_game_solve(game, 1)

    assert not replay(game, solution.copy(update={"violation": "n0"}))
    assert not replay(game, solution.copy(update={"moves": ()}))
    assert not replay(flip_game("!P & P"), solution)


def test_b_wins_with_positional_strategy():
    game = parse_game(B_CHOOSES)

    solution = ground_game_solve(game, 2)

    assert solution.winner == "B"
    assert solution.strategy
    assert {entry.edge for entry in solution.strategy} == {"n0->n1"}
    assert all(entry.choice == () for entry in solution.strategy)
    assert not replay(game, solution)


def test_oracle_verdict():
    unsafe = oracle_verdict(flip_game("true"), 2)
    assert unsafe.verdict == "unsafe"
    assert unsafe.max_size == 1
    assert unsafe.solution.winner == "A"

    safe = oracle_verdict(flip_game("!P"), 2)
    assert safe.verdict == "safe"
    assert safe.max_size == 2
    assert safe.solution is None


def test_oracle_on_conference_at_one_element():
    assert oracle_verdict(builtin_fixture("conference"), 1).verdict == "safe"


def test_ground_game_budget():
    with pytest.raises(EnumerationBudgetError, match="Ground game at"):
        GroundGame(builtin_fixture("conference"), 2, {}, SolverConfig(ground_budget=1000))


def test_ground_game_needs_constant_valuation():
    game = parse_game("constants c; state P/1; node n0 start; init P(c); assert n0: P(c);")

    with pytest.raises(GameSemanticError, match=r"does not cover constants \['c'\]"):
        GroundGame(game, 2, {})

    assert ground_game_solve(game, 2).winner == "B"

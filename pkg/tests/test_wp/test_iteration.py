import pytest

from fo_games.game import parse_game
from fo_games.logic import TRUE, parse_formula
from fo_games.wp import iterate, safety_verdict, satisfiable, split_conjuncts

FLIP = """
state P/0;
node n0 start;
node n1;
edge n0 -> n1 owner A { P := !P; }
init {init};
assert n1: P;
"""


def flip_game(init: str):
    return parse_game(FLIP.replace("{init}", init))


def test_iterate_reaches_fixed_point():
    result = iterate(flip_game("true"))

    assert result.status == "fixed"
    assert result.h == 1
    assert result.exact
    assert result.assertion["n0"].to_text() == "!P"
    assert result.assertion["n1"].to_text() == "P"
    assert [step.h for step in result.trace.steps] == [0, 1]
    assert result.trace.steps[1].changed == ("n0",)


def test_iterate_stops_at_cap():
    result = iterate(flip_game("true"), max_iter=0)

    assert result.status == "cap-reached"
    assert result.h == 0
    assert result.assertion["n0"] == TRUE


def test_iterate_with_partial_invariant_is_not_exact():
    game = flip_game("true")

    result = iterate(game, initial={"n1": parse_formula("P")})

    assert result.status == "fixed"
    assert not result.exact


def test_iterate_applies_strengthening():
    game = flip_game("true")

    result = iterate(game, strengthen=lambda formula: parse_formula("false"))

    assert result.strengthenings >= 1
    assert not result.exact


@pytest.mark.parametrize("init, verdict", [("!P", "safe"), ("P", "unsafe"), ("true", "unsafe")])
def test_safety_verdict(init, verdict):
    game = flip_game(init)

    assert safety_verdict(game, iterate(game)).verdict == verdict


def test_unsafe_verdict_carries_witness():
    game = flip_game("P")

    result = safety_verdict(game, iterate(game))

    assert result.witness is not None
    assert result.witness.holds("P", ())


def test_cap_reached_without_violation_is_unknown():
    game = flip_game("!P")

    result = safety_verdict(game, iterate(game, max_iter=0))

    assert result.verdict == "unknown"
    assert result.reason == "iteration cap reached"


def test_split_conjuncts():
    assert split_conjuncts(TRUE, 100) == []
    assert len(split_conjuncts(parse_formula("forall x. P(x) & Q(x)"), 100)) == 2
    existential = parse_formula("exists x. P(x)")
    assert split_conjuncts(existential, 100) == [existential]


def test_satisfiable_decides_bsr_formulas():
    model, bounded = satisfiable(parse_formula("exists x, y. P(x) & !P(y)"))

    assert model is not None
    assert model.size >= 2
    assert not bounded

import pytest

from fo_games.exceptions import MalformedPrefixError
from fo_games.game import game_from_so_formula, prime
from fo_games.logic import parse_formula


def test_chain_game_for_prefix():
    game = game_from_so_formula(parse_formula("forall C/1. exists D/1. forall x. C(x) -> D(x)"))

    assert game.nodes == ("v0", "v1", "v2")
    assert game.signature.inputs_a == {"C": 1}
    assert game.signature.inputs_b == {"D": 1}
    assert set(game.signature.state) == {"C'", "D'"}
    assert game.edges[1].theta["D'"].body.to_text() == "D(y1)"


def test_free_predicates_become_state():
    game = game_from_so_formula(parse_formula("exists D/1. forall x. E(x) -> D(x)"))

    assert game.signature.state == {"E": 1, "D'": 1}
    assert game.assertion_at("v1").to_text() == "forall x. !E(x) | D'(x)"


def test_formula_without_prefix_is_a_single_node():
    game = game_from_so_formula(parse_formula("forall x. E(x) | !E(x)"))

    assert game.nodes == ("v0",)
    assert not game.edges


@pytest.mark.parametrize(
    "text, message",
    [
        ("forall x. exists C/1. C(x)", "must form a prefix"),
        ("forall C/1. C(x)", "free variables"),
        ("forall C/1. forall C/1. forall x. C(x)", "quantified twice"),
    ],
)
def test_malformed_prefix(text, message):
    with pytest.raises(MalformedPrefixError, match=message):
        game_from_so_formula(parse_formula(text))


def test_prime():
    assert prime("Conf") == "Conf'"

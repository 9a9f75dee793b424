import pytest

from fo_games.exceptions import GameSemanticError, UncoveredStrategyError
from fo_games.game import (
    Definition,
    Edge,
    Game,
    Signature,
    Strategy,
    apply_strategy,
    builtin_fixture,
    check_strategy,
    formal_params,
)
from fo_games.logic import atom, constants


def test_signature_owner_and_arity():
    signature = Signature(state={"P": 1}, inputs_a={"A1": 2}, inputs_b={"B1": 0}, constants=("c",))

    assert signature.owner_of("A1") == "A"
    assert signature.owner_of("B1") == "B"
    assert signature.owner_of("P") is None
    assert signature.all_predicates == {"P": 1, "A1": 2, "B1": 0}

    with pytest.raises(GameSemanticError, match="Unknown predicate 'Q'"):
        signature.arity("Q")


@pytest.mark.parametrize(
    "kwargs, message",
    [
        ({"state": {"P": -1}}, "Arity of 'P' must be non-negative"),
        ({"state": {"P": 1}, "inputs_b": {"P": 1}}, "pairwise distinct"),
        ({"state": {"P": 1}, "constants": ("P",)}, "pairwise distinct"),
        ({"constants": ("c", "c")}, "Constants must be unique"),
    ],
)
def test_signature_validation(kwargs, message):
    with pytest.raises(ValueError, match=message):
        Signature(**kwargs)


def test_definition_text_round_trip():
    definition = Definition.of("y1, y2", "!Conf(y1, y2) & y1 != y2")

    assert Definition.from_text(definition.to_text()) == definition
    assert formal_params(3) == ("y1", "y2", "y3")


def test_definition_binds_extra_identifiers_as_constants():
    definition = Definition.of("y1", "P(y1, c)")

    assert constants(definition.body) == {"c"}


def test_definition_rejects_free_variables():
    with pytest.raises(ValueError, match=r"Free variables \['z'\]"):
        Definition(params=("y1",), body=atom("P", "y1", "z"))


def test_definition_rejects_repeated_params():
    with pytest.raises(ValueError, match="must be distinct"):
        Definition(params=("y1", "y1"), body=atom("P", "y1"))


def test_definition_from_text_requires_params():
    with pytest.raises(ValueError, match="Expected"):
        Definition.from_text("P(y1)")


def test_game_fills_identity_updates():
    game = builtin_fixture("conference")

    edge = game.edges[0]
    assert edge.theta["Conf"].body.to_text() == "A1(y1, y2)"
    assert set(edge.theta) == {"Conf", "Assign", "Review", "Read"}
    assert edge.theta["Assign"].is_identity("Assign")


@pytest.mark.parametrize(
    "kwargs, message",
    [
        ({"nodes": ("n0", "n0"), "start": "n0"}, "Node names must be unique"),
        ({"nodes": ("n0",), "start": "n1"}, "Start node 'n1' is not declared"),
        (
            {"nodes": ("n0",), "start": "n0", "edges": (Edge(source="n0", target="n2"),)},
            "uses undeclared node 'n2'",
        ),
        (
            {"nodes": ("n0",), "start": "n0", "edges": (Edge(source="n0", target="n0", theta={"Q": "(y1) := true"}),)},
            r"updates non-state predicates \['Q'\]",
        ),
        ({"nodes": ("n0",), "start": "n0", "assertion": {"n5": atom("P", "c")}}, "Assertion refers to undeclared"),
    ],
)
def test_game_validation(kwargs, message):
    with pytest.raises(ValueError, match=message):
        Game(signature=Signature(state={"P": 1}), **kwargs)


def test_strategy_text_is_sorted():
    strategy = Strategy(choices={"B2": "(y1) := P(y1)", "B1": "() := true"})

    assert list(strategy.choices) == ["B1", "B2"]
    assert strategy.to_text() == "B1() := true\nB2(y1) := P(y1)"


def test_apply_strategy_replaces_b_predicates():
    game = builtin_fixture("conference")
    strategy = Strategy(choices={"B1": "(y1, y2) := !Conf(y1, y2)"})

    played = apply_strategy(game, strategy)

    assert not played.signature.inputs_b
    assert not played.b_predicates()
    edge = played.edges[1]
    assert edge.owner == "B"
    assert edge.input_pred is None
    assert edge.theta["Assign"].body.to_text() == "!Conf(y1, y2)"


def test_apply_strategy_requires_every_b_predicate():
    with pytest.raises(UncoveredStrategyError, match="B1"):
        apply_strategy(builtin_fixture("conference"), Strategy())


@pytest.mark.parametrize(
    "definition, message",
    [
        ("(y1, y2) := A1(y1, y2)", r"non-state predicates \['A1'\]"),
        ("(y1) := Conf(y1, y1)", "has 1 parameters, expected 2"),
    ],
)
def test_check_strategy_errors(definition, message):
    with pytest.raises(GameSemanticError, match=message):
        check_strategy(builtin_fixture("conference"), Strategy(choices={"B1": definition}))

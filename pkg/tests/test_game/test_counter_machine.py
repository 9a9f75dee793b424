import pytest

from fo_games.exceptions import UnsupportedInstructionError
from fo_games.game import CounterMachine, Instruction, check_game, counter_machine_game

MACHINE = "states 3; counters 1; inc 1 2 c1; dec 2 1 c1; zero 1 3 c1;"


def test_parse_machine():
    machine = CounterMachine.parse(MACHINE)

    assert machine.states == 3
    assert machine.counters == 1
    assert [item.kind for item in machine.instructions] == ["inc", "dec", "zero"]


@pytest.mark.parametrize(
    "text, message",
    [
        ("states 2; inc 1 5 c1;", "state outside 1..2"),
        ("states 2; counters 1; inc 1 2 c2;", "counter outside 1..1"),
    ],
)
def test_parse_machine_bounds(text, message):
    with pytest.raises(ValueError, match=message):
        CounterMachine.parse(text)


def test_variant_one_uses_b_edges():
    game = counter_machine_game(CounterMachine.parse(MACHINE), variant=1)

    assert game.nodes == ("main", "m1", "m2")
    assert set(game.signature.inputs_b) == {"B1", "B2"}
    assert [edge.name for edge in game.b_edges()] == ["m1->main", "m2->main"]
    assert game.assertion_at("main").to_text() == "!F3"
    assert check_game(game) is game


def test_variant_two_has_no_b_inputs():
    game = counter_machine_game(CounterMachine.parse(MACHINE), variant=2)

    assert not game.signature.inputs_b
    assert not list(game.b_edges())
    assert set(game.signature.inputs_a) == {"A1", "A2"}


def test_variant_three_is_single_node():
    game = counter_machine_game(CounterMachine.parse(MACHINE), variant=3)

    assert game.nodes == ("q",)
    assert "Err" in game.signature.state
    assert all(edge.source == edge.target == "q" for edge in game.edges)
    assert [edge.owner for edge in game.edges] == ["B", "B", "A"]


def test_unsupported_instruction():
    machine = CounterMachine(states=2, instructions=[Instruction(kind="jump", source=1, target=2)])

    with pytest.raises(UnsupportedInstructionError, match="Unsupported instruction 'jump'"):
        counter_machine_game(machine)


def test_unknown_variant():
    with pytest.raises(ValueError, match="Variant must be 1, 2 or 3"):
        counter_machine_game(CounterMachine.parse(MACHINE), variant=4)

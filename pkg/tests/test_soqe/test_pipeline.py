import pytest

from fo_games.exceptions import FragmentError, PreconditionError
from fo_games.game import Definition, builtin_fixture, parse_game
from fo_games.logic import TRUE, equivalent_bounded, parse_formula, so_exists
from fo_games.soqe import (
    eliminate_exists,
    eliminate_so,
    is_ackermannian,
    weakest_strategy_ackermannian,
)
from fo_games.wp import wp_edge, wp_path

SAFE_AFTER_ASSIGN = "forall x, p. !Conf(x, p) | !Assign(x, p)"


def test_eliminate_so_records_weakest_choice():
    game = builtin_fixture("conference")

    result = eliminate_so(wp_edge(game.edges[1], parse_formula(SAFE_AFTER_ASSIGN)))

    assert result.formula == TRUE
    assert result.exact
    assert result.choices["B1"] == Definition.of("y1, y2", "!Conf(y1, y2)")


def test_eliminate_so_handles_alternation():
    game = builtin_fixture("conference")

    result = eliminate_so(wp_path(game.edges[:2], parse_formula(SAFE_AFTER_ASSIGN)))

    assert result.formula == TRUE
    assert result.exact


def test_eliminate_so_leaves_first_order_formula_alone():
    formula = parse_formula("forall x. P(x)")

    result = eliminate_so(formula)

    assert result.formula == formula
    assert not result.choices


def test_eliminate_exists_is_exact_for_simple_forms():
    formula = parse_formula("(forall x. !C(x) | !B(x)) & exists x. B(x)")

    result = eliminate_exists(formula, "B")

    assert result.exact
    assert equivalent_bounded(so_exists("B", 1, formula), result.eliminated, 3)


def test_eliminate_exists_outside_fragment():
    formula = parse_formula("forall x. exists y. E(x, y) & B(y)")

    with pytest.raises(FragmentError):
        eliminate_exists(formula, "B")

    result = eliminate_exists(formula, "B", strengthen=lambda _: parse_formula("forall x, y. E(x, y) & B(y)"))
    assert not result.exact


def test_is_ackermannian():
    assert is_ackermannian("B1", {"Assign": Definition.of("y1, y2", "B1(y1, y2) & !Conf(y1, y2)")})
    assert not is_ackermannian("B1", {"R": Definition.of("y1, y2", "exists z. B1(y1, z)")})
    assert not is_ackermannian("B1", {"R": Definition.of("y1, y2", "B1(y1, y2) <-> B1(y2, y1)")})


def test_weakest_strategy_for_conference():
    game = builtin_fixture("conference")
    psi = {"2": parse_formula(SAFE_AFTER_ASSIGN)}

    choice, residual = weakest_strategy_ackermannian(game, psi, game.edges[1])

    assert choice.to_text() == "!Conf(y1, y2)"
    assert residual == TRUE


def test_weakest_strategy_without_input_is_plain_precondition():
    game = builtin_fixture("conference")
    psi = {"4": parse_formula("forall x, p. !Assign(x, p)")}

    choice, residual = weakest_strategy_ackermannian(game, psi, game.edges[3])

    assert choice == TRUE
    assert residual.to_text() == "forall x, p. !Assign(x, p)"


SYMMETRIC = """
state R/2;
inputB B1/2;
node n0 start;
node n1;
edge n0 -> n1 {{ R(y1, y2) := {update}; }}
"""


@pytest.mark.parametrize(
    "update, post, message",
    [
        ("B1(y1, y2) <-> B1(y2, y1)", "forall x, y. R(x, y)", "not ackermannian in B1"),
        ("B1(y1, y2)", "forall x, y. R(x, y) | R(y, x)", "more than one literal depending on B1"),
    ],
)
def test_weakest_strategy_preconditions(update, post, message):
    game = parse_game(SYMMETRIC.format(update=update))

    with pytest.raises(PreconditionError, match=message):
        weakest_strategy_ackermannian(game, {"n1": parse_formula(post)}, game.edges[0])

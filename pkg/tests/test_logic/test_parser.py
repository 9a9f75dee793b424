import pytest

from fo_games.exceptions import FormulaParseError
from fo_games.game import parse_game
from fo_games.logic import (
    Const,
    CountExists,
    SOForall,
    Var,
    atom,
    conj,
    constants,
    free_vars,
    neg,
    parse_formula,
    predicates,
    print_formula,
)


@pytest.mark.parametrize(
    "text",
    [
        "forall x, p, r. !(Conf(x, p) & Read(x, p, r))",
        "exists x. P(x) & x != c",
        "exists>=2 x. P(x)",
        "forall A/1. exists x. A(x) | Q",
        "exists B/2. forall x, y. B(x, y) -> E(x, y)",
        "(P <-> Q) | !R",
        "true & (false | P(x))",
    ],
)
def test_printed_formula_is_stable(text):
    printed = print_formula(parse_formula(text, constants=["c"]))

    assert print_formula(parse_formula(printed, constants=["c"])) == printed


def test_parse_formula_binds_constants():
    formula = parse_formula("forall x. P(x, c) | x = d", constants=["c", "d"])

    assert constants(formula) == {"c", "d"}
    assert not free_vars(formula)


def test_parse_formula_keeps_unknown_identifiers_free():
    formula = parse_formula("P(x, c)")

    assert free_vars(formula) == {"x", "c"}
    assert not constants(formula)


def test_parse_formula_predicates_and_arities():
    formula = parse_formula("forall x, y. E(x, y) -> R(x, y) | Q")

    assert predicates(formula) == {"E": 2, "R": 2, "Q": 0}


def test_parse_formula_builders_agree():
    parsed = parse_formula("P(x) & !Q(x, c)", constants=["c"])

    assert parsed == conj(atom("P", "x"), neg(atom("Q", Var("x"), Const("c"))))


def test_parse_formula_special_quantifiers():
    counting = parse_formula("exists>=3 x. P(x)")
    second_order = parse_formula("forall A/2. A(x, y)")

    assert isinstance(counting, CountExists)
    assert counting.threshold == 3
    assert isinstance(second_order, SOForall)
    assert second_order.arity == 2
    # the bound predicate is not free
    assert "A" not in predicates(second_order)


@pytest.mark.parametrize(
    "text, position",
    [
        ("forall x P(x)", "line 1"),
        ("P(x", "line 1"),
        ("P(x) &\n& Q", "line 2"),
    ],
)
def test_parse_formula_syntax_error(text, position):
    with pytest.raises(FormulaParseError, match=position):
        parse_formula(text)


def test_parse_formula_reserved_prefix():
    with pytest.raises(FormulaParseError, match="reserved prefix"):
        parse_formula("exists _y. P(_y)")


def test_formula_parse_error_is_value_error():
    with pytest.raises(ValueError):
        parse_formula("forall . P")


def test_parse_formula_reports_deepest_failure():
    with pytest.raises(FormulaParseError) as e:
        parse_formula("P(x) &\n& Q")

    assert (e.value.line, e.value.column) == (2, 1)


def test_parse_game_reports_deepest_failure_in_formula():
    with pytest.raises(FormulaParseError) as e:
        parse_game("state P/1;\nnode n0 start;\ninit forall x. P(x) &\n  | P(x);\n")

    assert (e.value.line, e.value.column) == (4, 3)

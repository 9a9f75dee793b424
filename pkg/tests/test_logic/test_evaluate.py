import pytest

from fo_games.logic import all_relations, evaluate, parse_formula


@pytest.mark.parametrize(
    "text, relations, expected",
    [
        ("forall x. P(x)", {"P": {(0,), (1,)}}, True),
        ("forall x. P(x)", {"P": {(0,)}}, False),
        ("exists x, y. E(x, y) & x != y", {"E": {(0, 0)}}, False),
        ("exists x, y. E(x, y) & x != y", {"E": {(1, 0)}}, True),
        ("exists>=2 x. P(x)", {"P": {(0,), (1,)}}, True),
        ("exists>=2 x. P(x)", {"P": {(1,)}}, False),
        ("Q", {"Q": {()}}, True),
        ("Q", {}, False),
    ],
)
def test_evaluate(text, relations, expected):
    assert evaluate(parse_formula(text), 2, {}, relations) is expected


def test_evaluate_constants_and_free_variables():
    formula = parse_formula("P(c) & x = c", constants=["c"])

    assert evaluate(formula, 3, {"c": 2}, {"P": {(2,)}}, {"x": 2})
    assert not evaluate(formula, 3, {"c": 2}, {"P": {(2,)}}, {"x": 1})


@pytest.mark.parametrize(
    "text, expected",
    [
        ("forall A/1. exists x. A(x) | !A(x)", True),
        ("forall A/1. exists x. A(x)", False),
        ("exists B/1. forall x. B(x) <-> P(x)", True),
        ("exists B/0. B & !B", False),
    ],
)
def test_evaluate_second_order(text, expected):
    assert evaluate(parse_formula(text), 2, {}, {"P": {(1,)}}) is expected


def test_all_relations_count():
    assert len(list(all_relations(2, 1))) == 4
    assert len(list(all_relations(2, 2))) == 16
    assert sorted(all_relations(3, 0), key=len) == [frozenset(), frozenset({()})]

import pytest

from fo_games.logic import (
    FALSE,
    TRUE,
    canonical_form,
    equivalent_bounded,
    parse_formula,
    predicates,
    simplify,
)


@pytest.mark.parametrize(
    "text",
    [
        "(A | B) & (A | B | C)",
        "forall x. P(x) & (Q(x) | !Q(x))",
        "exists x. x = c & P(x)",
        "forall x, y. !E(x, y) | x = y",
        "exists x, y. P(x) & Q(y)",
        "forall x. (P(x) -> Q(x)) & (R | S(x))",
        "exists>=2 x. P(x) & true",
    ],
)
def test_simplify_preserves_meaning(text):
    formula = parse_formula(text, constants=["c"])

    assert equivalent_bounded(formula, simplify(formula), 3)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("P(c) | true", TRUE),
        ("P(c) & !P(c)", FALSE),
        ("P(c) | !P(c)", TRUE),
        ("forall x. c = c", TRUE),
        ("exists x. x = c", TRUE),
    ],
)
def test_simplify_constants(text, expected):
    assert simplify(parse_formula(text, constants=["c"])) is expected


def test_simplify_absorbs_clauses():
    assert simplify(parse_formula("(A | B) & (A | B | C)")).to_text() == "A | B"


def test_simplify_drops_unused_quantifiers():
    simplified = simplify(parse_formula("forall A/1. exists x, y. P(x)"))

    assert simplified.to_text() == "exists x. P(x)"


def test_simplify_is_idempotent():
    formula = parse_formula("forall x. (P(x) | Q) & (P(x) | Q | R(x))")
    once = simplify(formula)

    assert simplify(once) == once


def test_canonical_form_ignores_variable_names():
    left = canonical_form(parse_formula("forall x, y. !E(x, y) | R(y)"))
    right = canonical_form(parse_formula("forall a, b. !E(a, b) | R(b)"))

    assert left == right
    assert predicates(left) == {"E": 2, "R": 1}

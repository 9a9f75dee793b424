import pytest

from fo_games.exceptions import FragmentError
from fo_games.logic import TRUE, equivalent_bounded, parse_formula
from fo_games.soqe import b_prenex, normal_form


@pytest.mark.parametrize(
    "text",
    [
        "forall x. !C(x) | !B(x)",
        "forall x, y. !E(x, y) | !B(x) | B(y)",
        "(forall x. C(x) | B(x)) & (forall x. !D(x) | !B(x)) & exists x. C(x)",
        "exists x. B(x) & C(x)",
    ],
)
def test_normal_form_recomposes_to_equivalent_formula(text):
    formula = parse_formula(text)

    nf = normal_form(formula, "B")

    assert nf.exact
    assert equivalent_bounded(formula, nf.recompose(), 3)


def test_normal_form_parts():
    nf = normal_form(parse_formula("(forall x. C(x) | B(x)) & (forall x, y. !E(x, y) | !B(x) | B(y))"), "B")

    assert nf.e == TRUE
    assert nf.f != TRUE
    assert nf.g == TRUE
    assert not nf.is_simple
    assert nf.arity == 1


def test_normal_form_without_predicate():
    formula = parse_formula("forall x. C(x)")

    nf = normal_form(formula, "B")

    assert nf.e == formula
    assert nf.is_simple


def test_normal_form_pulls_out_leading_existentials():
    nf = normal_form(parse_formula("exists x. B(x) & C(x)"), "B")

    assert len(nf.outer) == 1


def test_condensable_repeated_occurrences_stay_exact():
    nf = normal_form(parse_formula("forall x, y. B(x) | B(y) | C(x)"), "B")

    assert nf.exact
    assert nf.is_simple


def test_repeated_occurrences_are_strengthened():
    nf = normal_form(parse_formula("forall x, y. B(x) | B(y) | E(x, y)"), "B")

    assert not nf.exact


def test_existential_below_universal_is_rejected():
    with pytest.raises(FragmentError, match="below an existential quantifier"):
        normal_form(parse_formula("forall x. exists y. E(x, y) & B(y)"), "B")


def test_b_prenex_keeps_unrelated_subformulas():
    outer, universal, matrix = b_prenex(parse_formula("(exists x. C(x)) & forall y. B(y)"), "B")

    assert outer == ()
    assert len(universal) == 1
    assert "exists" in matrix.to_text()

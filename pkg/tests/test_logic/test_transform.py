import pytest

from fo_games.exceptions import CNFBudgetExceededError
from fo_games.game import Definition
from fo_games.logic import (
    Lambda,
    apply_substitution,
    cnf_clauses,
    equivalent_bounded,
    exists,
    expand_counting,
    free_vars,
    is_universal,
    parse_formula,
    to_nnf,
    to_prenex_cnf,
)


def test_apply_substitution_replaces_predicates():
    theta = {"Review": Definition.of("y1, y2, y3", "Assign(y1, y2) & A3(y1, y2, y3)")}
    formula = parse_formula("forall x, p, r. !(Conf(x, p) & Review(x, p, r))")

    result = apply_substitution(formula, theta)

    assert result.to_text() == "forall x, p, r. !(Conf(x, p) & Assign(x, p) & A3(x, p, r))"


def test_apply_substitution_is_simultaneous():
    theta = {
        "P": Definition.of("y1", "Q(y1)"),
        "Q": Definition.of("y1", "P(y1)"),
    }
    formula = parse_formula("forall x. P(x) & !Q(x)")
    expected = parse_formula("forall x. Q(x) & !P(x)")

    assert equivalent_bounded(apply_substitution(formula, theta), expected, 2)


def test_apply_substitution_avoids_capture():
    theta = {"P": Lambda(("y1",), parse_formula("exists x. E(y1, x)"))}
    formula = parse_formula("forall x. P(x)")
    expected = parse_formula("forall z. exists w. E(z, w)")

    result = apply_substitution(formula, theta)

    assert not free_vars(result)
    assert equivalent_bounded(result, expected, 2)


def test_apply_substitution_keeps_free_variables_of_a_body_free():
    theta = {"P": Lambda(("y1",), parse_formula("E(y1, w)"))}
    formula = parse_formula("forall w. P(w)")

    result = apply_substitution(formula, theta)

    assert free_vars(result) == {"w"}
    assert equivalent_bounded(exists(("w",), result), parse_formula("exists w. forall v. E(v, w)"), 3)


def test_apply_substitution_leaves_unrelated_binders_alone():
    theta = {"P": Lambda(("y1",), parse_formula("E(y1, w)"))}

    result = apply_substitution(parse_formula("forall x. P(x)"), theta)

    assert result.to_text() == "forall x. E(x, w)"


def test_to_nnf_pushes_negation():
    assert to_nnf(parse_formula("!(forall x. P(x))")).to_text() == "exists x. !P(x)"


def test_cnf_clauses_distribute():
    clauses = cnf_clauses(parse_formula("A | B & C"))

    assert [[literal.to_text() for literal in clause] for clause in clauses] == [["A", "B"], ["A", "C"]]


def test_cnf_clauses_budget():
    wide = parse_formula(" | ".join(f"(A{index} & B{index})" for index in range(12)))

    with pytest.raises(CNFBudgetExceededError, match="clause budget of 100"):
        cnf_clauses(wide, budget=100)


def test_prenex_cnf_is_equivalent():
    formula = parse_formula("(forall x. P(x)) | (exists y. Q(y) & R(y))")
    prenex = to_prenex_cnf(formula)

    assert equivalent_bounded(formula, prenex.to_formula(), 3)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("forall x, y. !E(x, y) | x = y", True),
        ("P(c) & forall x. Q(x)", True),
        ("exists x. P(x)", False),
        ("forall x. exists y. E(x, y)", False),
    ],
)
def test_is_universal(text, expected):
    assert is_universal(parse_formula(text, constants=["c"])) is expected


def test_expand_counting():
    formula = parse_formula("exists>=2 x. P(x)")

    assert equivalent_bounded(formula, parse_formula("exists x, y. x != y & P(x) & P(y)"), 3)
    assert equivalent_bounded(expand_counting(formula), formula, 3)

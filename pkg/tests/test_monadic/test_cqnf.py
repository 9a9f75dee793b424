import pytest

from fo_games.exceptions import BoundEqualityError, NonMonadicError
from fo_games.logic import GroundModel, TRUE, equivalent_bounded, parse_formula, predicates
from fo_games.monadic import (
    abstract_disequalities,
    abstract_equalities,
    multiplicity,
    multiplicity_threshold,
    rank,
    to_cqnf,
)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("P(c)", 0),
        ("exists x. P(x)", 1),
        ("exists>=3 x. P(x)", 3),
        ("forall x. exists y. P(x) | Q(y)", 2),
        ("(exists x. P(x)) & (exists>=2 y. Q(y))", 2),
    ],
)
def test_rank(text, expected):
    assert rank(parse_formula(text, constants=["c"])) == expected


def test_rank_of_true():
    assert rank(TRUE) == 0


@pytest.mark.parametrize(
    "text",
    [
        "exists x. P(x) & x = c",
        "exists x. P(x) & x != c",
        "forall x. P(x) | Q(x)",
        "exists y. exists x. P(x) & x != y",
        "forall x. exists y. P(x) | Q(y) & x != y",
    ],
)
def test_cqnf_is_equivalent(text):
    formula = parse_formula(text, constants=["c"])

    assert equivalent_bounded(to_cqnf(formula), formula, 3)


def test_cqnf_substitutes_equalities():
    assert to_cqnf(parse_formula("exists x. P(x) & x = c", constants=["c"])).to_text() == "P(c)"


def test_cqnf_rejects_binary_predicates():
    with pytest.raises(NonMonadicError, match="formula must be monadic"):
        to_cqnf(parse_formula("exists x. E(x, x)"))


def test_abstract_equalities_with_constant():
    formula = parse_formula("forall x, y. P(x) | x = y", constants=["c"])

    result = abstract_equalities(formula, ["c"])

    assert result.to_text() == "forall x, y. P(x) | c = x & c = y"


def test_abstract_equalities_without_constants_drops_equality():
    assert abstract_equalities(parse_formula("forall x, y. P(x) | x = y")).to_text() == "forall x. P(x)"


def test_abstract_equalities_rejects_disequality():
    with pytest.raises(BoundEqualityError, match="no disequalities between bound variables"):
        abstract_equalities(parse_formula("exists x, y. P(x) & x != y"))


def test_abstract_disequalities_uses_predicates():
    result = abstract_disequalities(parse_formula("exists x, y. x != y"), predicates=["P"])

    assert sorted(predicates(result)) == ["P"]


def test_abstract_disequalities_rejects_equality():
    with pytest.raises(BoundEqualityError, match="no equalities between bound variables"):
        abstract_disequalities(parse_formula("forall x. exists y. x = y"))


def test_multiplicity_threshold():
    assert multiplicity_threshold(parse_formula("forall x, y. P(x) | x = y"), ["c"]) == 4
    assert multiplicity_threshold(parse_formula("exists>=2 x. P(x)")) == 3


@pytest.mark.parametrize(
    "size, rows, expected",
    [
        (3, [(0,), (1,)], 1),
        (4, [(0,), (1,)], 2),
        (2, [], 2),
    ],
)
def test_multiplicity(size, rows, expected):
    assert multiplicity(GroundModel(size=size, relations={"P": rows}), ["P"]) == expected

import pytest

from fo_games.exceptions import NonUniversalError
from fo_games.logic import equivalent_bounded, parse_formula, predicates, so_forall
from fo_games.soqe import eliminate_forall


@pytest.mark.parametrize(
    "text",
    [
        "forall x, y. A(x) | !A(y)",
        "forall x. !C(x) | A(x)",
        "forall x, y. !E(x, y) | A(x) | !A(y)",
        "(forall x. C(x) | A(x)) & forall x. D(x) | !A(x)",
    ],
)
def test_eliminate_forall_is_exact(text):
    formula = parse_formula(text)

    result = eliminate_forall(formula, "A")

    assert "A" not in predicates(result)
    assert equivalent_bounded(so_forall("A", 1, formula), result, 3)


def test_eliminate_forall_accepts_quantified_input():
    formula = parse_formula("forall x. !C(x) | A(x)")

    assert equivalent_bounded(eliminate_forall(so_forall("A", 1, formula), "A"), eliminate_forall(formula, "A"), 3)


def test_eliminate_forall_rejects_existentials():
    with pytest.raises(NonUniversalError, match="Expected a universal formula"):
        eliminate_forall(parse_formula("forall x. exists y. A(x) | E(x, y)"), "A")

import pytest

from fo_games.exceptions import FragmentError
from fo_games.decide import bsr_sat, bsr_valid, entails, small_model_size
from fo_games.logic import evaluate, parse_formula


@pytest.mark.parametrize(
    "text, expected",
    [
        ("forall x. P(x)", 1),
        ("(exists x. P(x)) & exists y. !P(y)", 2),
        ("exists x, y. forall z. E(x, z) | E(z, y)", 2),
        ("(exists x. P(x)) | exists x, y. Q(x, y)", 2),
        ("P(c) & exists x. x != c", 2),
    ],
)
def test_small_model_size(text, expected):
    assert small_model_size(parse_formula(text, constants=["c"])) == expected


def test_small_model_size_outside_fragment():
    with pytest.raises(FragmentError, match="exists-forall fragment"):
        small_model_size(parse_formula("forall x. exists y. E(x, y)"))


def test_bsr_sat_finds_smallest_model():
    formula = parse_formula("(exists x. P(x)) & exists y. !P(y)")

    model = bsr_sat(formula)

    assert model.size == 2
    assert evaluate(formula, model.size, model.constants, model.relations)


def test_bsr_sat_detects_unsatisfiable():
    assert bsr_sat(parse_formula("(exists x. P(x)) & forall y. !P(y)")) is None


def test_bsr_valid():
    assert bsr_valid(parse_formula("(forall x. P(x)) -> exists x. P(x)")) is None
    assert bsr_valid(parse_formula("(exists x. P(x)) -> forall x. P(x)")).size == 2


def test_entails_checks_every_conjunct():
    premise = parse_formula("forall x. P(x) & Q(x)")

    assert entails(premise, parse_formula("(forall x. P(x)) & forall x. Q(x)")).holds

    result = entails(premise, parse_formula("(forall x. P(x)) & forall x. R(x)"))
    assert not result.holds
    assert result.countermodel is not None
    assert not result.bounded


def test_entails_outside_fragment_is_bounded():
    premise = parse_formula("forall x. exists y. E(x, y)")

    result = entails(premise, parse_formula("forall x. exists y. E(x, y) | x = y"))

    assert result.holds
    assert result.bounded

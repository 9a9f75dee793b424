import pytest

from fo_games.config import SolverConfig
from fo_games.exceptions import EnumerationBudgetError, FragmentError, NonMonadicError
from fo_games.game import parse_game
from fo_games.logic import equivalent_bounded, parse_formula
from fo_games.monadic import (
    decide_mono_A,
    decide_mono_B,
    decide_monadic,
    decide_plain,
    detect_fragment,
    eliminate_monadic,
    monadic_entails,
    monadic_small_model_bound,
)

PLAIN_SAFE = "constants c; state P/1; node n0 start; edge n0 -> n0 {} init P(c); assert n0: P(c);"
PLAIN_UNSAFE = """
constants c;
state P/1;
node n0 start;
node n1;
edge n0 -> n1 { P(y1) := !P(y1); }
init P(c);
assert n1: P(c);
"""
MONO_A = """
state P/1;
inputA A1/1;
node n0 start;
node n1;
edge n0 -> n1 owner A { P(y1) := A1(y1); }
assert n1: forall x. P(x);
"""
MONO_B = """
state P/1;
inputB B1/1;
node n0 start;
node n1;
edge n0 -> n1 owner B { P(y1) := B1(y1); }
assert n1: forall x. P(x);
"""
BOTH = """
state P/1, Q/1;
inputA A1/1;
inputB B1/1;
node n0 start;
node n1;
node n2;
edge n0 -> n1 owner A { P(y1) := A1(y1); }
edge n1 -> n2 owner B { Q(y1) := B1(y1); }
"""


def test_monadic_entails_counts():
    premise = parse_formula("exists>=2 x. P(x)")

    assert monadic_entails(premise, parse_formula("exists x, y. P(x) & P(y) & x != y")).holds

    result = monadic_entails(parse_formula("exists x. P(x)"), premise)
    assert not result.holds
    assert result.countermodel.size == 1


def test_monadic_entails_rejects_binary():
    with pytest.raises(NonMonadicError):
        monadic_entails(parse_formula("forall x. E(x, x)"), parse_formula("true"))


@pytest.mark.parametrize(
    "text, fragment",
    [
        (PLAIN_SAFE, "plain"),
        (MONO_A, "monoA"),
        (MONO_B, "monoB"),
    ],
)
def test_detect_fragment(text, fragment):
    assert detect_fragment(parse_game(text)) == fragment


def test_detect_fragment_rejects_both_players():
    with pytest.raises(FragmentError, match="inputs of only one player"):
        detect_fragment(parse_game(BOTH))


def test_small_model_bound():
    game = parse_game("state P/1, Q/1; node n0 start; assert n0: forall x. P(x) | Q(x);")

    assert monadic_small_model_bound(game) == 4


def test_decide_plain_safe():
    result = decide_plain(parse_game(PLAIN_SAFE))

    assert result.verdict == "safe"
    assert result.fragment == "plain"
    assert result.witness is None
    assert set(result.invariant) == {"n0"}


def test_decide_plain_unsafe():
    result = decide_plain(parse_game(PLAIN_UNSAFE))

    assert result.verdict == "unsafe"
    assert result.h == 1
    assert result.witness is not None
    assert result.witness.holds("P", (result.witness.constants["c"],))


def test_decide_plain_rejects_inputs():
    with pytest.raises(FragmentError, match="no input predicates"):
        decide_plain(parse_game(MONO_A))


def test_decide_plain_rejects_binary_state():
    game = parse_game("state E/2; node n0 start; assert n0: forall x. !E(x, x);")

    with pytest.raises(NonMonadicError, match="E/2"):
        decide_plain(game)


def test_decide_plain_iteration_cap():
    with pytest.raises(EnumerationBudgetError, match="Monadic iteration"):
        decide_plain(parse_game(PLAIN_UNSAFE), SolverConfig(max_iter=0))


def test_decide_mono_a_adversary_wins():
    result = decide_mono_A(parse_game(MONO_A))

    assert result.verdict == "unsafe"
    assert result.fragment == "monoA"


def test_decide_mono_b_controller_wins():
    result = decide_mono_B(parse_game(MONO_B))

    assert result.verdict == "safe"
    assert result.fragment == "monoB"


@pytest.mark.parametrize(
    "procedure, text",
    [
        (decide_mono_A, MONO_B),
        (decide_mono_B, MONO_A),
    ],
)
def test_wrong_player_inputs(procedure, text):
    with pytest.raises(FragmentError):
        procedure(parse_game(text))


@pytest.mark.parametrize(
    "text, verdict",
    [
        (PLAIN_SAFE, "safe"),
        (MONO_A, "unsafe"),
        (MONO_B, "safe"),
    ],
)
def test_decide_monadic_detects_fragment(text, verdict):
    assert decide_monadic(parse_game(text)).verdict == verdict


def test_eliminate_monadic_universal():
    result = eliminate_monadic(parse_formula("forall A/1. forall x. !A(x) | P(x)"))

    assert equivalent_bounded(result, parse_formula("forall x. P(x)"), 3)


def test_eliminate_monadic_nullary():
    assert eliminate_monadic(parse_formula("exists B/0. B & Q")).to_text() == "Q"

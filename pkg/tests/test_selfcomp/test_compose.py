import pytest

from fo_games.exceptions import GameSemanticError
from fo_games.game import builtin_fixture, parse_game, print_game, prime
from fo_games.logic import FALSE, predicates
from fo_games.selfcomp import NiSpec, self_compose


@pytest.fixture
def composed():
    return self_compose(builtin_fixture("conference"), NiSpec(secrets={"A2": "!Conf(a, y2)"}))


def test_secret_edge_reads_both_inputs(composed):
    game = composed.game

    assert game.nodes == ("0", "1", "2", "3", "4")
    assert [edge.name for edge in game.edges] == ["0->1", "1->2", "2->3", "3->4", "4->3"]

    secret = game.edges[2]
    assert secret.owner == "A"
    assert secret.input_pred == "A2"
    assert secret.mux_inputs == ("A2'",)
    assert secret.inputs == ("A2", "A2'")


def test_one_primed_copy_per_state_predicate(composed):
    signature = composed.game.signature
    original = builtin_fixture("conference").signature

    assert set(signature.state) == set(original.state) | {prime(pred) for pred in original.state}
    assert signature.state["Conf'"] == 2
    assert signature.state["Read'"] == 3
    assert signature.inputs_a == {**original.inputs_a, "A2'": 3}
    assert signature.inputs_b == {"B1": 2}
    assert "a" in signature.constants


def test_public_edges_update_both_tracks(composed):
    edge = composed.game.edges[0]

    assert {"Conf", "Conf'"} <= set(edge.theta)
    assert sorted(predicates(edge.theta["Conf'"].body)) == ["A1"]
    assert edge.mux_inputs == ()


def test_secret_mixes_shared_and_fresh_input(composed):
    edge = composed.game.edges[2]

    assert sorted(predicates(edge.theta["Review'"].body)) == ["A2", "A2'", "Assign'", "Conf", "Conf'"]
    assert sorted(predicates(edge.theta["Review"].body)) == ["A2", "Assign"]


def test_composed_game_prints_and_parses(composed):
    text = print_game(composed.game)

    assert "edge 2 -> 3 owner A input A2, A2'" in text
    parsed = parse_game(text, name="conference-ni")
    assert parsed.edges[2].inputs == ("A2", "A2'")
    texts = {pred: definition.to_text() for pred, definition in composed.game.edges[2].theta.items()}
    assert {pred: definition.to_text() for pred, definition in parsed.edges[2].theta.items()} == texts


def test_observer_assertion_at_every_node(composed):
    game = composed.game
    observed = game.assertion_at("0")

    assert all(game.assertion_at(node) == observed for node in game.nodes)
    assert {"Conf", "Conf'", "Read", "Read'"} <= set(predicates(observed))
    assert game.name == "conference-ni"


def test_secret_without_declassification():
    spec = NiSpec(secrets={"A2": None})
    composed = self_compose(builtin_fixture("conference"), spec)

    assert spec.secrets["A2"] == FALSE
    assert sorted(predicates(composed.game.edges[2].theta["Review'"].body)) == ["A2'", "Assign'"]


def test_full_disclosure_shares_the_secret():
    composed = self_compose(builtin_fixture("conference"), NiSpec(secrets={"A2": "true"}))

    assert sorted(predicates(composed.game.edges[2].theta["Review'"].body)) == ["A2", "Assign'"]


@pytest.mark.parametrize(
    "secrets, error",
    [
        ({"B1": None}, "Secrets \\['B1'\\] are not input predicates of player A"),
        ({"A7": None}, "Secrets \\['A7'\\] are not input predicates of player A"),
        ({"A2": "!Conf(x, y2)"}, "Declassification of A2 uses variables \\['x'\\]"),
    ],
)
def test_invalid_secrets(secrets, error):
    with pytest.raises(GameSemanticError, match=error):
        self_compose(builtin_fixture("conference"), NiSpec(secrets=secrets))


def test_equivalence_and_observation(composed):
    assert dict(predicates(composed.equivalence("Conf"))) == {"Conf": 2, "Conf'": 2}
    assert composed.original_name("Conf'") == "Conf"
    assert composed.original_name("A2'") == "A2'"

import pytest

from fo_games.exceptions import UnknownFixtureError
from fo_games.game import (
    FixtureRegistry,
    builtin_fixture,
    check_game,
    parse_game,
    register_fixture,
)

BUILTIN = ["conference", "conference-acyclic", "transitive-closure", "leader-election"]


@pytest.mark.parametrize("name", BUILTIN)
def test_builtin_fixtures_are_well_formed(name):
    game = builtin_fixture(name)

    assert game.name == name
    assert check_game(game) is game
    assert name in FixtureRegistry.names()


def test_conference_shape():
    game = builtin_fixture("conference")

    assert game.nodes == ("0", "1", "2", "3", "4")
    assert game.start == "0"
    assert [edge.name for edge in game.b_edges()] == ["1->2"]
    assert [edge.name for edge in game.out_edges("3")] == ["3->4"]


def test_leader_election_carries_invariant():
    game = builtin_fixture("leader-election")

    assert set(game.invariant) == set(game.nodes)


def test_unknown_fixture():
    with pytest.raises(UnknownFixtureError, match="Unknown fixture 'chess'"):
        builtin_fixture("chess")


def test_register_fixture():
    @register_fixture("single-node")
    def single_node():
        return parse_game("node n0 start;", name="single-node")

    assert FixtureRegistry.get("single-node") is single_node
    assert FixtureRegistry.get_key(single_node) == "single-node"
    assert builtin_fixture("single-node").nodes == ("n0",)

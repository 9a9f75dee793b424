# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Games shipped with the package, addressable by name."""

from __future__ import annotations

from typing import Callable, ClassVar, List

from bidict import bidict

from fo_games.exceptions import UnknownFixtureError
from fo_games.game.models import Game
from fo_games.game.parser import parse_game

FixtureBuilder = Callable[[], Game]


class FixtureRegistry:
    """Registry of game fixtures"""

    _mapping: ClassVar[bidict[str, FixtureBuilder]] = bidict()

    @classmethod
    def get(cls, name: str) -> FixtureBuilder:
        """Get fixture builder by name

        Parameters
        ----------
        name : str

            Fixture name

        Examples
        --------

        >>> from fo_games.game import FixtureRegistry
        >>> FixtureRegistry.get("conference")().name
        'conference'
        >>> FixtureRegistry.get("unknown")
        Traceback (most recent call last):
            ...
        KeyError: "Unknown fixture 'unknown'"
        """

        result = cls._mapping.get(name)
        if not result:
            raise KeyError(f"Unknown fixture {name!r}")

        return result

    @classmethod
    def get_key(cls, builder: FixtureBuilder) -> str:
        """Get fixture name of a builder

        Examples
        --------

        >>> from fo_games.game import FixtureRegistry
        >>> FixtureRegistry.get_key(FixtureRegistry.get("conference"))
        'conference'
        >>> FixtureRegistry.get_key(lambda: None)
        Traceback (most recent call last):
            ...
        KeyError: "You should register '<lambda>' using @register_fixture decorator"
        """

        result = cls._mapping.inverse.get(builder)
        if not result:
            raise KeyError(f"You should register {builder.__qualname__!r} using @register_fixture decorator")

        return result

    @classmethod
    def add(cls, name: str, builder: FixtureBuilder) -> None:
        """Add mapping ``name`` -> ``builder`` to registry"""

        cls._mapping[name] = builder

    @classmethod
    def names(cls) -> List[str]:
        """
        Examples
        --------

        >>> from fo_games.game import FixtureRegistry
        >>> [name for name in FixtureRegistry.names() if name.startswith("conference")]
        ['conference', 'conference-acyclic']
        """
        return sorted(cls._mapping)


def register_fixture(name: str):
    """Decorator registering a function without arguments that returns a :obj:`Game`

    Examples
    --------

    >>> from fo_games.game import builtin_fixture, parse_game, register_fixture
    >>> @register_fixture("tiny")
    ... def tiny():
    ...     return parse_game("state P/0; node n0 start; assert n0: !P; init !P;", name="tiny")
    >>> builtin_fixture("tiny").nodes
    ('n0',)
    """

    def wrapper(builder: FixtureBuilder) -> FixtureBuilder:
        FixtureRegistry.add(name, builder)
        return builder

    return wrapper


def builtin_fixture(name: str) -> Game:
    """Build the fixture registered as ``name``.

    Examples
    --------

    >>> from fo_games.game import builtin_fixture
    >>> game = builtin_fixture("conference")
    >>> len(game.nodes), game.assertion_at("3").to_text()
    (5, 'forall x, p, r. !(Conf(x, p) & Read(x, p, r))')
    >>> builtin_fixture("chess")
    Traceback (most recent call last):
        ...
    fo_games.exceptions.UnknownFixtureError: Unknown fixture 'chess'
    """
    try:
        builder = FixtureRegistry.get(name)
    except KeyError:
        raise UnknownFixtureError(name) from None
    return builder()


CONFERENCE = """
state Conf/2, Assign/2, Review/3, Read/3;
inputA A1/2, A2/3, A3/3;
inputB B1/2;
node 0 start;
node 1;
node 2;
node 3;
node 4;
edge 0 -> 1 owner A input A1 { Conf(y1, y2) := A1(y1, y2); }
edge 1 -> 2 owner B input B1 { Assign(y1, y2) := B1(y1, y2); }
edge 2 -> 3 owner A input A2 { Review(y1, y2, y3) := Assign(y1, y2) & A2(y1, y2, y3); }
edge 3 -> 4 owner A { Read(y1, y2, y3) +:= exists y. Assign(y1, y2) & Review(y, y2, y3); }
edge 4 -> 3 owner A input A3 { Review(y1, y2, y3) +:= Assign(y1, y2) & A3(y1, y2, y3); }
init (forall x, p. !Conf(x, p) & !Assign(x, p)) & (forall x, p, r. !Review(x, p, r) & !Read(x, p, r));
assert all: forall x, p, r. !(Conf(x, p) & Read(x, p, r));
"""

CONFERENCE_ACYCLIC = """
state Conf/2, Assign/2, Review/3, Read/3;
inputA A1/2, A2/3, A3/3, A4/3;
inputB B1/2;
node 0 start;
node 1;
node 2;
node 3;
node 4;
node 5;
node 6;
node 7;
node 8;
edge 0 -> 1 owner A input A1 { Conf(y1, y2) := A1(y1, y2); }
edge 1 -> 2 owner B input B1 { Assign(y1, y2) := B1(y1, y2); }
edge 2 -> 3 owner A input A2 { Review(y1, y2, y3) := Assign(y1, y2) & A2(y1, y2, y3); }
edge 3 -> 4 owner A { Read(y1, y2, y3) +:= exists y. Assign(y1, y2) & Review(y, y2, y3); }
edge 4 -> 5 owner A input A3 { Review(y1, y2, y3) +:= Assign(y1, y2) & A3(y1, y2, y3); }
edge 5 -> 6 owner A { Read(y1, y2, y3) +:= exists y. Assign(y1, y2) & Review(y, y2, y3); }
edge 6 -> 7 owner A input A4 { Review(y1, y2, y3) +:= Assign(y1, y2) & A4(y1, y2, y3); }
edge 7 -> 8 owner A { Read(y1, y2, y3) +:= exists y. Assign(y1, y2) & Review(y, y2, y3); }
init (forall x, p. !Conf(x, p) & !Assign(x, p)) & (forall x, p, r. !Review(x, p, r) & !Read(x, p, r));
assert all: forall x, p, r. !(Conf(x, p) & Read(x, p, r));
"""

TRANSITIVE_CLOSURE = """
state E/2, R1/2, R2/2;
inputA A1/2, A2/2;
inputB B1/2;
node n0 start;
node n1;
node n2;
node n3;
edge n0 -> n1 owner A input A1 { E(y1, y2) := A1(y1, y2); }
edge n1 -> n2 owner B input B1 { R1(y1, y2) := B1(y1, y2); }
edge n2 -> n3 owner A input A2 { R2(y1, y2) := A2(y1, y2); }
init true;
assert n3:
    (forall x, y. (E(x, y) | exists z. R2(x, z) & E(z, y)) -> R2(x, y))
    -> (forall x, y. (E(x, y) | exists z. R1(x, z) & E(z, y)) -> R1(x, y))
    & (forall x, y. R1(x, y) -> R2(x, y));
"""

# Le is a total order on node ids, Btw(x, y, z) says y lies strictly between x and z on the ring
RING_AXIOMS = """
    (forall x. Le(x, x))
    & (forall x, y. Le(x, y) & Le(y, x) -> x = y)
    & (forall x, y, z. Le(x, y) & Le(y, z) -> Le(x, z))
    & (forall x, y. Le(x, y) | Le(y, x))
    & (forall w, x, y, z. Btw(w, x, y) & Btw(w, y, z) -> Btw(w, x, z))
    & (forall w, x, y. Btw(w, x, y) -> !Btw(w, y, x))
    & (forall w, x, y. w != x & x != y & w != y -> Btw(w, x, y) | Btw(w, y, x))
    & (forall x, y, z. Btw(x, y, z) -> Btw(y, z, x))
    & (forall a, b, z. Next(a, b) -> a != b & !Btw(a, z, b))
"""

LEADER_ELECTION = f"""
state Le/2, Btw/3, Next/2, Msg/3, Leader/1;
inputA A1/1;
inputB B1/3;
node n0 start;
node n1;
node n2;
edge n0 -> n1 owner B input B1 {{ Msg(y1, y2, y3) +:= B1(y1, y2, y3) & Next(y1, y3); }}
edge n1 -> n2 owner A input A1 {{ Leader(y1) +:= A1(y1) & exists a. Msg(a, y1, y1); }}
edge n2 -> n0 owner A {{ }}
init {RING_AXIOMS} & (forall a, i, b. !Msg(a, i, b)) & (forall n. !Leader(n));
assert all: forall x, y. Leader(x) & Leader(y) -> x = y;
invariant all: {RING_AXIOMS};
invariant all: forall n, m. Leader(n) -> Le(m, n);
invariant all: forall a, i, n. Msg(a, i, i) -> Le(n, i);
invariant all: forall a, i, b, n. Msg(a, i, b) & Btw(b, i, n) -> Le(n, i);
"""


@register_fixture("conference")
def conference() -> Game:
    return parse_game(CONFERENCE, name="conference")


@register_fixture("conference-acyclic")
def conference_acyclic() -> Game:
    return parse_game(CONFERENCE_ACYCLIC, name="conference-acyclic")


@register_fixture("transitive-closure")
def transitive_closure() -> Game:
    return parse_game(TRANSITIVE_CLOSURE, name="transitive-closure")


@register_fixture("leader-election")
def leader_election() -> Game:
    """Ring leader election where B decides which ids are forwarded.

    The invariant blocks are a reconstruction and not part of the safety assertion.
    """
    return parse_game(LEADER_ELECTION, name="leader-election")

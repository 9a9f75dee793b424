# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

import logging

from frozendict import frozendict

from fo_games.exceptions import GameSemanticError, UncoveredStrategyError
from fo_games.game.models import Definition, Game, Strategy
from fo_games.logic import apply_substitution, predicates

log = logging.getLogger(__name__)


def check_strategy(game: Game, strategy: Strategy) -> None:
    """Strategy bodies may mention state predicates only."""
    state = game.signature.state
    for name, definition in strategy.choices.items():
        if name in game.signature.inputs_b and len(definition.params) != game.signature.inputs_b[name]:
            raise GameSemanticError(
                f"Strategy for {name} has {len(definition.params)} parameters, expected {game.signature.inputs_b[name]}",
            )
        foreign = sorted(set(predicates(definition.body)) - set(state))
        if foreign:
            raise GameSemanticError(f"Strategy for {name} mentions non-state predicates {foreign}")


def apply_strategy(game: Game, strategy: Strategy) -> Game:
    """The game in which every B predicate is replaced by its strategy formula.

    Former B-edges keep their owner but carry no input predicate; B predicates are
    dropped from the signature.

    Examples
    --------

    >>> from fo_games.game import Definition, Strategy, apply_strategy, builtin_fixture
    >>> game = builtin_fixture("conference")
    >>> strategy = Strategy(choices={"B1": Definition.of("y1, y2", "!Conf(y1, y2)")})
    >>> edge = apply_strategy(game, strategy).edges[1]
    >>> edge.source, edge.target, edge.theta["Assign"].body.to_text()
    ('1', '2', '!Conf(y1, y2)')
    """
    missing = set(game.b_predicates()) - set(strategy.choices)
    if missing:
        raise UncoveredStrategyError(missing)
    check_strategy(game, strategy)

    edges = []
    for edge in game.edges:
        if edge.owner != "B":
            edges.append(edge)
            continue
        theta = {
            pred: Definition(params=definition.params, body=apply_substitution(definition.body, strategy.choices))
            for pred, definition in edge.theta.items()
        }
        edges.append(edge.copy(update={"theta": frozendict(theta), "input_pred": None}))

    signature = game.signature.copy(update={"inputs_b": frozendict()})
    log.debug("|Strategy| Applied strategy for %s", ", ".join(strategy.choices) or "no predicates")
    return game.copy(update={"signature": signature, "edges": tuple(edges)})

# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

import logging
from typing import Mapping, Optional, Tuple

from fo_games.config import SolverConfig, current_config
from fo_games.decide import entails
from fo_games.exceptions import PreconditionError
from fo_games.game import Definition, Edge, Game
from fo_games.logic import (
    TRUE,
    Atom,
    Forall,
    Formula,
    Not,
    Or,
    apply_substitution,
    cnf_clauses,
    is_quantifier_free,
    predicates,
    universal_clauses,
)
from fo_games.soqe.choice import ackermann_eliminate
from fo_games.soqe.normal_form import normal_form

log = logging.getLogger(__name__)


def _polarities(clause, pred: str) -> set[bool]:
    found = set()
    for literal in clause:
        if isinstance(literal, Atom) and literal.pred == pred:
            found.add(True)
        elif isinstance(literal, Not) and isinstance(literal.body, Atom) and literal.body.pred == pred:
            found.add(False)
    return found


def _literals(clause: Formula) -> Tuple[Formula, ...]:
    body = clause.body if isinstance(clause, Forall) else clause
    return body.items if isinstance(body, Or) else (body,)


def is_ackermannian(pred: str, theta: Mapping[str, Definition]) -> bool:
    """Every update mentioning ``pred`` is quantifier-free with no CNF clause using it in both polarities.

    Examples
    --------

    >>> from fo_games.game import Definition
    >>> from fo_games.soqe import is_ackermannian
    >>> is_ackermannian("B1", {"Assign": Definition.of("y1, y2", "B1(y1, y2)")})
    True
    >>> is_ackermannian("B1", {"R": Definition.of("y1, y2", "B1(y1, y2) <-> B1(y2, y1)")})
    False
    """
    for definition in theta.values():
        body = definition.body
        if pred not in predicates(body):
            continue
        if not is_quantifier_free(body):
            return False
        if any(len(_polarities(clause, pred)) > 1 for clause in cnf_clauses(body)):
            return False
    return True


def weakest_strategy_ackermannian(
    game: Game,
    assertion: Mapping[str, Formula],
    edge: Edge,
    config: Optional[SolverConfig] = None,
) -> Tuple[Formula, Formula]:
    """Weakest choice for the input of a B-edge and the eliminated precondition.

    The update must be ackermannian in the input predicate and every clause of the target
    formula may have at most one literal whose image mentions it. The choice is given over
    the formal parameters ``y1, y2, ...`` and is relative to the source formula when that
    formula implies the part of the precondition without the input.

    Examples
    --------

    >>> from fo_games.game import builtin_fixture
    >>> from fo_games.logic import parse_formula
    >>> from fo_games.soqe import weakest_strategy_ackermannian
    >>> game = builtin_fixture("conference")
    >>> psi = {"2": parse_formula("forall x, p. !Conf(x, p) | !Assign(x, p)")}
    >>> choice, residual = weakest_strategy_ackermannian(game, psi, game.edges[1])
    >>> choice.to_text(), residual.to_text()
    ('!Conf(y1, y2)', 'true')
    """
    config = current_config(config)
    pred = edge.input_pred
    post = assertion.get(edge.target, TRUE)
    image = apply_substitution(post, edge.theta)
    if pred is None or pred not in predicates(image):
        return TRUE, image
    if not is_ackermannian(pred, edge.theta):
        raise PreconditionError(f"Update is not ackermannian in {pred}", edge.name)

    for clause in universal_clauses(post, config.clause_budget):
        touching = [lit for lit in _literals(clause) if pred in predicates(apply_substitution(lit, edge.theta))]
        if len(touching) > 1:
            raise PreconditionError(f"Clause {clause.to_text()} has more than one literal depending on {pred}", edge.name)

    nf = normal_form(image, pred, config.clause_budget)
    result = chosen = ackermann_eliminate(nf)
    source = assertion.get(edge.source)
    if source is not None and nf.e != TRUE and entails(source, nf.e, config).holds:
        chosen = ackermann_eliminate(nf.copy(update={"e": TRUE}))
    choice = chosen.definition().body
    log.debug("|Ackermann| Weakest choice for %s on edge %s: %s", pred, edge.name, choice.to_text())
    return choice, result.eliminated

# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Boundary and inductiveness checks for candidate invariants."""

from __future__ import annotations

import logging
from typing import Iterable, List, Mapping, Optional, Tuple

from fo_games.config import SolverConfig, current_config
from fo_games.decide import entails
from fo_games.exceptions import PreconditionError
from fo_games.game import Game, Strategy, apply_strategy
from fo_games.logic import (
    TRUE,
    CountExists,
    Exists,
    Forall,
    Formula,
    apply_substitution,
    implies,
    is_quantifier_free,
    is_universal,
    predicates,
    subformulas,
    to_nnf,
)
from fo_games.engine.models import CertificateReport, Obligation

log = logging.getLogger(__name__)

Condition = Tuple[str, Formula, Formula]


def _check_update(body: Formula, b_preds: Iterable[str], edge: str) -> None:
    b_preds = set(b_preds)
    for sub in subformulas(to_nnf(body)):
        if isinstance(sub, Exists) and b_preds & set(predicates(sub)):
            raise PreconditionError(f"B predicate occurs in the scope of an existential quantifier: {sub.to_text()}", edge)
        if isinstance(sub, (Forall, Exists, CountExists)) and not is_quantifier_free(sub.body):
            raise PreconditionError(f"Update uses nested quantifiers: {sub.to_text()}", edge)


def check_preconditions(game: Game, assertion: Mapping[str, Formula], strategy: Strategy) -> None:
    """Conditions under which every verification condition falls into the decidable fragment."""
    for node in game.nodes:
        formula = assertion.get(node, TRUE)
        if not is_universal(formula):
            raise PreconditionError(f"Invariant at {node} is not universal: {formula.to_text()}")
    for name, definition in strategy.choices.items():
        if not is_universal(definition.body):
            raise PreconditionError(f"Strategy for {name} is not universal: {definition.body.to_text()}")
    b_preds = game.signature.inputs_b
    for edge in game.edges:
        for definition in edge.theta.values():
            _check_update(definition.body, b_preds, edge.name)


def boundary_conditions(game: Game, assertion: Mapping[str, Formula]) -> List[Condition]:
    conditions = [(f"init -> {game.start}", game.init, assertion.get(game.start, TRUE))]
    for node in game.nodes:
        target = game.assertion_at(node)
        if target != TRUE:
            conditions.append((f"{node} -> assertion", assertion.get(node, TRUE), target))
    return conditions


def inductive_conditions(game: Game, assertion: Mapping[str, Formula], strategy: Strategy) -> List[Condition]:
    """``Psi[u] => Psi[v] theta`` for every edge of the game played with ``strategy``.

    Input predicates of A stay free, which makes validity equal to validity of the
    universally quantified precondition.
    """
    played = apply_strategy(game, strategy)
    conditions = []
    for edge in played.edges:
        image = apply_substitution(assertion.get(edge.target, TRUE), edge.theta)
        conditions.append((f"edge {edge.name}", assertion.get(edge.source, TRUE), image))
    return conditions


def _discharge(conditions: Iterable[Condition], config: SolverConfig) -> CertificateReport:
    obligations = []
    for name, premise, conclusion in conditions:
        result = entails(premise, conclusion, config)
        if not result.holds:
            log.info("|Certify| Condition %s fails", name)
        obligations.append(
            Obligation(
                name=name,
                formula=implies(premise, conclusion),
                holds=result.holds,
                countermodel=result.countermodel,
                bounded=result.bounded,
            ),
        )
    return CertificateReport(obligations=tuple(obligations))


def check_boundary(
    game: Game,
    assertion: Mapping[str, Formula],
    config: Optional[SolverConfig] = None,
) -> CertificateReport:
    """``Init => Psi[start]`` and ``Psi[v] => I[v]`` for every node.

    Examples
    --------

    >>> from fo_games.engine import check_boundary
    >>> from fo_games.game import builtin_fixture
    >>> from fo_games.logic import FALSE
    >>> game = builtin_fixture("conference")
    >>> check_boundary(game, dict(game.assertion)).holds
    True
    >>> report = check_boundary(game, {node: FALSE for node in game.nodes})
    >>> report.failures[0].name, report.failures[0].countermodel.size
    ('init -> 0', 1)
    """
    config = current_config(config)
    return _discharge(boundary_conditions(game, assertion), config)


def check_inductive(
    game: Game,
    assertion: Mapping[str, Formula],
    strategy: Optional[Strategy] = None,
    config: Optional[SolverConfig] = None,
) -> CertificateReport:
    """``Psi[u] => wp(e, Psi[v])`` for every edge ``e = (u, v)`` of the game under ``strategy``.

    Raises :obj:`PreconditionError` when an invariant or strategy formula is not universal,
    or when an update uses nested quantifiers or quantifies over a B predicate existentially.

    Examples
    --------

    >>> from fo_games.engine import check_inductive
    >>> from fo_games.game import Strategy, builtin_fixture
    >>> from fo_games.logic import conj, parse_formula
    >>> game = builtin_fixture("conference")
    >>> psi = {node: game.assertion_at(node) for node in game.nodes}
    >>> safe = parse_formula("forall x, p. !Conf(x, p) | !Assign(x, p)")
    >>> psi.update({node: conj(psi[node], safe) for node in ("2", "3", "4")})
    >>> psi["0"] = conj(psi["0"], parse_formula("forall x, p, r. !Read(x, p, r)"))
    >>> check_inductive(game, psi, Strategy(choices={"B1": "(y1, y2) := !Conf(y1, y2)"})).holds
    True
    >>> report = check_inductive(game, psi, Strategy(choices={"B1": "(y1, y2) := true"}))
    >>> [failure.name for failure in report.failures]
    ['edge 1->2']
    """
    config = current_config(config)
    strategy = strategy or Strategy()
    check_preconditions(game, assertion, strategy)
    report = _discharge(inductive_conditions(game, assertion, strategy), config)
    log.info("|Certify| %d of %d edges inductive", len(report.obligations) - len(report.failures), len(report.obligations))
    return report

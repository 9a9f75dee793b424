# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Strategies of a self-composed game that read only predicates equal on both tracks."""

from __future__ import annotations

import logging
from typing import Dict, List, Mapping, Optional, Sequence, Set

from fo_games.config import SolverConfig, current_config
from fo_games.decide import entails
from fo_games.exceptions import InadmissibleStrategyError
from fo_games.game import Definition, Strategy, apply_strategy
from fo_games.logic import apply_substitution, conj, predicates, simplify
from fo_games.selfcomp.models import AdmissibilityReport, ComposedGame

log = logging.getLogger(__name__)


def _initial_sets(
    composed: ComposedGame,
    admissible: Optional[Mapping[str, Sequence[str]]],
) -> Dict[str, Set[str]]:
    every = set(composed.state)
    if admissible is None:
        return {node: set(every) for node in composed.game.nodes}
    sets = {}
    for node in composed.game.nodes:
        listed = admissible.get(node)
        sets[node] = set(every) if listed is None else set(listed) & every
    return sets


def _propagate(
    composed: ComposedGame,
    strategy: Strategy,
    sets: Dict[str, Set[str]],
    shrink: bool,
    config: SolverConfig,
) -> List[str]:
    """Remove (or only report) predicates whose track equivalence is not preserved along an edge."""
    played = apply_strategy(composed.game, strategy)
    diagnostics: List[str] = []
    changed = True
    while changed:
        changed = False
        for edge in played.edges:
            premise = conj(*(composed.equivalence(pred) for pred in sorted(sets[edge.source])))
            for pred in sorted(sets[edge.target]):
                image = apply_substitution(composed.equivalence(pred), edge.theta)
                if entails(premise, image, config).holds:
                    continue
                message = f"{pred} may differ between the tracks after edge {edge.name}"
                if message not in diagnostics:
                    diagnostics.append(message)
                if shrink:
                    sets[edge.target].discard(pred)
                    changed = True
    return diagnostics


def check_admissible(
    composed: ComposedGame,
    strategy: Strategy,
    admissible: Optional[Mapping[str, Sequence[str]]] = None,
    config: Optional[SolverConfig] = None,
) -> AdmissibilityReport:
    """Whether ``strategy`` only reads predicates whose two copies stay equal where it is used.

    The admissible predicates of a node are taken from ``admissible`` (or the NI
    specification) and checked to be preserved along every edge; when neither gives them,
    the largest preserved sets are computed by removing failing predicates until nothing
    changes. A strategy for the input of a B-edge from ``u`` may then mention ``R`` or ``R'``
    only when ``R`` is admissible at ``u``.

    Examples
    --------

    >>> from fo_games.game import Strategy, builtin_fixture
    >>> from fo_games.selfcomp import NiSpec, check_admissible, self_compose
    >>> composed = self_compose(builtin_fixture("conference"), NiSpec(secrets={"A2": "!Conf(a, y2)"}))
    >>> report = check_admissible(composed, Strategy(choices={"B1": "(y1, y2) := !Conf(y1, y2)"}))
    >>> report.admissible, report.predicates["1"]
    (True, ('Assign', 'Conf', 'Read', 'Review'))
    >>> bool(check_admissible(composed, Strategy(choices={"B1": "(y1, y2) := !Conf(y1, y2)"}), {"1": ["Assign"]}))
    False
    """
    config = current_config(config)
    given = admissible if admissible is not None else composed.spec.admissible
    sets = _initial_sets(composed, given)
    diagnostics = _propagate(composed, strategy, sets, shrink=given is None, config=config)
    holds = given is None or not diagnostics

    for edge in composed.game.b_edges():
        definition = strategy.choices.get(edge.input_pred or "")
        if definition is None:
            continue
        read = sorted({composed.original_name(pred) for pred in predicates(definition.body)})
        hidden = [pred for pred in read if pred not in sets[edge.source]]
        if hidden:
            holds = False
            diagnostics.append(
                f"Strategy for {edge.input_pred} on edge {edge.name} reads {hidden}, not admissible at {edge.source}",
            )

    if not holds:
        log.info("|Admissible| Strategy is not admissible: %s", "; ".join(diagnostics))
    return AdmissibilityReport(
        admissible=holds,
        predicates={node: tuple(sorted(preds)) for node, preds in sets.items()},
        diagnostics=tuple(diagnostics),
    )


def translate_strategy_back(
    composed: ComposedGame,
    strategy: Strategy,
    admissible: Optional[Mapping[str, Sequence[str]]] = None,
    config: Optional[SolverConfig] = None,
) -> Strategy:
    """Strategy for the original game: primes are dropped from an admissible strategy.

    Raises :obj:`InadmissibleStrategyError` when :obj:`check_admissible` fails.

    Examples
    --------

    >>> from fo_games.game import Strategy, builtin_fixture
    >>> from fo_games.selfcomp import NiSpec, self_compose, translate_strategy_back
    >>> composed = self_compose(builtin_fixture("conference"), NiSpec(secrets={"A2": "!Conf(a, y2)"}))
    >>> strategy = Strategy(choices={"B1": "(y1, y2) := !Conf(y1, y2) & !Conf'(y1, y2)"})
    >>> translate_strategy_back(composed, strategy).to_text()
    'B1(y1, y2) := !Conf(y1, y2)'
    """
    report = check_admissible(composed, strategy, admissible, config)
    if not report.admissible:
        raise InadmissibleStrategyError("; ".join(report.diagnostics))
    choices = {
        name: Definition(params=definition.params, body=simplify(composed.to_first_track(definition.body)))
        for name, definition in strategy.choices.items()
    }
    return Strategy(choices=choices)

# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

import logging
from typing import Sequence

from fo_games.exceptions import NonComposablePathError
from fo_games.game import Edge
from fo_games.logic import Formula, apply_substitution, predicates, so_exists, so_forall

log = logging.getLogger(__name__)


def wp_edge(edge: Edge, formula: Formula) -> Formula:
    """Weakest precondition of ``formula`` along ``edge``.

    The substituted formula is closed by universal second-order quantifiers over the inputs
    of an A-edge and by an existential one for a B-edge.

    Examples
    --------

    >>> from fo_games.game import builtin_fixture
    >>> from fo_games.logic import parse_formula
    >>> from fo_games.wp import wp_edge
    >>> game = builtin_fixture("conference")
    >>> post = parse_formula("forall x, p. !Conf(x, p) | !Assign(x, p)")
    >>> wp_edge(game.edges[1], post).to_text()
    'exists B1/2. forall x, p. !Conf(x, p) | !B1(x, p)'
    """
    body = apply_substitution(formula, edge.theta)
    used = predicates(body)
    quantifier = so_forall if edge.owner == "A" else so_exists
    for name in reversed(edge.inputs):
        if name in used:
            body = quantifier(name, used[name], body)
    return body


def wp_path(path: Sequence[Edge], formula: Formula) -> Formula:
    """Weakest precondition along consecutive edges, the first edge is applied outermost.

    Examples
    --------

    >>> from fo_games.game import builtin_fixture
    >>> from fo_games.logic import TRUE
    >>> from fo_games.wp import wp_path
    >>> game = builtin_fixture("conference")
    >>> wp_path([], TRUE) is TRUE
    True
    >>> wp_path([game.edges[0], game.edges[2]], TRUE)
    Traceback (most recent call last):
        ...
    fo_games.exceptions.NonComposablePathError: Edge 2->3 does not start where 0->1 ends
    """
    for previous, current in zip(path, path[1:]):
        if previous.target != current.source:
            raise NonComposablePathError(f"Edge {current.name} does not start where {previous.name} ends")

    result = formula
    for edge in reversed(path):
        result = wp_edge(edge, result)
    log.debug("|WP| Precondition along %d edges has %d predicates", len(path), len(predicates(result)))
    return result

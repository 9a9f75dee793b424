# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Second-order validity as a finite safety game."""

from __future__ import annotations

from typing import Dict, List, Tuple

from fo_games.exceptions import MalformedPrefixError
from fo_games.game.models import Definition, Edge, Game, Signature, formal_params
from fo_games.logic import (
    TRUE,
    Formula,
    Lambda,
    SOExists,
    SOForall,
    apply_substitution,
    atom,
    constants,
    free_vars,
    has_so_quantifier,
    predicates,
)


def prime(name: str) -> str:
    return f"{name}'"


def split_so_prefix(formula: Formula) -> Tuple[List[Tuple[str, str, int]], Formula]:
    """``[(kind, predicate, arity), ...]`` and the first-order matrix."""
    prefix: List[Tuple[str, str, int]] = []
    body = formula
    while isinstance(body, (SOForall, SOExists)):
        kind = "forall" if isinstance(body, SOForall) else "exists"
        prefix.append((kind, body.pred, body.arity))
        body = body.body
    return prefix, body


def game_from_so_formula(formula: Formula) -> Game:
    """Chain game ``v0 -> ... -> vn`` that is safe iff the prenex SO formula is valid.

    Universal SO quantifiers become A-edges, existential ones B-edges; edge ``i`` copies
    its input predicate into the primed state predicate, and the primed matrix is asserted
    at the last node. Predicates free in the formula stay as state predicates chosen by
    the initial state.

    Examples
    --------

    >>> from fo_games.game import game_from_so_formula
    >>> from fo_games.logic import parse_formula
    >>> game = game_from_so_formula(parse_formula("forall C/1. exists D/1. forall x. C(x) -> D(x)"))
    >>> [(edge.source, edge.target, edge.owner) for edge in game.edges]
    [('v0', 'v1', 'A'), ('v1', 'v2', 'B')]
    >>> game.assertion_at("v2").to_text()
    "forall x. !C'(x) | D'(x)"
    """
    prefix, matrix = split_so_prefix(formula)
    if has_so_quantifier(matrix):
        raise MalformedPrefixError("Second-order quantifiers must form a prefix of the formula")
    if free_vars(formula):
        raise MalformedPrefixError(f"Formula has free variables {sorted(free_vars(formula))}")

    names = [pred for _, pred, _ in prefix]
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
        raise MalformedPrefixError(f"Second-order variables quantified twice: {duplicates}")

    free_preds = predicates(matrix)
    for _, pred, arity in prefix:
        if free_preds.get(pred, arity) != arity:
            raise MalformedPrefixError(f"{pred} is quantified with arity {arity} but used with {free_preds[pred]}")

    state: Dict[str, int] = {name: arity for name, arity in free_preds.items() if name not in names}
    inputs_a: Dict[str, int] = {}
    inputs_b: Dict[str, int] = {}
    renaming = {}
    for kind, pred, arity in prefix:
        state[prime(pred)] = arity
        (inputs_a if kind == "forall" else inputs_b)[pred] = arity
        params = formal_params(arity)
        renaming[pred] = Lambda(params, atom(prime(pred), *params))

    nodes = tuple(f"v{index}" for index in range(len(prefix) + 1))
    edges = []
    for index, (kind, pred, arity) in enumerate(prefix):
        params = formal_params(arity)
        edges.append(
            Edge(
                source=nodes[index],
                target=nodes[index + 1],
                theta={prime(pred): Definition(params=params, body=atom(pred, *params))},
                owner="A" if kind == "forall" else "B",
                input_pred=pred,
            ),
        )

    signature = Signature(
        state=state,
        inputs_a=inputs_a,
        inputs_b=inputs_b,
        constants=tuple(sorted(constants(formula))),
    )
    return Game(
        signature=signature,
        nodes=nodes,
        start=nodes[0],
        edges=tuple(edges),
        init=TRUE,
        assertion={nodes[-1]: apply_substitution(matrix, renaming)},
        name="so-formula",
    )

# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

from typing import Dict, List, Mapping

from fo_games.game.models import Edge, Game
from fo_games.logic import Formula


def _declarations(keyword: str, arities: Mapping[str, int]) -> List[str]:
    if not arities:
        return []
    items = ", ".join(f"{name}/{arity}" for name, arity in arities.items())
    return [f"{keyword} {items};"]


def _edge(edge: Edge) -> List[str]:
    header = f"edge {edge.source} -> {edge.target} owner {edge.owner}"
    if edge.inputs:
        header = f"{header} input {', '.join(edge.inputs)}"
    updates = []
    for pred, definition in edge.theta.items():
        if definition.is_identity(pred):
            continue
        params = f"({', '.join(definition.params)})" if definition.params else ""
        updates.append(f"    {pred}{params} := {definition.body.to_text()};")
    if not updates:
        return [f"{header} {{ }}"]
    return [f"{header} {{", *updates, "}"]


def _node_map(keyword: str, mapping: Mapping[str, Formula], nodes) -> List[str]:
    if not mapping:
        return []
    texts: Dict[str, str] = {node: mapping[node].to_text() for node in nodes if node in mapping}
    shared = set(texts.values())
    if len(texts) == len(nodes) and len(shared) == 1:
        return [f"{keyword} all: {shared.pop()};"]
    return [f"{keyword} {node}: {text};" for node, text in texts.items()]


def print_game(game: Game) -> str:
    """Game file text accepted by :obj:`parse_game`; identity updates are omitted.

    Examples
    --------

    >>> from fo_games.game import builtin_fixture, print_game
    >>> print(print_game(builtin_fixture("transitive-closure")).splitlines()[0])
    # transitive-closure
    """
    signature = game.signature
    lines = []
    if game.name:
        lines.append(f"# {game.name}")
    if signature.constants:
        lines.append(f"constants {', '.join(signature.constants)};")
    lines.extend(_declarations("state", signature.state))
    lines.extend(_declarations("inputA", signature.inputs_a))
    lines.extend(_declarations("inputB", signature.inputs_b))
    for node in game.nodes:
        lines.append(f"node {node} start;" if node == game.start else f"node {node};")
    for edge in game.edges:
        lines.extend(_edge(edge))
    lines.append(f"init {game.init.to_text()};")
    lines.extend(_node_map("assert", game.assertion, game.nodes))
    lines.extend(_node_map("invariant", game.invariant, game.nodes))
    return "\n".join(lines) + "\n"

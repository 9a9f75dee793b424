# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Game file format.

.. code-block:: text

    constants a;
    state Conf/2, Assign/2;
    inputA A1/2;
    inputB B1/2;
    node n0 start;
    node n1;
    edge n0 -> n1 owner A input A1 { Conf(y1, y2) := A1(y1, y2); }
    init forall x, y. !Conf(x, y);
    assert all: forall x, p. !(Conf(x, p) & Assign(x, p));

``R(y) +:= e`` abbreviates ``R(y) := R(y) | e`` and ``R(y) -:= e`` abbreviates
``R(y) := R(y) & !e``. Optional ``invariant n: e;`` blocks carry a partial invariant.
"""

from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import pyparsing as pp
from frozendict import frozendict

try:
    from pydantic.v1 import ValidationError
except (ImportError, AttributeError):
    from pydantic import ValidationError  # type: ignore[no-redef, assignment]

from fo_games.exceptions import GameSemanticError
from fo_games.game.models import Definition, Edge, Game, Signature, check_edge, check_game
from fo_games.logic import TRUE, Formula, atom, conj, disj, neg, predicates
from fo_games.logic.parser import (
    COMMENT,
    FORMULA,
    FURTHEST_FAILURE,
    IDENTIFIER,
    INTEGER,
    bind_constants,
    raise_parse_error,
)

log = logging.getLogger(__name__)

SEMI = pp.Suppress(";")
NODE = pp.Word(pp.alphanums + "_").set_name("node")


def _located(kind: str, expression: pp.ParserElement) -> pp.ParserElement:
    def action(text: str, loc: int, toks: pp.ParseResults):
        return [(kind, pp.lineno(loc, text), toks.as_list())]

    return expression.set_parse_action(action)


def _node_formula(keyword: pp.ParserElement) -> pp.ParserElement:
    target = pp.Keyword("all") | NODE
    return _located("assert", keyword + target + pp.Suppress(":") + FORMULA + SEMI)


def build_game_grammar() -> pp.ParserElement:
    declaration = IDENTIFIER + pp.Suppress("/") + INTEGER
    constants = _located(
        "constants",
        pp.Suppress(pp.Keyword("constants")) + pp.Optional(pp.DelimitedList(IDENTIFIER)) + SEMI,
    )
    predicates = _located(
        "predicates",
        (pp.Keyword("state") | pp.Keyword("inputA") | pp.Keyword("inputB"))
        + pp.Optional(pp.DelimitedList(pp.Group(declaration)))
        + SEMI,
    )
    node = _located("node", pp.Suppress(pp.Keyword("node")) + NODE + pp.Optional(pp.Keyword("start")) + SEMI)

    params = pp.Group(pp.Optional(pp.Suppress("(") + pp.Optional(pp.DelimitedList(IDENTIFIER)) + pp.Suppress(")")))
    update = pp.Group(IDENTIFIER + params + (pp.Literal("+:=") | pp.Literal("-:=") | pp.Literal(":=")) + FORMULA + SEMI)
    owner = pp.Optional(pp.Suppress(pp.Keyword("owner")) + (pp.Literal("A") | pp.Literal("B")), default="")
    input_pred = pp.Group(pp.Optional(pp.Suppress(pp.Keyword("input")) + pp.DelimitedList(IDENTIFIER)))
    edge = _located(
        "edge",
        pp.Suppress(pp.Keyword("edge"))
        + NODE
        + pp.Suppress("->")
        + NODE
        + owner
        + input_pred
        + pp.Suppress("{")
        + pp.Group(pp.ZeroOrMore(update))
        + pp.Suppress("}"),
    )
    init = _located("init", pp.Suppress(pp.Keyword("init")) + FORMULA + SEMI)
    assertion = _node_formula(pp.Keyword("assert") | pp.Keyword("invariant"))

    grammar = pp.ZeroOrMore(constants | predicates | node | edge | init | assertion)
    grammar.ignore(COMMENT)
    return grammar


GAME = build_game_grammar()
INVARIANT = pp.ZeroOrMore(_node_formula(pp.Keyword("invariant"))).ignore(COMMENT)


class _Builder:
    def __init__(self) -> None:
        self.constants: List[str] = []
        self.arities: Dict[str, Dict[str, int]] = {"state": {}, "inputA": {}, "inputB": {}}
        self.nodes: List[str] = []
        self.starts: List[Tuple[str, int]] = []
        self.edges: List[Tuple[int, list]] = []
        self.init: List[Formula] = []
        self.assertions: Dict[str, Dict[str, List[Formula]]] = {"assert": {}, "invariant": {}}

    def add(self, kind: str, line: int, toks: list) -> None:  # noqa: WPS231
        if kind == "constants":
            self.constants.extend(toks)
        elif kind == "predicates":
            section, *declarations = toks
            for name, arity in declarations:
                self.arities[section][name] = arity
        elif kind == "node":
            name = toks[0]
            if name in self.nodes:
                raise GameSemanticError(f"line {line}: node {name!r} declared twice")
            self.nodes.append(name)
            if len(toks) > 1:
                self.starts.append((name, line))
        elif kind == "edge":
            self.edges.append((line, toks))
        elif kind == "init":
            self.init.append(toks[0])
        else:
            section, target, formula = toks
            self.assertions[section].setdefault(target, []).append(formula)

    def signature(self) -> Signature:
        try:
            return Signature(
                state=self.arities["state"],
                inputs_a=self.arities["inputA"],
                inputs_b=self.arities["inputB"],
                constants=tuple(self.constants),
            )
        except ValidationError as e:
            raise GameSemanticError(_first_error(e)) from e

    def bind(self, formula: Formula) -> Formula:
        return bind_constants(formula, self.constants)

    def edge(self, signature: Signature, line: int, toks: list) -> Edge:  # noqa: WPS231
        source, target, owner, inputs, updates = toks
        input_pred, *mux_inputs = inputs or [""]
        theta: Dict[str, Definition] = {}
        for pred, params, operator, body in updates:
            if pred not in signature.state:
                raise GameSemanticError(f"line {line}: {pred!r} is not a state predicate")
            if pred in theta:
                raise GameSemanticError(f"line {line}: {pred!r} updated twice")
            if len(params) != signature.state[pred]:
                raise GameSemanticError(
                    f"line {line}: {pred} has arity {signature.state[pred]}, update uses {len(params)} parameters",
                )
            body = self.bind(body)
            if operator == "+:=":
                body = disj(atom(pred, *params), body)
            elif operator == "-:=":
                body = conj(atom(pred, *params), neg(body))
            theta[pred] = Definition(params=tuple(params), body=body)

        if not input_pred:
            used = sorted({name for definition in theta.values() for name in _inputs(definition.body, signature)})
            input_pred = used[0] if len(used) == 1 else None
        if not owner:
            owner = "B" if input_pred in signature.inputs_b else "A"
        try:
            return Edge(
                source=source,
                target=target,
                theta=theta,
                owner=owner,
                input_pred=input_pred or None,
                mux_inputs=tuple(mux_inputs),
            )
        except ValidationError as e:
            raise GameSemanticError(f"line {line}: {_first_error(e)}") from e

    def build(self, name: str) -> Game:
        signature = self.signature()
        if not self.starts:
            raise GameSemanticError("No start node declared")
        if len(self.starts) > 1:
            lines = ", ".join(str(line) for _, line in self.starts)
            raise GameSemanticError(f"Several start nodes declared (lines {lines})")

        edges = []
        used_inputs: Dict[str, str] = {}
        for line, toks in self.edges:
            edge = self.edge(signature, line, toks)
            for endpoint in (edge.source, edge.target):
                if endpoint not in self.nodes:
                    raise GameSemanticError(f"line {line}: undeclared node {endpoint!r}")
            try:
                check_edge(edge, signature, used_inputs)
            except GameSemanticError as e:
                raise GameSemanticError(f"line {line}: {e}") from e
            edges.append(edge)

        maps = {
            section: _per_node(section, entries, self.nodes, self.constants)
            for section, entries in self.assertions.items()
        }

        try:
            game = Game(
                signature=signature,
                nodes=tuple(self.nodes),
                start=self.starts[0][0],
                edges=tuple(edges),
                init=self.bind(conj(*self.init)) if self.init else TRUE,
                assertion=maps["assert"],
                invariant=maps["invariant"],
                name=name,
            )
        except ValidationError as e:
            raise GameSemanticError(_first_error(e)) from e
        return check_game(game)


def _per_node(
    section: str,
    entries: Dict[str, List[Formula]],
    nodes: Sequence[str],
    constants: Sequence[str],
) -> Dict[str, Formula]:
    unknown = sorted(set(entries) - set(nodes) - {"all"})
    if unknown:
        raise GameSemanticError(f"{section.capitalize()} refers to undeclared nodes {unknown}")
    shared = entries.get("all", [])
    result = {}
    for node in nodes:
        found = shared + entries.get(node, [])
        if found:
            result[node] = bind_constants(conj(*found), constants)
    return result


def _inputs(formula: Formula, signature: Signature) -> List[str]:
    return [name for name in predicates(formula) if signature.owner_of(name)]


def _first_error(error: ValidationError) -> str:
    return str(error.errors()[0]["msg"])


def parse_game(text: str, name: Optional[str] = None) -> Game:
    """Parse and validate a game file.

    Syntax errors raise :obj:`FormulaParseError` with line and column, ill-formed games
    raise :obj:`GameSemanticError` with the line of the offending declaration.

    Examples
    --------

    >>> from fo_games.game import parse_game
    >>> game = parse_game('''
    ... state P/1;
    ... inputA A1/1;
    ... node n0 start;
    ... node n1;
    ... edge n0 -> n1 { P(y) +:= A1(y); }
    ... assert n1: forall x. P(x);
    ... ''')
    >>> edge = game.edges[0]
    >>> edge.owner, edge.input_pred, edge.theta["P"].body.to_text()
    ('A', 'A1', 'P(y) | A1(y)')
    >>> game.assertion_at("n0").to_text()
    'true'
    """
    FURTHEST_FAILURE.reset()
    try:
        statements = GAME.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise_parse_error(e)

    builder = _Builder()
    for kind, line, toks in statements:
        builder.add(kind, line, toks)
    game = builder.build(name or "")
    log.debug("|Parser| Game %r: %d nodes, %d edges", game.name, len(game.nodes), len(game.edges))
    return game


def parse_invariant(text: str, game: Game) -> Dict[str, Formula]:
    """Parse ``invariant n: e;`` blocks for ``game``, as given to ``--invariant``.

    Examples
    --------

    >>> from fo_games.game import builtin_fixture, parse_invariant
    >>> invariant = parse_invariant("invariant 2: forall x, p. !Assign(x, p);", builtin_fixture("conference"))
    >>> sorted(invariant), invariant["2"].to_text()
    (['2'], 'forall x, p. !Assign(x, p)')
    >>> parse_invariant("invariant 9: true;", builtin_fixture("conference"))
    Traceback (most recent call last):
        ...
    fo_games.exceptions.GameSemanticError: Invariant refers to undeclared nodes ['9']
    """
    FURTHEST_FAILURE.reset()
    try:
        statements = INVARIANT.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise_parse_error(e)

    entries: Dict[str, List[Formula]] = {}
    for _, _, (_, target, formula) in statements:
        entries.setdefault(target, []).append(formula)
    invariant = _per_node("invariant", entries, game.nodes, game.signature.constants)
    check_game(game.copy(update={"invariant": frozendict(invariant)}))
    return invariant

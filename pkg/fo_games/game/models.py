# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

from typing import Dict, Iterable, Iterator, Optional, Tuple

from frozendict import frozendict
from typing_extensions import Literal

try:
    from pydantic.v1 import Field, root_validator, validator
except (ImportError, AttributeError):
    from pydantic import Field, root_validator, validator  # type: ignore[no-redef, assignment]

from fo_games.entity import BaseModel
from fo_games.exceptions import GameSemanticError
from fo_games.logic import TRUE, Formula, atom, parse_formula, predicates
from fo_games.logic.parser import bind_constants
from fo_games.logic.transform import free_vars

Owner = Literal["A", "B"]


def formal_params(arity: int) -> Tuple[str, ...]:
    return tuple(f"y{index}" for index in range(1, arity + 1))


class Signature(BaseModel):
    """State and input predicates with their arities, plus global constants.

    Examples
    --------

    >>> from fo_games.game import Signature
    >>> signature = Signature(state={"Conf": 2}, inputs_a={"A1": 2}, inputs_b={"B1": 2})
    >>> signature.arity("A1")
    2
    >>> signature.owner_of("B1")
    'B'
    """

    state: frozendict = frozendict()
    inputs_a: frozendict = frozendict()
    inputs_b: frozendict = frozendict()
    constants: Tuple[str, ...] = ()

    @validator("state", "inputs_a", "inputs_b", pre=True)
    def _freeze_arities(cls, value):  # noqa: N805
        result = {}
        for name, arity in dict(value).items():
            if int(arity) < 0:
                raise ValueError(f"Arity of {name!r} must be non-negative, got {arity}")
            result[str(name)] = int(arity)
        return frozendict(result)

    @validator("constants")
    def _unique_constants(cls, value):  # noqa: N805
        duplicates = sorted({name for name in value if value.count(name) > 1})
        if duplicates:
            raise ValueError(f"Constants must be unique, got duplicates: {duplicates}")
        return value

    @root_validator(skip_on_failure=True)
    def _disjoint_names(cls, values):  # noqa: N805
        seen: Dict[str, int] = {}
        for key in ("state", "inputs_a", "inputs_b"):
            for name in values[key]:
                seen[name] = seen.get(name, 0) + 1
        for name in values["constants"]:
            seen[name] = seen.get(name, 0) + 1
        duplicates = sorted(name for name, count in seen.items() if count > 1)
        if duplicates:
            raise ValueError(f"Predicate names must be pairwise distinct, got duplicates: {duplicates}")
        return values

    @property
    def all_predicates(self) -> Dict[str, int]:
        return {**self.state, **self.inputs_a, **self.inputs_b}

    def arity(self, name: str) -> int:
        try:
            return self.all_predicates[name]
        except KeyError:
            raise GameSemanticError(f"Unknown predicate {name!r}") from None

    def owner_of(self, name: str) -> Optional[Owner]:
        if name in self.inputs_a:
            return "A"
        if name in self.inputs_b:
            return "B"
        return None


class Definition(BaseModel):
    """``R(params) := body``, one entry of a substitution or a strategy.

    Examples
    --------

    >>> from fo_games.game import Definition
    >>> Definition.of("y1, y2", "!Conf(y1, y2)").to_text()
    '(y1, y2) := !Conf(y1, y2)'
    >>> Definition.identity("Conf", 2).body.to_text()
    'Conf(y1, y2)'
    """

    params: Tuple[str, ...] = ()
    body: Formula = TRUE

    @classmethod
    def of(cls, params: str, body: str) -> Definition:
        """Build from text; free identifiers of ``body`` other than ``params`` are constants."""
        names = tuple(name.strip() for name in params.split(",") if name.strip())
        return cls(params=names, body=body)

    @classmethod
    def from_text(cls, text: str) -> Definition:
        """Inverse of :obj:`to_text`."""
        head, separator, body = text.partition(":=")
        head = head.strip()
        if not separator or not (head.startswith("(") and head.endswith(")")):
            raise ValueError(f"Expected '(params) := body', got {text!r}")
        return cls.of(head[1:-1], body)

    @classmethod
    def identity(cls, pred: str, arity: int) -> Definition:
        params = formal_params(arity)
        return cls(params=params, body=atom(pred, *params))

    @validator("body", pre=True)
    def _parse_body(cls, value, values):  # noqa: N805
        if isinstance(value, str):
            formula = parse_formula(value)
            return bind_constants(formula, free_vars(formula) - set(values.get("params", ())))
        return value

    @root_validator(skip_on_failure=True)
    def _params_cover_body(cls, values):  # noqa: N805
        extra = sorted(free_vars(values["body"]) - set(values["params"]))
        if extra:
            raise ValueError(f"Free variables {extra} are not formal parameters {list(values['params'])}")
        if len(set(values["params"])) != len(values["params"]):
            raise ValueError(f"Formal parameters must be distinct, got {list(values['params'])}")
        return values

    def is_identity(self, pred: str) -> bool:
        return self.body == atom(pred, *self.params)

    def to_text(self) -> str:
        return f"({', '.join(self.params)}) := {self.body.to_text()}"


class Edge(BaseModel):
    """Control-flow edge ``source -> target`` updating state predicates by ``theta``.

    ``mux_inputs`` lists further inputs of A read on the same A-edge next to ``input_pred``,
    as on the secret edges of a self-composed game.
    """

    source: str
    target: str
    theta: frozendict = frozendict()
    owner: Owner = "A"
    input_pred: Optional[str] = None
    mux_inputs: Tuple[str, ...] = ()

    @validator("theta", pre=True)
    def _freeze_theta(cls, value):  # noqa: N805
        result = {}
        for name, definition in dict(value).items():
            if isinstance(definition, str):
                definition = Definition.from_text(definition)
            elif not isinstance(definition, Definition):
                definition = Definition.parse_obj(definition)
            result[str(name)] = definition
        return frozendict(result)

    @property
    def name(self) -> str:
        return f"{self.source}->{self.target}"

    @property
    def inputs(self) -> Tuple[str, ...]:
        """Declared input predicates, ``input_pred`` first."""
        head = (self.input_pred,) if self.input_pred else ()
        return (*head, *self.mux_inputs)

    def input_predicates(self) -> Dict[str, int]:
        found: Dict[str, int] = {}
        for definition in self.theta.values():
            found.update(predicates(definition.body))
        return found


class Game(BaseModel):
    """FO safety game: control-flow graph, initial condition and node assertions.

    Substitution entries missing from an edge are filled with identity updates.
    """

    signature: Signature
    nodes: Tuple[str, ...]
    start: str
    edges: Tuple[Edge, ...] = ()
    init: Formula = TRUE
    assertion: frozendict = frozendict()
    name: str = ""
    invariant: frozendict = Field(default_factory=frozendict)

    @validator("assertion", "invariant", pre=True)
    def _freeze_assertion(cls, value):  # noqa: N805
        return frozendict({str(node): formula for node, formula in dict(value).items()})

    @root_validator(skip_on_failure=True)
    def _check_graph(cls, values):  # noqa: N805, WPS231
        nodes = values["nodes"]
        if len(set(nodes)) != len(nodes):
            raise ValueError(f"Node names must be unique, got {list(nodes)}")
        if values["start"] not in nodes:
            raise ValueError(f"Start node {values['start']!r} is not declared")

        signature: Signature = values["signature"]
        edges = []
        for edge in values["edges"]:
            for endpoint in (edge.source, edge.target):
                if endpoint not in nodes:
                    raise ValueError(f"Edge {edge.name} uses undeclared node {endpoint!r}")
            unknown = sorted(set(edge.theta) - set(signature.state))
            if unknown:
                raise ValueError(f"Edge {edge.name} updates non-state predicates {unknown}")
            theta = {
                pred: edge.theta.get(pred) or Definition.identity(pred, arity) for pred, arity in signature.state.items()
            }
            edges.append(edge.copy(update={"theta": frozendict(theta)}))
        values["edges"] = tuple(edges)

        for mapping in ("assertion", "invariant"):
            unknown_nodes = sorted(set(values[mapping]) - set(nodes))
            if unknown_nodes:
                raise ValueError(f"{mapping.capitalize()} refers to undeclared nodes {unknown_nodes}")
        return values

    def assertion_at(self, node: str) -> Formula:
        return self.assertion.get(node, TRUE)

    def out_edges(self, node: str) -> Iterator[Edge]:
        return (edge for edge in self.edges if edge.source == node)

    def b_edges(self) -> Iterator[Edge]:
        return (edge for edge in self.edges if edge.owner == "B")

    def b_predicates(self) -> Dict[str, int]:
        """B-controlled predicates that occur on some edge."""
        found: Dict[str, int] = {}
        for edge in self.edges:
            for name, arity in edge.input_predicates().items():
                if name in self.signature.inputs_b:
                    found[name] = arity
        return found


class Strategy(BaseModel):
    """Positional strategy: a defining formula for each B-controlled predicate.

    Examples
    --------

    >>> from fo_games.game import Strategy
    >>> strategy = Strategy(choices={"B1": Definition.of("y1, y2", "!Conf(y1, y2)")})
    >>> strategy.to_text()
    'B1(y1, y2) := !Conf(y1, y2)'
    """

    choices: frozendict = frozendict()

    @validator("choices", pre=True)
    def _freeze_choices(cls, value):  # noqa: N805
        result = {}
        for name, definition in dict(value).items():
            if isinstance(definition, str):
                definition = Definition.from_text(definition)
            elif not isinstance(definition, Definition):
                definition = Definition.parse_obj(definition)
            result[str(name)] = definition
        return frozendict(sorted(result.items()))

    def to_text(self) -> str:
        return "\n".join(
            f"{name}({', '.join(definition.params)}) := {definition.body.to_text()}"
            for name, definition in self.choices.items()
        )


def _check_formula(formula: Formula, known: Dict[str, int], where: str, allowed_free: Iterable[str] = ()) -> None:
    for name, arity in predicates(formula).items():
        if name not in known:
            raise GameSemanticError(f"{where}: unknown predicate {name!r}")
        if known[name] != arity:
            raise GameSemanticError(f"{where}: predicate {name!r} has arity {known[name]}, used with {arity}")
    extra = sorted(free_vars(formula) - set(allowed_free))
    if extra:
        raise GameSemanticError(f"{where}: free variables {extra}")


def check_edge(edge: Edge, signature: Signature, used_inputs: Dict[str, str]) -> None:
    """Arity, ownership and input-use checks for one edge; ``used_inputs`` is updated."""
    where = f"edge {edge.name}"
    for pred, definition in edge.theta.items():
        if len(definition.params) != signature.state[pred]:
            raise GameSemanticError(
                f"{where}: {pred} has arity {signature.state[pred]}, update uses {len(definition.params)} parameters",
            )
        _check_formula(definition.body, signature.all_predicates, where, definition.params)

    if edge.mux_inputs and (edge.owner != "A" or edge.input_pred is None):
        raise GameSemanticError(f"{where}: mux inputs {list(edge.mux_inputs)} need an A-edge with a declared input")
    inputs = sorted(name for name in edge.input_predicates() if signature.owner_of(name))
    if len(inputs) > 1 and not set(inputs) <= set(edge.inputs):
        raise GameSemanticError(f"{where}: more than one input predicate {inputs}")
    for name in inputs:
        owner = signature.owner_of(name)
        if owner != edge.owner:
            raise GameSemanticError(f"{where}: input {name!r} of player {owner} used on an {edge.owner}-edge")
        if edge.input_pred is not None and name not in edge.inputs:
            raise GameSemanticError(f"{where}: declared input {edge.input_pred!r} but uses {name!r}")
        if name in used_inputs:
            raise GameSemanticError(f"{where}: input {name!r} already used on edge {used_inputs[name]}")
        used_inputs[name] = edge.name
    for name in edge.inputs:
        if signature.owner_of(name) != edge.owner:
            raise GameSemanticError(f"{where}: {name!r} is not an input of player {edge.owner}")


def check_game(game: Game) -> Game:
    """Semantic checks that need the signature; raises :obj:`GameSemanticError` naming the offending part."""
    signature = game.signature
    used_inputs: Dict[str, str] = {}
    for edge in game.edges:
        check_edge(edge, signature, used_inputs)

    for kind, mapping in (("assertion", game.assertion), ("invariant", game.invariant)):
        for node, formula in mapping.items():
            _check_formula(formula, signature.state, f"{kind} at {node}")
    _check_formula(game.init, signature.state, "init")
    return game

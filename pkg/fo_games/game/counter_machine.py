# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Monadic safety games simulating multi-counter machines.

State ``q`` of the machine is the nullary flag ``Fq``, counter ``i`` is the unary
predicate ``Pi`` whose size is the counter value. Reaching the last state ``Fn`` violates
the assertion, so the game is unsafe iff the machine reaches its final state.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from typing_extensions import Literal

try:
    from pydantic.v1 import validator
except (ImportError, AttributeError):
    from pydantic import validator  # type: ignore[no-redef, assignment]

from fo_games.entity import BaseModel
from fo_games.exceptions import UnsupportedInstructionError
from fo_games.game.models import Definition, Edge, Game, Signature
from fo_games.logic import (
    FALSE,
    Formula,
    atom,
    conj,
    disj,
    eq,
    exists,
    forall,
    neg,
    neq,
)

SUPPORTED = ("inc", "dec", "zero")
OLD = "Pold"
ERROR = "Err"


class Instruction(BaseModel):
    """``kind`` on ``counter`` while moving from state ``source`` to ``target`` (states from 1)."""

    kind: str
    source: int
    target: int
    counter: int = 1


class CounterMachine(BaseModel):
    """Machine with states ``1..states``; state 1 is initial, state ``states`` is final.

    Examples
    --------

    >>> from fo_games.game import CounterMachine
    >>> machine = CounterMachine.parse("states 3; counters 1; inc 1 2 c1; zero 2 3 c1;")
    >>> [(item.kind, item.source, item.target, item.counter) for item in machine.instructions]
    [('inc', 1, 2, 1), ('zero', 2, 3, 1)]
    """

    states: int
    counters: int = 1
    instructions: Tuple[Instruction, ...] = ()

    @validator("instructions", each_item=True)
    def _within_bounds(cls, instruction, values):  # noqa: N805
        states = values.get("states", 0)
        counters = values.get("counters", 0)
        if not (1 <= instruction.source <= states and 1 <= instruction.target <= states):
            raise ValueError(f"Instruction {instruction.kind} uses a state outside 1..{states}")
        if not 1 <= instruction.counter <= counters:
            raise ValueError(f"Instruction {instruction.kind} uses a counter outside 1..{counters}")
        return instruction

    @classmethod
    def parse(cls, text: str) -> CounterMachine:
        """Read ``states n; counters k; inc 1 2 c1; dec 2 1 c1; zero 2 3 c1;``."""
        states = 0
        counters = 1
        instructions = []
        for statement in filter(None, (item.strip() for item in text.split(";"))):
            words = statement.split()
            if words[0] == "states":
                states = int(words[1])
            elif words[0] == "counters":
                counters = int(words[1])
            else:
                kind, source, target, *rest = words
                counter = int(rest[0].lstrip("c")) if rest else 1
                instructions.append(Instruction(kind=kind, source=int(source), target=int(target), counter=counter))
        return cls(states=states, counters=counters, instructions=instructions)


def _flag(state: int) -> str:
    return f"F{state}"


def _counter(index: int) -> str:
    return f"P{index}"


def _nullary(body: Formula) -> Definition:
    return Definition(params=(), body=body)


def _unary(body: Formula) -> Definition:
    return Definition(params=("y",), body=body)


def _move(machine: CounterMachine, instruction: Instruction, guard: Formula) -> Dict[str, Definition]:
    """Set the target flag to ``guard`` and clear every other flag."""
    updates = {}
    for state in range(1, machine.states + 1):
        updates[_flag(state)] = _nullary(guard if state == instruction.target else FALSE)
    return updates


def _changed(counter: str, kind: str, var: str) -> Formula:
    """``var`` was added to (inc) or removed from (dec) the counter during the last step."""
    if kind == "inc":
        return conj(atom(counter, var), neg(atom(OLD, var)))
    return conj(atom(OLD, var), neg(atom(counter, var)))


def _two_step(machine: CounterMachine, instruction: Instruction, index: int, variant: int) -> List[Edge]:
    counter = _counter(instruction.counter)
    chosen = atom(f"A{index}", "y")
    if instruction.kind == "inc":
        update = disj(atom(counter, "y"), chosen)
        witness = exists(["x"], conj(atom(f"A{index}", "x"), neg(atom(counter, "x"))))
    else:
        update = conj(atom(counter, "y"), neg(chosen))
        witness = exists(["x"], conj(atom(f"A{index}", "x"), atom(counter, "x")))

    first = {
        counter: _unary(update),
        OLD: _unary(atom(counter, "y")),
        **_move(machine, instruction, conj(atom(_flag(instruction.source)), witness)),
    }

    # at most one element changed; B can falsify this when two did
    if variant == 1:
        separated = disj(atom(f"B{index}", "x1"), neg(atom(f"B{index}", "x2")))
    else:
        separated = eq("x1", "x2")
    faithful = forall(
        ["x1", "x2"],
        disj(neg(_changed(counter, instruction.kind, "x1")), neg(_changed(counter, instruction.kind, "x2")), separated),
    )
    second = {_flag(state): _nullary(conj(atom(_flag(state)), faithful)) for state in range(1, machine.states + 1)}
    second[OLD] = _unary(FALSE)

    middle = f"m{index}"
    return [
        Edge(source="main", target=middle, theta=first, owner="A", input_pred=f"A{index}"),
        Edge(
            source=middle,
            target="main",
            theta=second,
            owner="B" if variant == 1 else "A",
            input_pred=f"B{index}" if variant == 1 else None,
        ),
    ]


def _zero_test(machine: CounterMachine, instruction: Instruction, node: str) -> Edge:
    empty = forall(["x"], neg(atom(_counter(instruction.counter), "x")))
    theta = _move(machine, instruction, conj(atom(_flag(instruction.source)), empty))
    return Edge(source=node, target=node, theta=theta, owner="A")


def _error_step(machine: CounterMachine, instruction: Instruction, index: int) -> Edge:
    name = _counter(instruction.counter)
    chosen = f"B{index}"
    source = atom(_flag(instruction.source))
    if instruction.kind == "inc":
        update = disj(atom(name, "y"), atom(chosen, "y"))
        enabled = source
    else:
        update = conj(atom(name, "y"), neg(atom(chosen, "y")))
        enabled = conj(source, exists(["x"], atom(name, "x")))

    def picked(var: str) -> Formula:
        member = atom(name, var)
        return conj(atom(chosen, var), neg(member) if instruction.kind == "inc" else member)

    none_picked = forall(["x"], neg(picked("x")))
    two_picked = exists(["x1", "x2"], conj(picked("x1"), picked("x2"), neq("x1", "x2")))
    theta = {
        name: _unary(update),
        ERROR: _nullary(disj(atom(ERROR), conj(enabled, disj(none_picked, two_picked)))),
        **_move(machine, instruction, enabled),
    }
    return Edge(source="q", target="q", theta=theta, owner="B", input_pred=chosen)


def counter_machine_game(machine: CounterMachine, variant: Literal[1, 2, 3] = 1) -> Game:
    """Safety game that is unsafe iff ``machine`` can reach its final state.

    Variant 1 simulates each counter step by an A-edge choosing the new element and a
    B-edge that invalidates a step adding or removing more than one element. Variant 2
    replaces the B predicate by an equality. Variant 3 uses a single node, B chooses the
    element and an error flag records unfaithful choices.

    Examples
    --------

    >>> from fo_games.game import CounterMachine, counter_machine_game
    >>> machine = CounterMachine.parse("states 1; inc 1 1 c1;")
    >>> game = counter_machine_game(machine, variant=1)
    >>> [(edge.source, edge.target, edge.owner, edge.input_pred) for edge in game.edges]
    [('main', 'm1', 'A', 'A1'), ('m1', 'main', 'B', 'B1')]
    >>> game.edges[0].theta["P1"].body.to_text()
    'P1(y) | A1(y)'
    """
    if variant not in {1, 2, 3}:
        raise ValueError(f"Variant must be 1, 2 or 3, got {variant}")
    for instruction in machine.instructions:
        if instruction.kind not in SUPPORTED:
            raise UnsupportedInstructionError(
                f"Unsupported instruction {instruction.kind!r}, expected one of {', '.join(SUPPORTED)}",
            )

    flags = {_flag(state): 0 for state in range(1, machine.states + 1)}
    counters = {_counter(index): 1 for index in range(1, machine.counters + 1)}
    init = [atom(_flag(1)), *(neg(atom(_flag(state))) for state in range(2, machine.states + 1))]
    init.extend(forall(["x"], neg(atom(name, "x"))) for name in counters)

    inputs_a: Dict[str, int] = {}
    inputs_b: Dict[str, int] = {}
    edges: List[Edge] = []
    if variant == 3:
        nodes: Tuple[str, ...] = ("q",)
        for index, instruction in enumerate(machine.instructions, start=1):
            if instruction.kind == "zero":
                edges.append(_zero_test(machine, instruction, "q"))
            else:
                inputs_b[f"B{index}"] = 1
                edges.append(_error_step(machine, instruction, index))
        state = {**flags, **counters, ERROR: 0}
        init.append(neg(atom(ERROR)))
        halted = conj(*(neg(atom(flag)) for flag in flags))
        alive = disj(*(atom(_flag(index)) for index in range(1, machine.states)), halted)
        assertion = {"q": conj(neg(atom(ERROR)), alive)}
    else:
        middles = []
        for index, instruction in enumerate(machine.instructions, start=1):
            if instruction.kind == "zero":
                edges.append(_zero_test(machine, instruction, "main"))
                continue
            inputs_a[f"A{index}"] = 1
            if variant == 1:
                inputs_b[f"B{index}"] = 1
            middles.append(f"m{index}")
            edges.extend(_two_step(machine, instruction, index, variant))
        nodes = ("main", *middles)
        state = {**flags, **counters, OLD: 1}
        init.append(forall(["x"], neg(atom(OLD, "x"))))
        # the B-step repairs the flags, so the final state is only checked at the main node
        assertion = {"main": neg(atom(_flag(machine.states)))}

    signature = Signature(state=state, inputs_a=inputs_a, inputs_b=inputs_b)
    return Game(
        signature=signature,
        nodes=nodes,
        start=nodes[0],
        edges=tuple(edges),
        init=conj(*init),
        assertion=assertion,
        name=f"counter-machine-v{variant}",
    )

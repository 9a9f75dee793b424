# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Explicit reachability game of a safety game over one finite universe.

Positions are ``(v, s)`` where A picks an outgoing edge, and ``(e, s)`` where the owner of
``e`` picks the value of its input predicate. A wins when a position ``(v, s)`` violating
the assertion at ``v`` is reached, so the winner follows from A's attractor.
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict, deque
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
)

import z3
from frozendict import frozendict
from typing_extensions import Literal

try:
    from pydantic.v1 import validator
except (ImportError, AttributeError):
    from pydantic import validator  # type: ignore[no-redef, assignment]

from fo_games.config import SolverConfig, current_config
from fo_games.entity import BaseModel
from fo_games.exceptions import EnumerationBudgetError, GameSemanticError
from fo_games.game import Edge, Game
from fo_games.logic import Grounder, GroundModel, all_relations, evaluate

log = logging.getLogger(__name__)

Row = Tuple[int, ...]
State = FrozenSet[Tuple[str, Row]]
# ("v", node, state) or ("e", edge index, state)
Position = Tuple[str, object, State]


class Move(BaseModel):
    """Edge taken from a node, with the rows of the input relation chosen on it."""

    edge: str
    edge_index: int
    choice: Tuple[Row, ...] = ()


class StrategyEntry(BaseModel):
    edge: str
    state: str
    choice: Tuple[Row, ...] = ()


class GroundSolution(BaseModel):
    """Winner of the ground game for one universe and valuation.

    For A the ``initial`` state and ``moves`` reach a node whose assertion fails,
    for B ``strategy`` lists a safe input choice for every reachable B-position.
    """

    winner: Literal["A", "B"]
    size: int
    valuation: frozendict = frozendict()
    positions: int = 0
    initial: Optional[GroundModel] = None
    moves: Tuple[Move, ...] = ()
    violation: Optional[str] = None
    strategy: Tuple[StrategyEntry, ...] = ()

    @validator("valuation", pre=True)
    def _freeze_valuation(cls, value):  # noqa: N805
        return frozendict(sorted(dict(value).items()))


class OracleVerdict(BaseModel):
    verdict: Literal["safe", "unsafe"]
    max_size: int
    solution: Optional[GroundSolution] = None


def _rows(state: State, pred: str) -> Tuple[Row, ...]:
    return tuple(sorted(args for name, args in state if name == pred))


def state_from_model(model: GroundModel, predicates: Iterable[str]) -> State:
    return frozenset((pred, row) for pred in predicates for row in model.relations.get(pred, ()))


class GroundGame:
    """Ground game of ``game`` over ``0..size-1`` with the constants fixed by ``valuation``.

    The construction refuses universes whose state space exceeds ``ground_budget``.
    """

    def __init__(
        self,
        game: Game,
        size: int,
        valuation: Mapping[str, int],
        config: Optional[SolverConfig] = None,
    ):
        self.game = game
        self.size = size
        self.valuation = dict(valuation)
        self.config = current_config(config)
        missing = sorted(set(game.signature.constants) - set(self.valuation))
        if missing:
            raise GameSemanticError(f"Valuation does not cover constants {missing}")

        estimate = self.estimate(game, size)
        if estimate > self.config.ground_budget:
            raise EnumerationBudgetError(f"Ground game at |U|={size}", estimate, self.config.ground_budget)

    @staticmethod
    def estimate(game: Game, size: int) -> int:
        """Upper bound on the number of positions."""
        atoms = sum(size**arity for arity in game.signature.state.values())
        return 2**atoms * (len(game.nodes) + len(game.edges))

    def relations(self, state: State) -> Dict[str, set]:
        result: Dict[str, set] = defaultdict(set)
        for pred, row in state:
            result[pred].add(row)
        return result

    def model(self, state: State) -> GroundModel:
        relations = {pred: _rows(state, pred) for pred in self.game.signature.state}
        return GroundModel(size=self.size, constants=self.valuation, relations=relations)

    def violates(self, node: str, state: State) -> bool:
        return not evaluate(self.game.assertion_at(node), self.size, self.valuation, self.relations(state))

    def initial_states(self) -> List[State]:
        """Every state satisfying the initial condition, enumerated with blocking clauses."""
        grounder = Grounder(self.size, self.game.signature.constants, atom_budget=self.config.atom_budget)
        solver = z3.Solver()
        solver.add(*grounder.axioms())
        for name, index in self.valuation.items():
            if name in grounder.symbols:
                solver.add(grounder.symbols[name][index])
        solver.add(grounder.ground(self.game.init))

        cells = [
            (pred, row, grounder.atom(pred, row))
            for pred, arity in self.game.signature.state.items()
            for row in itertools.product(range(self.size), repeat=arity)
        ]
        states: List[State] = []
        while solver.check() == z3.sat:
            model = solver.model()
            values = [z3.is_true(model.eval(ground, True)) for _, _, ground in cells]
            states.append(frozenset((pred, row) for (pred, row, _), value in zip(cells, values) if value))
            if len(states) > self.config.ground_budget:
                raise EnumerationBudgetError("Initial states", len(states), self.config.ground_budget)
            if not cells:
                break
            solver.add(z3.Or(*(z3.Not(ground) if value else ground for (_, _, ground), value in zip(cells, values))))
        log.debug("|Oracle| %d initial states at |U|=%d", len(states), self.size)
        return states

    def _inputs(self, edge: Edge) -> List[Tuple[str, int]]:
        signature = self.game.signature
        return sorted((name, arity) for name, arity in edge.input_predicates().items() if signature.owner_of(name))

    def choices(self, edge: Edge) -> List[Tuple[Tuple[str, FrozenSet[Row]], ...]]:
        options = [
            [(name, relation) for relation in all_relations(self.size, arity)] for name, arity in self._inputs(edge)
        ]
        return list(itertools.product(*options))

    def successor(self, edge: Edge, state: State, choice: Sequence[Tuple[str, FrozenSet[Row]]] = ()) -> State:
        """State after taking ``edge`` with the given input relations."""
        relations: Dict[str, set] = self.relations(state)
        for name, relation in choice:
            relations[name] = set(relation)
        result = []
        for pred, definition in edge.theta.items():
            for row in itertools.product(range(self.size), repeat=len(definition.params)):
                env = dict(zip(definition.params, row))
                if evaluate(definition.body, self.size, self.valuation, relations, env):
                    result.append((pred, row))
        return frozenset(result)

    def _owner(self, position: Position) -> str:
        if position[0] == "v":
            return "A"
        return self.game.edges[position[1]].owner  # type: ignore[index]

    def _moves(self, position: Position) -> List[Tuple[Position, tuple]]:
        kind, where, state = position
        if kind == "v":
            return [
                (("e", index, state), ())
                for index, edge in enumerate(self.game.edges)
                if edge.source == where
            ]
        edge = self.game.edges[where]  # type: ignore[index]
        return [(("v", edge.target, self.successor(edge, state, choice)), choice) for choice in self.choices(edge)]

    def _explore(self, initial: Sequence[Position]) -> Tuple[Dict[Position, List[Tuple[Position, tuple]]], Set[Position]]:  # noqa: E501
        moves: Dict[Position, List[Tuple[Position, tuple]]] = {}
        bad: Set[Position] = set()
        seen = set(initial)
        queue = deque(initial)
        while queue:
            position = queue.popleft()
            if position[0] == "v" and self.violates(position[1], position[2]):  # type: ignore[arg-type]
                moves[position] = []
                bad.add(position)
                continue
            moves[position] = self._moves(position)
            for target, _ in moves[position]:
                if target in seen:
                    continue
                if len(seen) >= self.config.ground_budget:
                    raise EnumerationBudgetError("Ground game exploration", len(seen) + 1, self.config.ground_budget)
                seen.add(target)
                queue.append(target)
        return moves, bad

    def _attractor(self, moves: Dict[Position, List[Tuple[Position, tuple]]], bad: Set[Position]) -> Dict[Position, int]:
        predecessors: Dict[Position, List[Position]] = defaultdict(list)
        for position, options in moves.items():
            for target, _ in options:
                predecessors[target].append(position)

        remaining = {position: len(options) for position, options in moves.items()}
        rank = {position: 0 for position in bad}
        queue = deque(rank)
        while queue:
            position = queue.popleft()
            for previous in predecessors[position]:
                if previous in rank:
                    continue
                if self._owner(previous) == "A":
                    rank[previous] = rank[position] + 1
                    queue.append(previous)
                    continue
                remaining[previous] -= 1
                if not remaining[previous]:
                    rank[previous] = rank[position] + 1
                    queue.append(previous)
        return rank

    def _choice_rows(self, choice: tuple) -> Tuple[Row, ...]:
        rows: List[Row] = []
        for _, relation in choice:
            rows.extend(sorted(relation))
        return tuple(rows)

    def _witness(self, start: Position, moves, rank) -> Tuple[List[Move], str]:
        trace: List[Move] = []
        position = start
        pending: Optional[int] = None
        while rank[position]:
            options = [(target, choice) for target, choice in moves[position] if target in rank]
            if self._owner(position) == "A":
                target, choice = min(options, key=lambda option: rank[option[0]])
            else:
                target, choice = max(options, key=lambda option: rank[option[0]])
            if position[0] == "v":
                pending = target[1]  # type: ignore[assignment]
            else:
                edge = self.game.edges[pending]  # type: ignore[index]
                trace.append(Move(edge=edge.name, edge_index=pending, choice=self._choice_rows(choice)))
            position = target
        return trace, position[1]  # type: ignore[return-value]

    def solve(self, initial: Optional[Sequence[State]] = None) -> GroundSolution:
        states = list(initial) if initial is not None else self.initial_states()
        starts: List[Position] = [("v", self.game.start, state) for state in states]
        moves, bad = self._explore(starts)
        rank = self._attractor(moves, bad)
        log.debug("|Oracle| |U|=%d: %d positions, attractor of size %d", self.size, len(moves), len(rank))

        for start in starts:
            if start in rank:
                trace, node = self._witness(start, moves, rank)
                return GroundSolution(
                    winner="A",
                    size=self.size,
                    valuation=self.valuation,
                    positions=len(moves),
                    initial=self.model(start[2]),
                    moves=trace,
                    violation=node,
                )

        strategy = []
        for position, options in moves.items():
            if position[0] != "e" or self._owner(position) != "B":
                continue
            safe = [choice for target, choice in options if target not in rank]
            edge = self.game.edges[position[1]]  # type: ignore[index]
            strategy.append(
                StrategyEntry(edge=edge.name, state=self.model(position[2]).to_text(), choice=self._choice_rows(safe[0])),
            )
        strategy.sort(key=lambda entry: (entry.edge, entry.state))
        return GroundSolution(
            winner="B",
            size=self.size,
            valuation=self.valuation,
            positions=len(moves),
            strategy=strategy,
        )


def ground_game_solve(
    game: Game,
    size: int,
    valuation: Optional[Mapping[str, int]] = None,
    config: Optional[SolverConfig] = None,
    initial: Optional[Sequence[GroundModel]] = None,
) -> GroundSolution:
    """Solve the ground game at universe ``size``.

    Without ``valuation`` every valuation of the constants is tried and the first one A
    wins is returned. ``initial`` restricts the plays to the given initial states.

    Examples
    --------

    >>> from fo_games.game import parse_game
    >>> from fo_games.decide import ground_game_solve
    >>> game = parse_game("state P/1; node n0 start; init true; assert n0: false;")
    >>> solution = ground_game_solve(game, 1)
    >>> solution.winner, solution.moves
    ('A', ())
    """
    config = current_config(config)
    constants = list(game.signature.constants)
    if valuation is not None:
        valuations: Iterable[Mapping[str, int]] = [valuation]
    else:
        valuations = (dict(zip(constants, values)) for values in itertools.product(range(size), repeat=len(constants)))

    result: Optional[GroundSolution] = None
    for current in valuations:
        ground = GroundGame(game, size, current, config)
        states = None
        if initial is not None:
            states = [state_from_model(model, game.signature.state) for model in initial]
        result = ground.solve(states)
        if result.winner == "A":
            log.info("|Oracle| A wins at |U|=%d with %d moves", size, len(result.moves))
            return result
    assert result is not None  # noqa: S101
    return result


def oracle_verdict(game: Game, max_size: Optional[int] = None, config: Optional[SolverConfig] = None) -> OracleVerdict:
    """``unsafe`` with a witness if A wins at some size up to ``max_size``, else ``safe`` (bounded)."""
    config = current_config(config)
    max_size = max_size or config.max_universe
    for size in range(1, max_size + 1):
        solution = ground_game_solve(game, size, config=config)
        if solution.winner == "A":
            return OracleVerdict(verdict="unsafe", max_size=size, solution=solution)
    return OracleVerdict(verdict="safe", max_size=max_size)


def replay(game: Game, solution: GroundSolution, config: Optional[SolverConfig] = None) -> bool:
    """Whether the moves of an A-win start in an initial state and end in a violation."""
    if solution.winner != "A" or solution.initial is None:
        return False
    ground = GroundGame(game, solution.size, solution.valuation, config)
    state = state_from_model(solution.initial, game.signature.state)
    relations = ground.relations(state)
    if not evaluate(game.init, solution.size, solution.valuation, relations):
        return False

    node = game.start
    for move in solution.moves:
        if not 0 <= move.edge_index < len(game.edges):
            return False
        edge = game.edges[move.edge_index]
        if edge.source != node:
            return False
        inputs = ground._inputs(edge)  # noqa: WPS437
        if len(inputs) > 1:
            return False
        choice = tuple((name, frozenset(move.choice)) for name, _ in inputs)
        state = ground.successor(edge, state, choice)
        node = edge.target
    return node == solution.violation and ground.violates(node, state)

# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Self-composition of a game for noninterference against stubborn agents."""

from __future__ import annotations

import logging
from typing import Dict, List

from frozendict import frozendict

from fo_games.exceptions import GameSemanticError
from fo_games.game import (
    Definition,
    Edge,
    Game,
    Signature,
    check_game,
    formal_params,
    prime,
)
from fo_games.logic import (
    Formula,
    apply_substitution,
    atom,
    conj,
    disj,
    free_vars,
    neg,
    simplify,
)
from fo_games.logic.parser import bind_constants
from fo_games.selfcomp.models import ComposedGame, NiSpec

log = logging.getLogger(__name__)


class _Composer:
    def __init__(self, game: Game, spec: NiSpec):
        self.game = game
        self.spec = spec
        signature = game.signature
        unknown = sorted(set(spec.secrets) - set(signature.inputs_a))
        if unknown:
            raise GameSemanticError(f"Secrets {unknown} are not input predicates of player A")
        constants = tuple(signature.constants)
        if spec.observer not in constants:
            constants = (*constants, spec.observer)
        self.constants = constants

        self.declass: Dict[str, Formula] = {}
        for name, formula in spec.secrets.items():
            params = formal_params(signature.inputs_a[name])
            formula = bind_constants(formula, constants)
            extra = sorted(free_vars(formula) - set(params))
            if extra:
                raise GameSemanticError(f"Declassification of {name} uses variables {extra} besides {list(params)}")
            self.declass[name] = formula

        taken = set(signature.all_predicates) | set(constants)
        fresh = [prime(pred) for pred in signature.state] + [prime(name) for name in spec.secrets]
        clashes = sorted(taken & set(fresh))
        if clashes:
            raise GameSemanticError(f"Names {clashes} are needed for the composition but already declared")

        self.primed = {
            pred: Definition(params=formal_params(arity), body=atom(prime(pred), *formal_params(arity)))
            for pred, arity in signature.state.items()
        }

    def second_track(self, formula: Formula) -> Formula:
        return apply_substitution(formula, self.primed)

    def mux(self, name: str) -> Definition:
        """Value of secret ``name`` on the second track: shared where declassified, ``name'`` elsewhere."""
        params = formal_params(self.game.signature.inputs_a[name])
        delta = self.declass[name]
        delta_primed = self.second_track(delta)
        body = disj(
            conj(delta, delta_primed, atom(name, *params)),
            conj(disj(neg(delta), neg(delta_primed)), atom(prime(name), *params)),
        )
        return Definition(params=params, body=simplify(body))

    def signature(self) -> Signature:
        signature = self.game.signature
        state = dict(signature.state)
        state.update({prime(pred): arity for pred, arity in signature.state.items()})
        inputs_a = dict(signature.inputs_a)
        inputs_a.update({prime(name): signature.inputs_a[name] for name in self.spec.secrets})
        return Signature(state=state, inputs_a=inputs_a, inputs_b=signature.inputs_b, constants=self.constants)

    def theta(self, edge: Edge, secret: str = "") -> Dict[str, Definition]:
        theta: Dict[str, Definition] = {}
        for pred, definition in edge.theta.items():
            theta[pred] = definition
            body = self.second_track(definition.body)
            if secret:
                body = simplify(apply_substitution(body, {secret: self.mux(secret)}))
            theta[prime(pred)] = Definition(params=definition.params, body=body)
        return theta

    def edges(self) -> List[Edge]:
        edges: List[Edge] = []
        for edge in self.game.edges:
            secrets = sorted(name for name in edge.input_predicates() if name in self.spec.secrets)
            if len(secrets) > 1:
                raise GameSemanticError(f"Edge {edge.name} uses more than one secret input {secrets}")
            if not secrets:
                edges.append(edge.copy(update={"theta": frozendict(self.theta(edge))}))
                continue

            secret = secrets[0]
            update = {
                "theta": frozendict(self.theta(edge, secret)),
                "input_pred": secret,
                "mux_inputs": (prime(secret),),
            }
            edges.append(edge.copy(update=update))
        return edges

    def init(self, composed: ComposedGame) -> Formula:
        equal = [composed.equivalence(pred) for pred in self.game.signature.state]
        return conj(self.game.init, self.second_track(self.game.init), *equal)

    def build(self) -> ComposedGame:
        shell = ComposedGame(game=self.game, original=self.game, spec=self.spec)
        observed = conj(*(shell.observation(pred) for pred in self.game.signature.state))
        game = Game(
            signature=self.signature(),
            nodes=self.game.nodes,
            start=self.game.start,
            edges=tuple(self.edges()),
            init=self.init(shell),
            assertion={node: observed for node in self.game.nodes},
            name=f"{self.game.name}-ni" if self.game.name else "",
        )
        return ComposedGame(game=check_game(game), original=self.game, spec=self.spec)


def self_compose(game: Game, spec: NiSpec) -> ComposedGame:
    """Game whose safety is noninterference of ``game`` for the observer of ``spec``.

    Every state predicate ``R`` gets a copy ``R'`` updated by the primed substitution. Inputs
    are shared between both tracks, except that a secret input ``O`` is replaced on the
    second track by ``O`` where its declassification condition holds on both tracks and by
    a fresh input ``O'`` elsewhere. ``O'`` is chosen by A on the secret edge itself.
    Initially both tracks agree, and at every node they must agree on the tuples whose
    first argument is the observer.

    Examples
    --------

    >>> from fo_games.game import builtin_fixture
    >>> from fo_games.logic import predicates
    >>> from fo_games.selfcomp import NiSpec, self_compose
    >>> composed = self_compose(builtin_fixture("conference"), NiSpec(secrets={"A2": "!Conf(a, y2)"}))
    >>> composed.game.nodes
    ('0', '1', '2', '3', '4')
    >>> edge = composed.game.edges[2]
    >>> edge.name, edge.inputs, sorted(predicates(edge.theta["Review'"].body))
    ('2->3', ('A2', "A2'"), ['A2', "A2'", "Assign'", 'Conf', "Conf'"])
    """
    composed = _Composer(game, spec).build()
    log.info(
        "|SelfCompose| Composed %r: %d nodes, %d edges, secrets %s",
        game.name,
        len(composed.game.nodes),
        len(composed.game.edges),
        sorted(spec.secrets),
    )
    return composed

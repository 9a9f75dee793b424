# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Decision procedures for safety games over monadic signatures."""

from __future__ import annotations

import logging
from typing import Dict, Iterable, List, Optional, Tuple

from frozendict import frozendict
from typing_extensions import Literal

try:
    from pydantic.v1 import validator
except (ImportError, AttributeError):
    from pydantic import validator  # type: ignore[no-redef, assignment]

from fo_games.config import SolverConfig, current_config
from fo_games.decide import EntailmentResult
from fo_games.entity import BaseModel
from fo_games.exceptions import (
    EnumerationBudgetError,
    FragmentError,
    NonMonadicError,
)
from fo_games.game import Edge, Game
from fo_games.logic import (
    Const,
    Eq,
    Formula,
    GroundModel,
    bounded_sat,
    conj,
    constants,
    neg,
    predicates,
    subformulas,
)
from fo_games.monadic.abstraction import abstract_disequalities, abstract_equalities
from fo_games.monadic.cqnf import check_monadic, rank, to_cqnf
from fo_games.monadic.elimination import eliminate_monadic
from fo_games.wp import IterationResult, iterate

log = logging.getLogger(__name__)

Fragment = Literal["plain", "monoA", "monoB"]


class MonadicVerdict(BaseModel):
    """Outcome of a monadic decision procedure, never ``unknown``.

    ``invariant`` is the fixed point of the (abstracted) iteration, ``h`` the step at which it
    was reached, or for unsafe games the first step ``Init`` does not imply.
    """

    verdict: Literal["safe", "unsafe"]
    fragment: Fragment
    h: int = 0
    invariant: frozendict = frozendict()
    witness: Optional[GroundModel] = None
    small_model_bound: int = 0

    @validator("invariant", pre=True)
    def _freeze_invariant(cls, value):  # noqa: N805
        return frozendict((str(node), formula) for node, formula in dict(value).items())


def _unary_count(formula: Formula) -> int:
    return sum(1 for arity in predicates(formula).values() if arity == 1)


def monadic_entails(premise: Formula, conclusion: Formula, config: Optional[SolverConfig] = None) -> EntailmentResult:
    """Decide ``premise => conclusion`` for monadic formulas.

    A satisfiable monadic formula of quantifier rank ``q`` has a model in which every unary
    type has at most ``q`` elements besides the constants, so the search up to
    ``q * 2**|unary predicates| + |constants|`` elements is complete.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.monadic import monadic_entails
    >>> monadic_entails(parse_formula("exists>=2 x. P(x)"), parse_formula("exists x, y. P(x) & P(y) & x != y")).holds
    True
    >>> result = monadic_entails(parse_formula("exists x. P(x)"), parse_formula("exists>=2 x. P(x)"))
    >>> result.holds, result.countermodel.size
    (False, 1)
    """
    config = current_config(config)
    check_monadic(premise)
    check_monadic(conclusion)
    formula = conj(premise, neg(conclusion))
    bound = max(rank(formula), 1) * 2 ** _unary_count(formula) + len(constants(formula))
    model = bounded_sat(formula, bound, config)
    return EntailmentResult(holds=model is None, countermodel=model)


def _inputs_used(game: Game, names: Iterable[str]) -> List[Tuple[str, Edge]]:
    names = set(names)
    return [(name, edge) for edge in game.edges for name in edge.input_predicates() if name in names]


def detect_fragment(game: Game) -> Fragment:
    """``plain`` without input predicates, ``monoA`` or ``monoB`` when only one player has inputs.

    Examples
    --------

    >>> from fo_games.game import parse_game
    >>> from fo_games.monadic import detect_fragment
    >>> detect_fragment(parse_game("state P/1; node n0 start; edge n0 -> n0 { P(y1) := !P(y1); }"))
    'plain'
    """
    a_inputs = _inputs_used(game, game.signature.inputs_a)
    b_inputs = _inputs_used(game, game.signature.inputs_b)
    if a_inputs and b_inputs:
        raise FragmentError("inputs of only one player", f"A uses {a_inputs[0][0]}, B uses {b_inputs[0][0]}")
    if a_inputs:
        return "monoA"
    if b_inputs:
        return "monoB"
    return "plain"


def _check_monadic_game(game: Game) -> None:
    for name, arity in game.signature.all_predicates.items():
        if arity > 1:
            raise NonMonadicError(f"predicate {name}/{arity}")
    check_monadic(game.init)
    for formula in game.assertion.values():
        check_monadic(formula)


def _check_constant_literals(game: Game) -> None:
    """Every (dis)equality of ``Init`` and the updates mentions a constant."""
    sources = [("init", game.init)]
    sources.extend((f"edge {edge.name}", definition.body) for edge in game.edges for definition in edge.theta.values())
    for where, formula in sources:
        for sub in subformulas(formula):
            if isinstance(sub, Eq) and not any(isinstance(term, Const) for term in (sub.left, sub.right)):
                raise FragmentError("(dis)equalities must mention a constant", f"{where}: {sub.to_text()}")


def _constants(game: Game) -> List[str]:
    found = set(game.signature.constants) | constants(game.init)
    for formula in game.assertion.values():
        found |= constants(formula)
    for edge in game.edges:
        for definition in edge.theta.values():
            found |= constants(definition.body)
    return sorted(found)


def _cqnf_rank(formula: Formula, config: SolverConfig) -> int:
    try:
        return rank(to_cqnf(formula, config=config))
    except FragmentError:
        return rank(formula)


def monadic_small_model_bound(game: Game, config: Optional[SolverConfig] = None) -> int:
    """``r * 2**|unary state predicates|`` where ``r`` bounds the rank of every label of the iteration.

    ``r`` is the largest rank of the assertions, the updates and ``Init`` after conversion
    to counting normal form, and at least one.

    Examples
    --------

    >>> from fo_games.game import parse_game
    >>> from fo_games.monadic import monadic_small_model_bound
    >>> game = parse_game("state P/1, Q/1; node n0 start; assert n0: forall x. P(x) | Q(x);")
    >>> monadic_small_model_bound(game)
    4
    """
    config = current_config(config)
    formulas = [game.init, *game.assertion.values()]
    formulas.extend(definition.body for edge in game.edges for definition in edge.theta.values())
    bound = max([1, *(_cqnf_rank(formula, config) for formula in formulas)])
    unary = sum(1 for arity in game.signature.state.values() if arity == 1)
    return bound * 2**unary


class _Decision:
    def __init__(self, game: Game, fragment: Fragment, config: SolverConfig):
        self.game = game
        self.fragment = fragment
        self.config = config

    def entails(self, premise: Formula, conclusion: Formula) -> EntailmentResult:
        return monadic_entails(premise, conclusion, self.config)

    def run(self, game: Game, **kwargs) -> IterationResult:
        result = iterate(game, entails_check=self.entails, config=self.config, **kwargs)
        if result.status != "fixed":
            raise EnumerationBudgetError("Monadic iteration", result.h + 1, self.config.max_iter)
        return result

    def verdict(self, result: IterationResult) -> MonadicVerdict:
        start = self.game.start
        bound = monadic_small_model_bound(self.game, self.config)
        for step in result.trace.steps:
            check = self.entails(self.game.init, step.assertion[start])
            if not check.holds:
                log.info("|Monadic| Init violates step %d at %s, game is unsafe", step.h, start)
                return MonadicVerdict(
                    verdict="unsafe",
                    fragment=self.fragment,
                    h=step.h,
                    invariant=step.assertion,
                    witness=check.countermodel,
                    small_model_bound=bound,
                )
        log.info("|Monadic| Fixed point after %d steps, game is safe", result.h)
        return MonadicVerdict(
            verdict="safe",
            fragment=self.fragment,
            h=result.h,
            invariant=result.assertion,
            small_model_bound=bound,
        )


def decide_plain(game: Game, config: Optional[SolverConfig] = None) -> MonadicVerdict:
    """Decide a monadic game without input predicates.

    Every precondition is brought to counting normal form, whose rank never exceeds the
    rank of the assertions and updates, so the iteration reaches a fixed point.

    Examples
    --------

    >>> from fo_games.game import parse_game
    >>> from fo_games.monadic import decide_plain
    >>> game = parse_game("constants c; state P/1; node n0 start; edge n0 -> n0 {} init P(c); assert n0: P(c);")
    >>> decide_plain(game).verdict
    'safe'
    """
    config = current_config(config)
    _check_monadic_game(game)
    used = _inputs_used(game, {**game.signature.inputs_a, **game.signature.inputs_b})
    if used:
        name, edge = used[0]
        raise FragmentError("no input predicates", f"{name} on edge {edge.name}")

    def normalize(formula: Formula) -> Formula:
        return to_cqnf(formula, config=config)

    run = _Decision(game, "plain", config)
    return run.verdict(run.run(game, normalize=normalize))


def _abstract_game(game: Game, abstract) -> Game:
    assertion: Dict[str, Formula] = {node: abstract(formula) for node, formula in game.assertion.items()}
    return game.copy(update={"assertion": frozendict(assertion)})


def decide_mono_A(game: Game, config: Optional[SolverConfig] = None) -> MonadicVerdict:  # noqa: N802
    """Decide a monadic game where only A has input predicates.

    Assertions must not contain disequalities between bound variables, and every
    (dis)equality of ``Init`` and the updates must mention a constant. The iteration runs on
    the weakest strengthenings without equalities between bound variables.

    Examples
    --------

    >>> from fo_games.game import parse_game
    >>> from fo_games.monadic import decide_mono_A
    >>> game = parse_game(
    ...     "state P/1; inputA A1/1; node n0 start; node n1;"
    ...     " edge n0 -> n1 owner A { P(y1) := A1(y1); } assert n1: forall x. P(x);"
    ... )
    >>> decide_mono_A(game).verdict
    'unsafe'
    """
    config = current_config(config)
    _check_monadic_game(game)
    b_inputs = _inputs_used(game, game.signature.inputs_b)
    if b_inputs:
        name, edge = b_inputs[0]
        raise FragmentError("no B input predicates in the monoA fragment", f"{name} on edge {edge.name}")
    _check_constant_literals(game)
    names = _constants(game)

    def abstract(formula: Formula) -> Formula:
        return abstract_equalities(formula, names)

    def eliminate(formula: Formula, edge: Edge) -> Formula:
        return eliminate_monadic(abstract(formula), copies=2, config=config)

    run = _Decision(game, "monoA", config)
    return run.verdict(run.run(_abstract_game(game, abstract), eliminate=eliminate, normalize=abstract))


def decide_mono_B(game: Game, config: Optional[SolverConfig] = None) -> MonadicVerdict:  # noqa: N802
    """Decide a monadic game where only B has input predicates.

    A still selects edges. Assertions must not contain equalities between bound variables,
    and every (dis)equality of ``Init`` and the updates must mention a constant. Disequalities
    between bound variables are replaced by a state predicate or a constant telling the
    elements apart.

    Examples
    --------

    >>> from fo_games.game import parse_game
    >>> from fo_games.monadic import decide_mono_B
    >>> game = parse_game(
    ...     "state P/1; inputB B1/1; node n0 start; node n1;"
    ...     " edge n0 -> n1 owner B { P(y1) := B1(y1); } assert n1: forall x. P(x);"
    ... )
    >>> decide_mono_B(game).verdict
    'safe'
    """
    config = current_config(config)
    _check_monadic_game(game)
    a_inputs = _inputs_used(game, game.signature.inputs_a)
    if a_inputs:
        name, edge = a_inputs[0]
        raise FragmentError("no A input predicates in the monoB fragment", f"{name} on edge {edge.name}")
    _check_constant_literals(game)
    names = _constants(game)
    unary = sorted(name for name, arity in game.signature.state.items() if arity == 1)

    def abstract(formula: Formula) -> Formula:
        return abstract_disequalities(formula, names, unary)

    def eliminate(formula: Formula, edge: Edge) -> Formula:
        return eliminate_monadic(abstract(formula), copies=1, config=config)

    run = _Decision(game, "monoB", config)
    return run.verdict(run.run(_abstract_game(game, abstract), eliminate=eliminate, normalize=abstract))


def decide_monadic(game: Game, fragment: Optional[Fragment] = None, config: Optional[SolverConfig] = None) -> MonadicVerdict:
    """Run the procedure of ``fragment``, detected from the game when not given."""
    fragment = fragment or detect_fragment(game)
    log.info("|Monadic| Deciding game %r in fragment %s", game.name, fragment)
    procedures = {"plain": decide_plain, "monoA": decide_mono_A, "monoB": decide_mono_B}
    return procedures[fragment](game, config)

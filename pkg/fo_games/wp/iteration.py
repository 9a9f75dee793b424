# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Conjunction iteration ``Psi(h)[v] = Psi(h-1)[v] & AND over out-edges of wp(e, Psi(h-1)[target])``."""

from __future__ import annotations

import logging
import time
from typing import Callable, Dict, List, Mapping, Optional, Tuple, Union

from fo_games.config import SolverConfig, current_config
from fo_games.decide import EntailmentResult, bsr_sat, entails
from fo_games.exceptions import FragmentError
from fo_games.game import Edge, Game
from fo_games.logic import (
    TRUE,
    Formula,
    GroundModel,
    bounded_sat,
    conj,
    has_so_quantifier,
    is_universal,
    neg,
    size,
    universal_clauses,
)
from fo_games.soqe.models import Elimination
from fo_games.wp.models import (
    IterationResult,
    IterationStep,
    IterationTrace,
    SafetyVerdict,
)
from fo_games.wp.transformer import wp_edge

log = logging.getLogger(__name__)

Eliminate = Callable[[Formula, Edge], Union[Formula, Elimination]]
Strengthen = Callable[[Formula], Formula]
Entails = Callable[[Formula, Formula], EntailmentResult]
Parts = Tuple[Formula, ...]


def split_conjuncts(formula: Formula, budget: int) -> List[Formula]:
    """Universal formulas are split into closed clauses, anything else stays in one piece."""
    if formula == TRUE:
        return []
    if is_universal(formula) and not has_so_quantifier(formula):
        return universal_clauses(formula, budget)
    return [formula]


class _Iteration:
    def __init__(
        self,
        game: Game,
        eliminate: Optional[Eliminate],
        strengthen: Optional[Strengthen],
        entails_check: Entails,
        normalize: Optional[Strengthen],
        config: SolverConfig,
    ):
        self.game = game
        self.eliminate = eliminate
        self.strengthen = strengthen
        self.entails = entails_check
        self.normalize = normalize
        self.config = config
        self.exact = True
        self.bounded = False
        self.strengthenings = 0
        self.diagnostics: List[str] = []

    def _diagnose(self, messages) -> None:
        for message in messages:
            if message not in self.diagnostics:
                log.info("|Iterate| %s", message)
                self.diagnostics.append(message)

    def precondition(self, edge: Edge, post: Formula) -> Formula:
        formula = wp_edge(edge, post)
        if self.eliminate is not None and has_so_quantifier(formula):
            outcome = self.eliminate(formula, edge)
            if isinstance(outcome, Elimination):
                self.exact = self.exact and outcome.exact
                self.bounded = self.bounded or outcome.bounded
                self._diagnose(outcome.diagnostics)
                formula = outcome.formula
            else:
                formula = outcome
        if self.strengthen is not None:
            stronger = self.strengthen(formula)
            if stronger != formula:
                self.strengthenings += 1
                self.exact = False
                log.debug("|Iterate| Strengthened precondition of edge %s", edge.name)
            formula = stronger
        if self.normalize is not None:
            formula = self.normalize(formula)
        return formula

    def add(self, parts: Parts, formula: Formula) -> Tuple[Parts, bool]:
        """``parts`` extended by the pieces of ``formula`` they do not already imply."""
        current = list(parts)
        changed = False
        for piece in split_conjuncts(formula, self.config.clause_budget):
            if piece in current:
                continue
            result = self.entails(conj(*current), piece)
            self.bounded = self.bounded or result.bounded
            if result.holds:
                continue
            current.append(piece)
            changed = True
        return tuple(current), changed


def iterate(
    game: Game,
    eliminate: Optional[Eliminate] = None,
    strengthen: Optional[Strengthen] = None,
    max_iter: Optional[int] = None,
    initial: Optional[Mapping[str, Formula]] = None,
    entails_check: Optional[Entails] = None,
    normalize: Optional[Strengthen] = None,
    config: Optional[SolverConfig] = None,
) -> IterationResult:
    """Run the conjunction iteration from ``Psi(0) = I`` until no node changes or ``max_iter`` steps.

    ``eliminate`` removes the second-order quantifiers introduced by each precondition,
    ``strengthen`` maps formulas to stronger ones the iteration can handle, ``normalize``
    rewrites each new conjunct to an equivalent one. ``initial`` conjoins a partial
    invariant onto ``Psi(0)``. A new conjunct changes a node only when the node's current
    formula does not already imply it.

    Examples
    --------

    >>> from fo_games.game import parse_game
    >>> from fo_games.wp import iterate
    >>> game = parse_game("state P/0; node n0 start; node n1; edge n0 -> n1 owner A { P := !P; } assert n1: P;")
    >>> result = iterate(game)
    >>> result.status, result.h, result.assertion["n0"].to_text()
    ('fixed', 1, '!P')
    """
    config = current_config(config)
    max_iter = config.max_iter if max_iter is None else max_iter

    def default_entails(premise: Formula, conclusion: Formula) -> EntailmentResult:
        return entails(premise, conclusion, config)

    run = _Iteration(game, eliminate, strengthen, entails_check or default_entails, normalize, config)
    parts: Dict[str, Parts] = {}
    for node in game.nodes:
        seed = conj(game.assertion_at(node), (initial or {}).get(node, TRUE))
        parts[node] = run.add((), seed)[0]
    if initial and any(formula != TRUE for formula in initial.values()):
        run.exact = False

    steps = [IterationStep(h=0, assertion={node: conj(*parts[node]) for node in game.nodes}, exact=run.exact)]
    changed = set(game.nodes)
    status = "cap-reached"
    h = 0
    while h < max_iter:
        h += 1
        started = time.perf_counter()
        previous = dict(parts)
        now_changed = set()
        for node in game.nodes:
            for edge in game.out_edges(node):
                if edge.target not in changed:
                    continue
                pre = run.precondition(edge, conj(*previous[edge.target]))
                parts[node], grew = run.add(parts[node], pre)
                if grew:
                    now_changed.add(node)
        elapsed = (time.perf_counter() - started) * 1000
        if not now_changed:
            # Psi(h) = Psi(h-1), the fixed point is the previous step
            h -= 1
            status = "fixed"
            break
        assertion = {node: conj(*parts[node]) for node in game.nodes}
        ordered = tuple(node for node in game.nodes if node in now_changed)
        steps.append(IterationStep(h=h, assertion=assertion, changed=ordered, exact=run.exact, elapsed_ms=elapsed))
        log.debug("|Iterate| Step %d changed nodes %s in %.1f ms", h, list(ordered), elapsed)
        changed = now_changed

    final = steps[-1].assertion
    max_label = max((size(formula) for step in steps for formula in step.assertion.values()), default=0)
    log.info("|Iterate| Status %s after %d steps", status, h)
    return IterationResult(
        assertion=final,
        trace=IterationTrace(steps=tuple(steps)),
        status=status,
        h=h,
        exact=run.exact,
        bounded=run.bounded,
        strengthenings=run.strengthenings,
        max_label_size=max_label,
        diagnostics=tuple(run.diagnostics),
    )


def satisfiable(formula: Formula, config: Optional[SolverConfig] = None) -> Tuple[Optional[GroundModel], bool]:
    """A model of ``formula`` and whether the search was only bounded.

    Formulas in the BSR fragment are decided, others are searched up to ``bounded_size``.
    """
    config = current_config(config)
    try:
        return bsr_sat(formula, config), False
    except FragmentError:
        return bounded_sat(formula, config.bounded_size, config), True


def safety_verdict(game: Game, result: IterationResult, config: Optional[SolverConfig] = None) -> SafetyVerdict:
    """Safe when the iteration is fixed and ``Init`` implies the start formula.

    Unsafe when ``Init`` is consistent with the negated start formula of an exact step,
    unknown otherwise.

    Examples
    --------

    >>> from fo_games.game import parse_game
    >>> from fo_games.wp import iterate, safety_verdict
    >>> game = parse_game("state P/0; node n0 start; assert n0: false;")
    >>> verdict = safety_verdict(game, iterate(game))
    >>> verdict.verdict, verdict.h
    ('unsafe', 0)
    """
    config = current_config(config)
    start = game.start
    bounded = result.bounded

    if result.status == "fixed":
        check = entails(game.init, result.assertion[start], config)
        if check.holds:
            log.info("|Iterate| Init implies the fixed point at %s, game is safe", start)
            return SafetyVerdict(verdict="safe", h=result.h, bounded=bounded or check.bounded)
        if result.exact:
            return SafetyVerdict(
                verdict="unsafe",
                h=result.h,
                witness=check.countermodel,
                reason=f"Init does not imply the fixed point at {start}",
            )

    candidates = [(0, game.assertion_at(start))]
    candidates.extend((step.h, step.assertion[start]) for step in result.trace.exact_steps() if step.h)
    for h, formula in candidates:
        model, searched_bounded = satisfiable(conj(game.init, neg(formula)), config)
        bounded = bounded or searched_bounded
        if model is not None:
            log.info("|Iterate| Init violates step %d at %s, game is unsafe", h, start)
            return SafetyVerdict(
                verdict="unsafe",
                h=h,
                witness=model,
                reason=f"Init is consistent with the negation of step {h} at {start}",
            )

    reason = "iteration cap reached" if result.status == "cap-reached" else "fixed point is not exact"
    return SafetyVerdict(verdict="unknown", h=result.h, bounded=bounded, reason=reason)

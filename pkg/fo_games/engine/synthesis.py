# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Invariant inference, strategy extraction and certification of safety games."""

from __future__ import annotations

import logging
import time
from contextlib import contextmanager
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

import psutil

from fo_games.config import SolverConfig, current_config
from fo_games.decide import GroundSolution, ground_game_solve
from fo_games.engine.certify import check_boundary, check_inductive
from fo_games.engine.models import CertificateReport, SynthesisResult, SynthesisStats
from fo_games.engine.strengthen import universal_strengthener
from fo_games.exceptions import (
    CNFBudgetExceededError,
    EnumerationBudgetError,
    FOGamesError,
    FragmentError,
    PreconditionError,
)
from fo_games.game import Definition, Edge, Game, Strategy, formal_params
from fo_games.logic import TRUE, Formula, GroundModel, SOExists, conj, free_vars
from fo_games.soqe import (
    eliminate_exists,
    eliminate_so,
    is_ackermannian,
    weakest_strategy_ackermannian,
)
from fo_games.soqe.models import ChoiceResult
from fo_games.wp import iterate, safety_verdict, wp_edge

log = logging.getLogger(__name__)

BUDGET_ERRORS = (EnumerationBudgetError, CNFBudgetExceededError)


@contextmanager
def _phase(phases: Dict[str, float], name: str) -> Iterator[None]:
    started = time.perf_counter()
    try:
        yield
    finally:
        phases[name] = phases.get(name, 0) + (time.perf_counter() - started) * 1000


def _rss() -> int:
    return psutil.Process().memory_info().rss


def _merge(*maps: Optional[Mapping[str, Formula]]) -> Dict[str, Formula]:
    result: Dict[str, Formula] = {}
    for mapping in maps:
        for node, formula in (mapping or {}).items():
            result[node] = conj(result.get(node, TRUE), formula)
    return result


class StrategyExtraction:
    """Weakest choices for all B predicates with respect to a fixed invariant."""

    def __init__(self, game: Game, assertion: Mapping[str, Formula], config: SolverConfig):
        self.game = game
        self.assertion = assertion
        self.config = config
        self.strengthen = universal_strengthener(config)
        self.choices: Dict[str, Definition] = {}
        self.exact: Dict[str, bool] = {}
        self.gamma_k: Dict[str, int] = {}
        self.diagnostics: List[str] = []

    def _choose(self, edge: Edge, body: Formula) -> ChoiceResult:
        pred = edge.input_pred
        context = self.assertion.get(edge.source, TRUE)
        result = eliminate_exists(body, pred, self.config, self.strengthen, context)
        if free_vars(result.choice) <= set(result.params):
            return result

        # the choice refers to witnesses pulled out of the quantifier prefix
        log.debug("|Synthesize| Strengthening precondition of %s to get a closed choice", edge.name)
        result = eliminate_exists(self.strengthen(body), pred, self.config, context=context)
        return result.copy(update={"exact": False})

    def extract(self, edge: Edge) -> None:
        pred = edge.input_pred
        arity = self.game.signature.inputs_b[pred]
        formula = wp_edge(edge, self.assertion.get(edge.target, TRUE))
        if not isinstance(formula, SOExists):
            self.choices[pred] = Definition(params=formal_params(arity), body=TRUE)
            self.exact[pred] = True
            return

        if is_ackermannian(pred, edge.theta):
            try:
                choice, _ = weakest_strategy_ackermannian(self.game, self.assertion, edge, self.config)
            except FOGamesError as error:
                log.debug("|Synthesize| Ackermannian choice unavailable on %s: %s", edge.name, error)
            else:
                self.choices[pred] = Definition(params=formal_params(arity), body=choice)
                self.exact[pred] = True
                self.gamma_k[pred] = 0
                return
        result = self._choose(edge, formula.body)
        if not result.stabilized:
            self.diagnostics.append(f"gamma sequence for {pred} did not stabilize up to k={result.k_used}")
        self.choices[pred] = result.definition()
        self.exact[pred] = result.exact
        self.gamma_k[pred] = result.k_used
        log.info("|Synthesize| Choice for %s on edge %s: %s", pred, edge.name, result.choice.to_text())

    def run(self) -> Strategy:
        for edge in self.game.b_edges():
            if edge.input_pred is not None:
                self.extract(edge)
        return Strategy(choices=self.choices)


def extract_strategy(
    game: Game,
    assertion: Mapping[str, Formula],
    config: Optional[SolverConfig] = None,
) -> Tuple[Strategy, Dict[str, bool]]:
    """Weakest choice for every B predicate given the invariant ``assertion``, with exactness flags.

    The choice for the input of a B-edge ``u -> v`` comes from eliminating ``exists B`` from the
    weakest precondition of ``assertion[v]``, relative to ``assertion[u]``. Predicates that do
    not influence the target formula get ``true``.

    Examples
    --------

    >>> from fo_games.engine import extract_strategy
    >>> from fo_games.game import builtin_fixture
    >>> from fo_games.logic import conj, parse_formula
    >>> game = builtin_fixture("conference")
    >>> psi = {node: game.assertion_at(node) for node in game.nodes}
    >>> psi["2"] = conj(psi["2"], parse_formula("forall x, p. !Conf(x, p) | !Assign(x, p)"))
    >>> strategy, exact = extract_strategy(game, psi)
    >>> strategy.to_text(), exact["B1"]
    ('B1(y1, y2) := !Conf(y1, y2)', True)
    """
    config = current_config(config)
    extraction = StrategyExtraction(game, assertion, config)
    return extraction.run(), extraction.exact


class _Synthesis:
    def __init__(self, game: Game, config: SolverConfig):
        self.game = game
        self.config = config
        self.started = time.perf_counter()
        self.phases: Dict[str, float] = {}
        self.diagnostics: List[str] = []
        self.stats: Dict[str, object] = {}

    def diagnose(self, message: str) -> None:
        if message not in self.diagnostics:
            log.info("|Synthesize| %s", message)
            self.diagnostics.append(message)

    def finish(self, verdict: str, **fields) -> SynthesisResult:
        stats = SynthesisStats(
            phases_ms=self.phases,
            elapsed_ms=(time.perf_counter() - self.started) * 1000,
            memory_rss=_rss(),
            **self.stats,
        )
        log.info("|Synthesize| Verdict %s for game %r", verdict, self.game.name)
        return SynthesisResult(verdict=verdict, stats=stats, diagnostics=tuple(self.diagnostics), **fields)

    def certify(self, assertion: Mapping[str, Formula], strategy: Strategy) -> Optional[CertificateReport]:
        with _phase(self.phases, "certify"):
            try:
                report = check_inductive(self.game, assertion, strategy, self.config)
                return report.merge(check_boundary(self.game, assertion, self.config))
            except (PreconditionError, FragmentError) as error:
                self.diagnose(f"certification not decidable: {error}")
            except BUDGET_ERRORS as error:
                self.diagnose(f"certification exceeded a budget: {error}")
        return None

    def confirm(self, witness: GroundModel) -> Optional[GroundSolution]:
        constants = dict(witness.constants)
        valuation = constants if set(self.game.signature.constants) <= set(constants) else None
        with _phase(self.phases, "confirm"):
            try:
                return ground_game_solve(self.game, witness.size, valuation, self.config, initial=[witness])
            except BUDGET_ERRORS as error:
                self.diagnose(f"ground confirmation skipped: {error}")
        return None


def synthesize(
    game: Game,
    config: Optional[SolverConfig] = None,
    invariant: Optional[Mapping[str, Formula]] = None,
) -> SynthesisResult:
    """Infer an inductive invariant and a winning strategy for B, or find a winning play for A.

    The weakest-precondition iteration starts from the node assertions conjoined with the
    invariant parts of the game and ``invariant``. Second-order quantifiers are eliminated
    after each step and non-universal preconditions are strengthened to universal ones. A
    safe outcome is certified by :obj:`check_inductive` and :obj:`check_boundary` and turned
    into ``unknown`` when certification fails. An unsafe outcome is replayed on the ground game.

    Examples
    --------

    >>> from fo_games.engine import synthesize
    >>> from fo_games.game import parse_game
    >>> game = parse_game("state P/0; node n0 start; assert n0: false;")
    >>> result = synthesize(game)
    >>> result.verdict, result.stats.h, result.trace.winner
    ('unsafe', 0, 'A')
    """
    config = current_config(config)
    run = _Synthesis(game, config)
    strengthen = universal_strengthener(config)

    def eliminate(formula: Formula, edge: Edge):
        return eliminate_so(formula, config, strengthen)

    try:
        with _phase(run.phases, "iterate"):
            iteration = iterate(game, eliminate, strengthen, initial=_merge(game.invariant, invariant), config=config)
        with _phase(run.phases, "verdict"):
            verdict = safety_verdict(game, iteration, config)
    except BUDGET_ERRORS as error:
        run.diagnose(f"iteration exceeded a budget: {error}")
        return run.finish("unknown", bounded=True)

    for message in iteration.diagnostics:
        run.diagnose(message)
    run.stats.update(
        h=iteration.h,
        strengthenings=iteration.strengthenings,
        max_label_size=iteration.max_label_size,
    )
    assertion = dict(iteration.assertion)
    bounded = iteration.bounded or verdict.bounded

    if verdict.verdict == "unsafe":
        run.stats["h"] = verdict.h
        trace = run.confirm(verdict.witness) if verdict.witness is not None else None
        if trace is not None and trace.winner != "A":
            run.diagnose(f"witness at step {verdict.h} is not confirmed by the ground game")
            return run.finish("unknown", invariant=assertion, bounded=True, witness=verdict.witness, trace=trace)
        return run.finish("unsafe", invariant=assertion, bounded=bounded, witness=verdict.witness, trace=trace)

    if verdict.verdict == "unknown":
        run.diagnose(verdict.reason)
        return run.finish("unknown", invariant=assertion, bounded=bounded)

    with _phase(run.phases, "strategy"):
        try:
            extraction = StrategyExtraction(game, assertion, config)
            strategy = extraction.run()
        except FOGamesError as error:
            run.diagnose(f"strategy extraction failed: {error}")
            return run.finish("unknown", invariant=assertion, bounded=bounded)
    for message in extraction.diagnostics:
        run.diagnose(message)
    run.stats["gamma_k"] = extraction.gamma_k

    certificate = run.certify(assertion, strategy)
    fields = dict(
        invariant=assertion,
        strategies=strategy,
        exact=extraction.exact,
        certificate=certificate,
        bounded=bounded or (certificate is not None and certificate.bounded),
    )
    if certificate is None or not certificate.holds:
        if certificate is not None:
            failed = ", ".join(item.name for item in certificate.failures)
            run.diagnose(f"certification failed: {failed}")
        return run.finish("unknown", **fields)
    return run.finish("safe", invariant_status="inferred", **fields)


def verify(
    game: Game,
    invariant: Optional[Mapping[str, Formula]] = None,
    config: Optional[SolverConfig] = None,
) -> SynthesisResult:
    """Prove ``invariant`` inductive, or infer one starting from it.

    Without ``invariant`` the invariant section of the game is used. The candidate is
    conjoined with the node assertions, a strategy is extracted for it, and it is certified
    directly. When that fails the candidate becomes the partial invariant of :obj:`synthesize`.

    Examples
    --------

    >>> from fo_games.engine import verify
    >>> from fo_games.game import builtin_fixture
    >>> from fo_games.logic import parse_formula
    >>> game = builtin_fixture("conference")
    >>> safe = parse_formula("forall x, p. !Conf(x, p) | !Assign(x, p)")
    >>> result = verify(game, {"0": parse_formula("forall x, p, r. !Read(x, p, r)"), "2": safe, "3": safe, "4": safe})
    >>> result.verdict, result.invariant_status, result.strategies.to_text()
    ('safe', 'inductive', 'B1(y1, y2) := !Conf(y1, y2)')
    """
    config = current_config(config)
    candidate = invariant if invariant is not None else game.invariant
    if not candidate:
        return synthesize(game, config)

    run = _Synthesis(game, config)
    assertion = _merge(game.assertion, candidate)
    with _phase(run.phases, "strategy"):
        try:
            extraction = StrategyExtraction(game, assertion, config)
            strategy = extraction.run()
        except FOGamesError as error:
            log.info("|Synthesize| No strategy for the given invariant: %s", error)
            strategy = None
    certificate = run.certify(assertion, strategy) if strategy is not None else None
    if certificate is not None and certificate.holds:
        log.info("|Synthesize| Given invariant is inductive")
        run.stats["gamma_k"] = extraction.gamma_k
        return run.finish(
            "safe",
            invariant=assertion,
            invariant_status="inductive",
            strategies=strategy,
            exact=extraction.exact,
            certificate=certificate,
            bounded=certificate.bounded,
        )

    log.info("|Synthesize| Given invariant is not inductive, inferring one")
    result = synthesize(game, config, candidate)
    diagnostics = run.diagnostics + [message for message in result.diagnostics if message not in run.diagnostics]
    return result.copy(update={"diagnostics": tuple(diagnostics)})

# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Removing every second-order quantifier of a precondition, innermost first."""

from __future__ import annotations

import logging
from typing import Callable, Dict, List, Optional

from fo_games.config import SolverConfig, current_config
from fo_games.decide import entails
from fo_games.exceptions import FragmentError, NonUniversalError
from fo_games.game import Definition
from fo_games.logic import (
    TRUE,
    And,
    CountExists,
    Exists,
    Forall,
    Formula,
    Or,
    SOExists,
    SOForall,
    conj,
    disj,
    free_vars,
    has_so_quantifier,
    is_universal,
    neg,
    predicates,
    simplify,
    to_nnf,
)
from fo_games.soqe.choice import ackermann_eliminate, general_choice
from fo_games.soqe.models import ChoiceResult, Elimination, NormalForm
from fo_games.soqe.normal_form import normal_form
from fo_games.soqe.universal import eliminate_forall

log = logging.getLogger(__name__)

Strengthen = Callable[[Formula], Formula]


def choose(nf: NormalForm, config: Optional[SolverConfig] = None, context: Optional[Formula] = None) -> ChoiceResult:
    """Eliminate the normal form, exactly when it is simple.

    With a ``context`` that implies ``E`` the choice drops the ``!E`` disjunct, so it is the
    weakest choice among the states satisfying the context.
    """
    config = current_config(config)
    relative = context is not None and not nf.outer and nf.e != TRUE and entails(context, nf.e, config).holds
    target = nf.copy(update={"e": TRUE}) if relative else nf
    result = ackermann_eliminate(target) if target.is_simple else general_choice(target, config.max_gamma, config)
    if relative:
        result = result.copy(update={"eliminated": simplify(conj(nf.e, result.eliminated))})
    return result


def eliminate_exists(
    formula: Formula,
    pred: str,
    config: Optional[SolverConfig] = None,
    strengthen: Optional[Strengthen] = None,
    context: Optional[Formula] = None,
) -> ChoiceResult:
    """First-order formula implied by ``formula[choice/pred]`` and implying ``exists pred. formula``.

    When ``pred`` occurs below an existential quantifier, ``strengthen`` is applied first
    and the result is inexact.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.soqe import eliminate_exists
    >>> result = eliminate_exists(parse_formula("(forall x. !C(x) | !B(x)) & exists x. B(x)"), "B")
    >>> result.exact, result.eliminated.to_text()
    (True, 'exists v1. !C(v1)')
    """
    config = current_config(config)
    if isinstance(formula, SOExists) and formula.pred == pred:
        formula = formula.body
    try:
        nf = normal_form(formula, pred, config.clause_budget)
    except FragmentError:
        if strengthen is None:
            raise
        log.debug("|Eliminate| Strengthening before eliminating %s", pred)
        nf = normal_form(strengthen(formula), pred, config.clause_budget)
        nf = nf.copy(update={"exact": False})
    return choose(nf, config, context)


class _Eliminator:
    def __init__(self, config: SolverConfig, strengthen: Optional[Strengthen], context: Optional[Formula]):
        self.config = config
        self.strengthen = strengthen
        self.context = context
        self.exact = True
        self.bounded = False
        self.choices: Dict[str, Definition] = {}
        self.diagnostics: List[str] = []

    def _record(self, pred: str, result: ChoiceResult) -> None:
        self.bounded = self.bounded or result.bounded
        self.exact = self.exact and result.exact
        if not result.stabilized:
            self._diagnose(f"gamma sequence for {pred} did not stabilize up to k={result.k_used}")

    def _diagnose(self, message: str) -> None:
        if message not in self.diagnostics:
            self.diagnostics.append(message)

    def walk(self, node: Formula) -> Formula:  # noqa: WPS212
        if not has_so_quantifier(node):
            return node
        if isinstance(node, SOExists):
            return self.exists(node.pred, self.walk(node.body))
        if isinstance(node, SOForall):
            return self.forall(node.pred, self.walk(node.body))
        if isinstance(node, And):
            return conj(*(self.walk(item) for item in node.items))
        if isinstance(node, Or):
            return disj(*(self.walk(item) for item in node.items))
        if isinstance(node, (Forall, Exists)):
            return type(node)(node.vars, self.walk(node.body))
        if isinstance(node, CountExists):
            return CountExists(node.threshold, node.var, self.walk(node.body))
        raise FragmentError("negation above a second-order quantifier", node.to_text())

    def exists(self, pred: str, body: Formula) -> Formula:
        if pred not in predicates(body):
            return body
        result = eliminate_exists(body, pred, self.config, self.strengthen, self.context)
        self._record(pred, result)
        if free_vars(result.choice) <= set(result.params):
            self.choices[pred] = result.definition()
        else:
            log.debug("|Eliminate| Choice for %s depends on pulled out witnesses, not recorded", pred)
        return result.eliminated

    def forall(self, pred: str, body: Formula) -> Formula:
        if pred not in predicates(body):
            return body
        if is_universal(body):
            return eliminate_forall(body, pred, self.config.clause_budget)

        # forall A. phi is !exists A. !phi, usable only when the inner elimination is exact
        try:
            dual = eliminate_exists(to_nnf(neg(body)), pred, self.config)
        except FragmentError as error:
            log.debug("|Eliminate| No dual elimination for %s: %s", pred, error)
        else:
            if dual.exact:
                self.bounded = self.bounded or dual.bounded
                return simplify(neg(dual.eliminated))
            if not dual.stabilized:
                self._diagnose(f"gamma sequence for {pred} did not stabilize up to k={dual.k_used}")

        if self.strengthen is None:
            raise NonUniversalError(body.to_text())
        self.exact = False
        log.debug("|Eliminate| Strengthened body of forall %s", pred)
        return eliminate_forall(self.strengthen(body), pred, self.config.clause_budget)


def eliminate_so(
    formula: Formula,
    config: Optional[SolverConfig] = None,
    strengthen: Optional[Strengthen] = None,
    context: Optional[Formula] = None,
) -> Elimination:
    """Remove all second-order quantifiers of ``formula``, innermost first.

    Universal ones over universal bodies are eliminated exactly, other universal ones through
    the dual existential elimination or ``strengthen``. Existential ones go through the normal
    form. The weakest choices found for existentially quantified predicates are collected.

    Examples
    --------

    >>> from fo_games.game import builtin_fixture
    >>> from fo_games.logic import parse_formula
    >>> from fo_games.soqe import eliminate_so
    >>> from fo_games.wp import wp_edge
    >>> game = builtin_fixture("conference")
    >>> post = parse_formula("forall x, p. !Conf(x, p) | !Assign(x, p)")
    >>> result = eliminate_so(wp_edge(game.edges[1], post))
    >>> result.formula.to_text(), result.exact, result.choices["B1"].to_text()
    ('true', True, '(y1, y2) := !Conf(y1, y2)')
    """
    config = current_config(config)
    run = _Eliminator(config, strengthen, context)
    result = run.walk(to_nnf(formula))
    return Elimination(
        formula=result,
        exact=run.exact,
        bounded=run.bounded,
        choices=run.choices,
        diagnostics=tuple(run.diagnostics),
    )

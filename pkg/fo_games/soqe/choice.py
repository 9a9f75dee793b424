# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Eliminating ``exists B`` from a normal form and choosing the weakest ``B``.

For a simple normal form (``H`` is trivial) the result is exact. Otherwise ``B`` has to be
closed under the step relation ``!H`` and the choice is approximated by the sequence
``gamma_0, gamma_1, ...`` of formulas that follow ``!H`` for at most ``k`` steps.
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence

from fo_games.config import SolverConfig, current_config
from fo_games.decide import EntailmentResult, entails, small_model_size
from fo_games.exceptions import (
    CNFBudgetExceededError,
    EnumerationBudgetError,
    FragmentError,
    NotSimpleError,
)
from fo_games.logic import (
    Formula,
    Term,
    Var,
    atom,
    conj,
    disj,
    exists,
    forall,
    fresh_name,
    neg,
    neq,
    simplify,
    substitute_predicate,
    substitute_terms,
)
from fo_games.soqe.models import ChoiceResult, NormalForm
from fo_games.soqe.normal_form import fresh_vars, normal_form

log = logging.getLogger(__name__)


def _rename(formula: Formula, names: Sequence[str], terms: Sequence[Term]) -> Formula:
    return substitute_terms(formula, dict(zip(names, terms)))


def _vars(names: Sequence[str]) -> list[Term]:
    return [Var(name) for name in names]


def g_at_y(nf: NormalForm) -> Formula:
    """``G[y/y']``."""
    return _rename(nf.g, nf.y_prime, _vars(nf.y))


def ackermann_eliminate(nf: NormalForm) -> ChoiceResult:
    """Exact elimination of a simple normal form.

    The result is ``E & forall y. F | G[y/y']`` and the weakest choice is ``!E | G[y/y']``.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.soqe import ackermann_eliminate, normal_form
    >>> nf = normal_form(parse_formula("forall x, p. !Conf(x, p) | !B1(x, p)"), "B1")
    >>> result = ackermann_eliminate(nf)
    >>> result.eliminated.to_text(), result.choice.to_text()
    ('true', '!Conf(v1, v2)')
    """
    if not nf.is_simple:
        raise NotSimpleError(nf.pred)
    g_y = g_at_y(nf)
    eliminated = simplify(exists(nf.outer, conj(nf.e, forall(nf.y, disj(nf.f, g_y)))))
    choice = simplify(disj(neg(nf.e), g_y))
    return ChoiceResult(eliminated=eliminated, choice=choice, params=nf.y, exact=nf.exact)


def h_power(nf: NormalForm, k: int) -> Formula:
    """``H^0 = y != y'`` and ``H^k = forall y1. H^(k-1)[y1/y'] | H[y1/y]``.

    ``H^k(y, y')`` fails exactly when ``y`` is reached from ``y'`` in ``k`` steps of ``!H``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    result = disj(*(neq(Var(left), Var(right)) for left, right in zip(nf.y, nf.y_prime)))
    for _ in range(k):
        middle = fresh_vars(f"{nf.pred}m", nf.arity)
        previous = _rename(result, nf.y_prime, _vars(middle))
        step = _rename(nf.h, nf.y, _vars(middle))
        result = forall(middle, disj(previous, step))
    return simplify(result)


def g_after_h(nf: NormalForm, k: int, target: Sequence[Term]) -> Formula:
    """``forall w. G[w/y'] | H^k[w/y, target/y']``: every point ``k`` steps from ``target`` satisfies ``G``."""
    inner = fresh_vars(f"{nf.pred}w", nf.arity)
    shifted = _rename(nf.g, nf.y_prime, _vars(inner))
    mapping = dict(zip(nf.y, _vars(inner)))
    mapping.update(zip(nf.y_prime, target))
    return simplify(forall(inner, disj(shifted, substitute_terms(h_power(nf, k), mapping))))


def _closure(nf: NormalForm, k: int) -> Formula:
    return conj(*(g_after_h(nf, index, _vars(nf.y)) for index in range(k + 1)))


def gamma(nf: NormalForm, k: int) -> Formula:
    """``gamma_k(y) = !E | AND over i <= k of (G o H^i)(y)``.

    ``gamma_0`` is the choice of :obj:`ackermann_eliminate`.
    """
    return simplify(disj(neg(nf.e), _closure(nf, k)))


def _eliminated(nf: NormalForm, k: int) -> Formula:
    parts = [forall(nf.y, disj(nf.f, g_after_h(nf, index, _vars(nf.y)))) for index in range(k + 1)]
    return simplify(exists(nf.outer, conj(nf.e, *parts)))


def _plugged(nf: NormalForm, choice: Formula) -> Formula:
    return simplify(exists(nf.outer, substitute_predicate(nf.matrix(), nf.pred, nf.y, choice)))


def _implies(premise: Formula, conclusion: Formula, config: SolverConfig) -> EntailmentResult:
    try:
        size = small_model_size(conj(premise, neg(conclusion)))
    except FragmentError:
        size = config.bounded_size
    if size > config.gamma_universe:
        raise EnumerationBudgetError("Choice sequence check", size, config.gamma_universe)
    return entails(premise, conclusion, config)


def gamma_iterate(nf: NormalForm, max_k: Optional[int] = None, config: Optional[SolverConfig] = None) -> ChoiceResult:
    """Increase ``k`` until ``gamma_k`` implies ``gamma_(k+1)``.

    A check whose small-model size exceeds ``gamma_universe`` ends the sequence.

    When the sequence stabilizes at ``k`` the elimination ``E & AND over i <= k of
    forall y. F | (G o H^i)(y)`` is exact. Otherwise the last ``gamma_k`` is plugged in,
    which gives a stronger formula, and the result is marked inexact.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.soqe import gamma_iterate, normal_form
    >>> phi = parse_formula("(forall x. !P(x) | B(x)) & (forall x, y. x = y | B(x) | !B(y))")
    >>> result = gamma_iterate(normal_form(phi, "B"))
    >>> result.exact, result.k_used, result.eliminated.to_text()
    (True, 0, 'true')
    """
    config = current_config(config)
    max_k = config.max_gamma if max_k is None else max_k
    bounded = False
    k = 0
    while k <= max_k:
        premise = conj(nf.e, _closure(nf, k))
        try:
            check = _implies(premise, g_after_h(nf, k + 1, _vars(nf.y)), config)
        except (EnumerationBudgetError, CNFBudgetExceededError) as error:
            log.info("|Gamma| Stopped at k=%d for %s: %s", k, nf.pred, error)
            break
        bounded = bounded or check.bounded
        if check.holds:
            log.debug("|Gamma| Sequence for %s stabilized at k=%d", nf.pred, k)
            return ChoiceResult(
                eliminated=_eliminated(nf, k),
                choice=gamma(nf, k),
                params=nf.y,
                exact=nf.exact,
                k_used=k,
                bounded=bounded,
            )
        k += 1

    last = min(k, max_k)
    choice = gamma(nf, last)
    log.info("|Gamma| Sequence for %s did not stabilize up to k=%d", nf.pred, last)
    return ChoiceResult(
        eliminated=_plugged(nf, choice),
        choice=choice,
        params=nf.y,
        exact=False,
        k_used=last,
        stabilized=False,
        bounded=bounded,
    )


def general_choice(nf: NormalForm, max_k: Optional[int] = None, config: Optional[SolverConfig] = None) -> ChoiceResult:
    """Weakest choice for ``B`` through the auxiliary formula ``exists B'. B'(y) & ...``.

    ``B'`` must contain ``y``, stay inside ``G`` and be closed under ``!H``; eliminating it
    gives the set of points every admissible ``B`` containing ``y`` must satisfy. The choice
    is ``!E`` or that formula, and it is exact when the inner elimination is.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.soqe import general_choice, normal_form
    >>> result = general_choice(normal_form(parse_formula("forall x. !C(x) | !B(x)"), "B"))
    >>> result.exact, result.choice.to_text()
    (True, '!C(v1)')
    """
    config = current_config(config)
    if nf.is_simple:
        return ackermann_eliminate(nf)

    inner_pred = fresh_name(f"{nf.pred}Closed")
    step_source = fresh_vars(f"{nf.pred}s", nf.arity)
    auxiliary = conj(
        atom(inner_pred, *_vars(nf.y)),
        forall(nf.y_prime, disj(nf.g, neg(atom(inner_pred, *_vars(nf.y_prime))))),
        forall(
            step_source + nf.y_prime,
            disj(
                _rename(nf.h, nf.y, _vars(step_source)),
                atom(inner_pred, *_vars(step_source)),
                neg(atom(inner_pred, *_vars(nf.y_prime))),
            ),
        ),
    )
    inner = gamma_iterate(normal_form(auxiliary, inner_pred, config.clause_budget), max_k, config)
    choice = simplify(disj(neg(nf.e), inner.eliminated))
    if inner.exact and nf.exact:
        eliminated = simplify(exists(nf.outer, conj(nf.e, forall(nf.y, disj(nf.f, inner.eliminated)))))
    else:
        eliminated = _plugged(nf, choice)
    return ChoiceResult(
        eliminated=eliminated,
        choice=choice,
        params=nf.y,
        exact=inner.exact and nf.exact,
        k_used=inner.k_used,
        stabilized=inner.stabilized,
        bounded=inner.bounded,
    )

# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Universal strengthenings of first-order formulas."""

from __future__ import annotations

import logging
from typing import List, Optional, Sequence

from fo_games.config import SolverConfig, current_config
from fo_games.logic import (
    Const,
    Formula,
    Term,
    Var,
    constants,
    conj,
    disj,
    forall,
    free_vars,
    has_so_quantifier,
    is_universal,
    simplify,
    substitute_terms,
    to_prenex,
    to_prenex_cnf,
)
from fo_games.logic.transform import literal_key

log = logging.getLogger(__name__)


class _Instances:
    def __init__(self, budget: int):
        self.budget = budget
        self.used = 0

    def expand(self, prefix: Sequence, matrix: Formula, terms: List[Term]) -> Formula:  # noqa: WPS231
        if not prefix:
            return matrix
        (kind, var), rest = prefix[0], prefix[1:]
        if kind == "forall":
            return forall([var], self.expand(rest, matrix, terms + [Var(var)]))
        if not terms or self.used + len(terms) > self.budget:
            # exists x. phi is implied by forall x. phi over nonempty universes
            return forall([var], self.expand(rest, matrix, terms + [Var(var)]))
        self.used += len(terms)
        return disj(*(self.expand(rest, substitute_terms(matrix, {var: term}), terms) for term in terms))


def strengthen_universal(formula: Formula, config: Optional[SolverConfig] = None) -> Formula:
    """Universal formula implying ``formula``.

    Each existential variable is instantiated with the constants, the free variables and the
    universal variables in front of it, and the instances are joined by a disjunction. Once
    ``instance_budget`` instances are used, remaining existentials become universal.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.engine import strengthen_universal
    >>> strengthen_universal(parse_formula("exists x. P(x)", constants=["c"])).to_text()
    'P(c)'
    >>> strengthen_universal(parse_formula("forall x. exists y. E(x, y)")).to_text()
    'forall v1. E(v1, v1)'
    >>> strengthen_universal(parse_formula("exists x. P(x)")).to_text()
    'forall v1. P(v1)'
    """
    if has_so_quantifier(formula) or is_universal(formula):
        return formula
    config = current_config(config)
    prefix, matrix = to_prenex(formula, prefer="forall")
    terms: List[Term] = [Const(name) for name in sorted(constants(formula))]
    terms.extend(Var(name) for name in sorted(free_vars(formula)))
    result = simplify(_Instances(config.instance_budget).expand(prefix, matrix, terms))
    log.debug("|Strengthen| Herbrand instances for %d quantifiers", len(prefix))
    return result


def approximate(formula: Formula, literal_budget: int, budget: int = 10000) -> Formula:
    """Keep at most ``literal_budget`` literals of every clause of a universal formula.

    Dropping literals of a clause makes it stronger, so the result implies the input.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.engine import approximate
    >>> approximate(parse_formula("forall x. P(x) | Q(x) | R(x)"), 2).to_text()
    'forall v1. P(v1) | Q(v1)'
    """
    if has_so_quantifier(formula) or not is_universal(formula):
        return formula
    cnf = to_prenex_cnf(formula, budget=budget, prefer="forall")
    if all(len(clause) <= literal_budget for clause in cnf.clauses):
        return formula
    clauses = []
    for clause in cnf.clauses:
        kept = sorted(clause, key=literal_key)[:literal_budget]
        clauses.append(disj(*kept))
    matrix = conj(*clauses)
    used = free_vars(matrix)
    log.debug("|Strengthen| Clauses truncated to %d literals", literal_budget)
    return simplify(forall([var for var in cnf.variables if var in used], matrix))


def universal_strengthener(config: SolverConfig):
    """Strengthening applied to each precondition during iteration."""

    def strengthen(formula: Formula) -> Formula:
        result = strengthen_universal(formula, config)
        if config.approx:
            result = approximate(result, config.literal_budget, config.clause_budget)
        return result

    return strengthen


# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

import logging
from typing import List, Tuple

from fo_games.exceptions import NonUniversalError
from fo_games.logic import (
    Atom,
    Formula,
    Not,
    SOForall,
    Term,
    conj,
    disj,
    eq,
    forall,
    free_vars,
    has_so_quantifier,
    simplify,
    to_prenex_cnf,
)

log = logging.getLogger(__name__)


def _split(clause, pred: str) -> Tuple[List[Tuple[Term, ...]], List[Tuple[Term, ...]], List[Formula]]:
    positive, negative, rest = [], [], []
    for literal in clause:
        if isinstance(literal, Atom) and literal.pred == pred:
            positive.append(literal.args)
        elif isinstance(literal, Not) and isinstance(literal.body, Atom) and literal.body.pred == pred:
            negative.append(literal.body.args)
        else:
            rest.append(literal)
    return positive, negative, rest


def tuple_eq(left, right) -> Formula:
    return conj(*(eq(first, second) for first, second in zip(left, right)))


def eliminate_forall(formula: Formula, pred: str, budget: int = 10000) -> Formula:
    """First-order equivalent of ``forall pred. formula`` for a universal ``formula``.

    Each clause ``F | pred(z1) | ... | !pred(w1) | ...`` becomes ``F | OR over i, j of zi = wj``,
    so clauses with occurrences of one polarity only lose them.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.soqe import eliminate_forall
    >>> phi = parse_formula("forall x, p, r. !Conf(x, p) | !Assign(x, p) | !A3(x, p, r)")
    >>> eliminate_forall(phi, "A3").to_text()
    'forall v1, v2. !Assign(v1, v2) | !Conf(v1, v2)'
    >>> eliminate_forall(parse_formula("forall x, y. A(x) | !A(y)"), "A").to_text()
    'forall v1, v2. v1 = v2'
    """
    if isinstance(formula, SOForall) and formula.pred == pred:
        formula = formula.body
    if has_so_quantifier(formula):
        raise NonUniversalError(f"second-order quantifier below forall {pred}")
    cnf = to_prenex_cnf(formula, budget=budget, prefer="forall")
    if not cnf.is_universal:
        raise NonUniversalError(formula.to_text())

    clauses = []
    for clause in cnf.clauses:
        positive, negative, rest = _split(clause, pred)
        joins = [tuple_eq(left, right) for left in positive for right in negative]
        clauses.append(disj(*rest, *joins))
    matrix = conj(*clauses)
    used = free_vars(matrix)
    result = simplify(forall([var for var in cnf.variables if var in used], matrix))
    log.debug("|Eliminate| forall %s over %d clauses", pred, len(cnf.clauses))
    return result

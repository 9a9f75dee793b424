# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Bringing ``exists B. phi`` into the four-part normal form."""

from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

from fo_games.exceptions import FragmentError
from fo_games.logic import (
    And,
    Atom,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    SOExists,
    Term,
    Var,
    conj,
    disj,
    cnf_clauses,
    condense_clause,
    forall,
    free_vars,
    fresh_name,
    neq,
    predicates,
    rename_apart,
    simplify,
    to_nnf,
)
from fo_games.soqe.models import NormalForm

log = logging.getLogger(__name__)


def fresh_vars(hint: str, arity: int) -> Tuple[str, ...]:
    return tuple(fresh_name(hint) for _ in range(arity))


def b_prenex(formula: Formula, pred: str, allow_outer: bool = True) -> Tuple[Tuple[str, ...], Tuple[str, ...], Formula]:
    """``(outer, universal, matrix)`` with ``formula`` equivalent to ``exists outer. forall universal. matrix``.

    Only quantifiers whose scope mentions ``pred`` are pulled out, subformulas without ``pred``
    stay whole inside the matrix. An existential quantifier over ``pred`` may only be pulled in
    front of the second-order quantifier when no universal one encloses it.
    """
    outer: List[str] = []
    universal: List[str] = []

    def walk(node: Formula, under_forall: bool) -> Formula:  # noqa: WPS231
        if pred not in predicates(node):
            return node
        if isinstance(node, Forall):
            universal.extend(node.vars)
            return walk(node.body, True)
        if isinstance(node, Exists):
            if under_forall or not allow_outer:
                raise FragmentError(f"{pred} occurs below an existential quantifier", node.to_text())
            outer.extend(node.vars)
            return walk(node.body, False)
        if isinstance(node, And):
            return conj(*(walk(item, under_forall) for item in node.items))
        if isinstance(node, Or):
            return disj(*(walk(item, under_forall) for item in node.items))
        if isinstance(node, Atom) or (isinstance(node, Not) and isinstance(node.body, Atom)):
            return node
        raise FragmentError(f"{pred} occurs in a non first-order context", node.to_text())

    matrix = walk(rename_apart(to_nnf(formula)), False)
    return tuple(outer), tuple(universal), matrix


def _guards(args: Sequence[Term], names: Sequence[str]) -> List[Formula]:
    return [neq(term, Var(name)) for term, name in zip(args, names)]


def normal_form(formula: Formula, pred: str, budget: int = 10000, allow_outer: bool = True) -> NormalForm:
    """Normal form of ``exists pred. formula``.

    Clauses without ``pred`` go to ``E``, clauses with only positive occurrences to ``F``,
    only negative ones to ``G`` and clauses with both to ``H``; each occurrence is replaced by
    disequality guards against fresh variables ``y`` or ``y'``. A clause with several
    occurrences of the same polarity keeps the first one, which makes the result stronger
    and the normal form inexact.

    Raises :obj:`FragmentError` when ``pred`` occurs below an existential quantifier that
    cannot be moved in front.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.soqe import normal_form
    >>> nf = normal_form(parse_formula("forall x, p. !Conf(x, p) | !B1(x, p)"), "B1")
    >>> nf.e.to_text(), nf.f.to_text(), nf.is_simple, nf.exact
    ('true', 'true', True, True)
    >>> nf.g.to_text()
    '!Conf(v1, v2)'
    """
    if isinstance(formula, SOExists) and formula.pred == pred:
        formula = formula.body
    arity = predicates(formula).get(pred)
    if arity is None:
        return NormalForm(pred=pred, e=formula)

    outer, universal, matrix = b_prenex(formula, pred, allow_outer=allow_outer)
    y = fresh_vars(f"{pred}y", arity)
    y_prime = fresh_vars(f"{pred}z", arity)
    parts: dict[str, List[Formula]] = {"e": [], "f": [], "g": [], "h": []}
    exact = True

    for raw in cnf_clauses(matrix, budget):
        clause = condense_clause(raw, universal)
        positive = [lit.args for lit in clause if isinstance(lit, Atom) and lit.pred == pred]
        negative = [
            lit.body.args for lit in clause if isinstance(lit, Not) and isinstance(lit.body, Atom) and lit.body.pred == pred
        ]
        rest = [lit for lit in clause if not _mentions(lit, pred)]
        if len(positive) > 1 or len(negative) > 1:
            exact = False
        guards = []
        if positive:
            guards += _guards(positive[0], y)
        if negative:
            guards += _guards(negative[0], y_prime)
        body = disj(*rest, *guards)
        closed = forall([var for var in universal if var in free_vars(body)], body)
        key = "e" if not (positive or negative) else "h" if positive and negative else "f" if positive else "g"
        parts[key].append(closed)

    if not exact:
        log.debug("|NormalForm| Clauses with repeated %s occurrences were strengthened", pred)
    return NormalForm(
        pred=pred,
        y=y,
        y_prime=y_prime,
        outer=outer,
        exact=exact,
        **{key: simplify(conj(*items)) for key, items in parts.items()},
    )


def _mentions(literal: Formula, pred: str) -> bool:
    return pred in predicates(literal)

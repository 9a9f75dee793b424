# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Weakest strengthenings of monadic formulas without (dis)equalities between bound variables."""

from __future__ import annotations

from collections import Counter
from typing import Callable, FrozenSet, Iterable, List, Sequence, Union

from fo_games.exceptions import BoundEqualityError
from fo_games.logic import (
    FALSE,
    And,
    Const,
    CountExists,
    Eq,
    Exists,
    Forall,
    Formula,
    GroundModel,
    Not,
    Or,
    SOExists,
    SOForall,
    Term,
    Var,
    atom,
    conj,
    disj,
    eq,
    neg,
    neq,
    simplify,
    subformulas,
    to_nnf,
)

Replace = Callable[[Term, Term], Formula]


def _terms(constants: Iterable[Union[str, Term]]) -> List[Term]:
    return [Const(item) if isinstance(item, str) else item for item in constants]


def _bound_pair(node: Eq, bound: FrozenSet[str]) -> bool:
    return all(isinstance(term, Var) and term.name in bound for term in (node.left, node.right)) and (
        node.left != node.right
    )


def _rewrite(  # noqa: WPS231
    node: Formula,
    bound: FrozenSet[str],
    positive: Replace,
    negative: Replace,
) -> Formula:
    if isinstance(node, Eq):
        return positive(node.left, node.right) if _bound_pair(node, bound) else node
    if isinstance(node, Not):
        if isinstance(node.body, Eq) and _bound_pair(node.body, bound):
            return negative(node.body.left, node.body.right)
        return neg(_rewrite(node.body, bound, positive, negative))
    if isinstance(node, And):
        return conj(*(_rewrite(item, bound, positive, negative) for item in node.items))
    if isinstance(node, Or):
        return disj(*(_rewrite(item, bound, positive, negative) for item in node.items))
    if isinstance(node, (Forall, Exists)):
        return type(node)(node.vars, _rewrite(node.body, bound | set(node.vars), positive, negative))
    if isinstance(node, CountExists):
        return CountExists(node.threshold, node.var, _rewrite(node.body, bound | {node.var}, positive, negative))
    if isinstance(node, (SOForall, SOExists)):
        return type(node)(node.pred, node.arity, _rewrite(node.body, bound, positive, negative))
    return node


def abstract_equalities(formula: Formula, constants: Iterable[Union[str, Term]] = ()) -> Formula:
    """Replace each equality ``x = y`` between bound variables by ``OR over c of x = c & y = c``.

    The result has no equalities between bound variables and implies ``formula``; among such
    formulas it is the weakest. Disequalities between bound variables are rejected.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.monadic import abstract_equalities
    >>> abstract_equalities(parse_formula("forall x, y. P(x) | x = y", constants=["c"]), ["c"]).to_text()
    'forall x, y. P(x) | c = x & c = y'
    >>> abstract_equalities(parse_formula("forall x, y. P(x) | x = y")).to_text()
    'forall x. P(x)'
    """
    terms = _terms(constants)

    def positive(left: Term, right: Term) -> Formula:
        return disj(*(conj(eq(left, term), eq(right, term)) for term in terms))

    def negative(left: Term, right: Term) -> Formula:
        raise BoundEqualityError("no disequalities between bound variables", f"{left.to_text()} != {right.to_text()}")

    return simplify(_rewrite(to_nnf(formula), frozenset(), positive, negative))


def abstract_disequalities(
    formula: Formula,
    constants: Iterable[Union[str, Term]] = (),
    predicates: Sequence[str] = (),
) -> Formula:
    """Replace each disequality ``x != y`` between bound variables by a predicate or constant separating them.

    ``x != y`` becomes ``OR over R of (R(x) & !R(y)) | (!R(x) & R(y))`` or, for a constant
    ``c``, ``(x = c & y != c) | (x != c & y = c)``. Equalities between bound variables are
    rejected.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.monadic import abstract_disequalities
    >>> from fo_games.logic import predicates
    >>> sorted(predicates(abstract_disequalities(parse_formula("exists x, y. x != y"), predicates=["P"])))
    ['P']
    >>> abstract_disequalities(parse_formula("forall x. exists y. x = y"))
    Traceback (most recent call last):
    ...
    fo_games.exceptions.BoundEqualityError: Fragment condition violated: no equalities between bound variables (x = y)
    """
    terms = _terms(constants)

    def positive(left: Term, right: Term) -> Formula:
        raise BoundEqualityError("no equalities between bound variables", f"{left.to_text()} = {right.to_text()}")

    def negative(left: Term, right: Term) -> Formula:
        split_by_predicate = [
            disj(conj(atom(pred, left), neg(atom(pred, right))), conj(neg(atom(pred, left)), atom(pred, right)))
            for pred in predicates
        ]
        split_by_constant = [
            disj(conj(eq(left, term), neq(right, term)), conj(neq(left, term), eq(right, term))) for term in terms
        ]
        return disj(FALSE, *split_by_predicate, *split_by_constant)

    return simplify(_rewrite(to_nnf(formula), frozenset(), positive, negative))


def multiplicity_threshold(formula: Formula, constants: Iterable[Union[str, Term]] = ()) -> int:
    """``|C| + prefix length + 1``: above this multiplicity the abstractions are equivalences.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.monadic import multiplicity_threshold
    >>> multiplicity_threshold(parse_formula("forall x, y. P(x) | x = y"), ["c"])
    4
    """
    prefix = 0
    for sub in subformulas(formula):
        if isinstance(sub, (Forall, Exists)):
            prefix += len(sub.vars)
        elif isinstance(sub, CountExists):
            prefix += sub.threshold
    return len(_terms(constants)) + prefix + 1


def multiplicity(model: GroundModel, predicates: Iterable[str]) -> int:
    """Smallest size of a nonempty class of elements satisfying the same unary predicates.

    Examples
    --------

    >>> from fo_games.logic import GroundModel
    >>> from fo_games.monadic import multiplicity
    >>> multiplicity(GroundModel(size=3, relations={"P": [(0,), (1,)]}), ["P"])
    1
    """
    names = list(predicates)
    classes = Counter(tuple(model.holds(pred, (element,)) for pred in names) for element in range(model.size))
    return min(classes.values())

# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

import itertools
from typing import AbstractSet, Dict, Iterator, Mapping, Optional, Tuple

from fo_games.logic.formula import (
    And,
    Atom,
    Bottom,
    Const,
    CountExists,
    Eq,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    SOExists,
    SOForall,
    Term,
    Top,
)

Relations = Mapping[str, AbstractSet[Tuple[int, ...]]]


def all_relations(size: int, arity: int) -> Iterator[frozenset]:
    """Every relation of the given arity over ``0..size-1``."""
    rows = list(itertools.product(range(size), repeat=arity))
    for mask in range(2 ** len(rows)):
        yield frozenset(row for bit, row in enumerate(rows) if mask >> bit & 1)


def _value(term: Term, valuation: Mapping[str, int], env: Mapping[str, int]) -> int:
    if isinstance(term, Const):
        return valuation[term.name]
    if term.name in env:
        return env[term.name]
    return valuation[term.name]


def evaluate(  # noqa: WPS211, WPS231
    formula: Formula,
    size: int,
    valuation: Mapping[str, int],
    relations: Relations,
    env: Optional[Mapping[str, int]] = None,
) -> bool:
    """Truth of ``formula`` in the structure over ``0..size-1``.

    Free variables are looked up in ``env`` first, then in ``valuation``;
    missing relations are empty.

    Examples
    --------

    >>> from fo_games.logic import parse_formula, evaluate
    >>> phi = parse_formula("forall x. P(x) -> x = c", constants=["c"])
    >>> evaluate(phi, 2, {"c": 1}, {"P": {(1,)}})
    True
    >>> evaluate(phi, 2, {"c": 0}, {"P": {(1,)}})
    False
    """
    env = env or {}
    if isinstance(formula, Top):
        return True
    if isinstance(formula, Bottom):
        return False
    if isinstance(formula, Atom):
        row = tuple(_value(arg, valuation, env) for arg in formula.args)
        return row in relations.get(formula.pred, ())
    if isinstance(formula, Eq):
        return _value(formula.left, valuation, env) == _value(formula.right, valuation, env)
    if isinstance(formula, Not):
        return not evaluate(formula.body, size, valuation, relations, env)
    if isinstance(formula, And):
        return all(evaluate(item, size, valuation, relations, env) for item in formula.items)
    if isinstance(formula, Or):
        return any(evaluate(item, size, valuation, relations, env) for item in formula.items)
    if isinstance(formula, (Forall, Exists)):
        check = all if isinstance(formula, Forall) else any
        return check(
            evaluate(formula.body, size, valuation, relations, {**env, **dict(zip(formula.vars, values))})
            for values in itertools.product(range(size), repeat=len(formula.vars))
        )
    if isinstance(formula, CountExists):
        count = sum(
            1 for value in range(size) if evaluate(formula.body, size, valuation, relations, {**env, formula.var: value})
        )
        return count >= formula.threshold
    if isinstance(formula, (SOForall, SOExists)):
        check = all if isinstance(formula, SOForall) else any
        outer: Dict[str, AbstractSet[Tuple[int, ...]]] = dict(relations)
        return check(
            evaluate(formula.body, size, valuation, {**outer, formula.pred: relation}, env)
            for relation in all_relations(size, formula.arity)
        )
    raise TypeError(f"Unknown formula node {formula!r}")

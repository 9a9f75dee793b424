# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Second-order quantifier elimination for monadic formulas without bound (dis)equalities.

Such formulas cannot count: their truth depends on the nullary atoms, on how constants are
identified and typed, and on which unary types have elements besides the constants. Each of
these finite abstract structures is evaluated on a small representative model, and the result
is described by the structures that satisfy the quantified formula.
"""

from __future__ import annotations

import itertools
import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from fo_games.config import SolverConfig, current_config
from fo_games.exceptions import EnumerationBudgetError, FragmentError
from fo_games.logic import (
    And,
    Const,
    CountExists,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    SOExists,
    SOForall,
    Var,
    atom,
    conj,
    constants,
    disj,
    eq,
    evaluate,
    exists,
    fresh_name,
    free_vars,
    has_so_quantifier,
    neg,
    neq,
    predicates,
    simplify,
)
from fo_games.monadic.cqnf import check_monadic

log = logging.getLogger(__name__)

UnaryType = Tuple[bool, ...]


def _partitions(items: Sequence[str]) -> Iterator[List[List[str]]]:
    """Set partitions of ``items``, blocks in order of their first element."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _partitions(rest):
        yield [[first], *partition]
        for index in range(len(partition)):
            yield [*partition[:index], [first, *partition[index]], *partition[index + 1 :]]


def _so_prefix_cost(formula: Formula, size: int) -> int:
    cost = 1
    node = formula
    while isinstance(node, (SOForall, SOExists)):
        cost *= 2 ** (size**node.arity)
        node = node.body
    return cost


class _Structures:
    """Abstract structures over the symbols of one closed formula."""

    def __init__(self, formula: Formula, copies: int):
        arities = predicates(formula)
        self.nullary = sorted(name for name, arity in arities.items() if arity == 0)
        self.unary = sorted(name for name, arity in arities.items() if arity == 1)
        self.constants = sorted(constants(formula))
        self.types: List[UnaryType] = list(itertools.product((True, False), repeat=len(self.unary)))
        self.copies = copies
        self.var = fresh_name("x")

    def estimate(self, formula: Formula) -> int:
        classes = max(len(self.constants), 1)
        named = (len(self.types) * classes) ** len(self.constants)
        structures = 2 ** len(self.nullary) * named * 2 ** len(self.types)
        largest = len(self.constants) + self.copies * len(self.types)
        return structures * _so_prefix_cost(formula, largest)

    def __iter__(self):
        for truth in itertools.product((True, False), repeat=len(self.nullary)):
            for blocks in _partitions(self.constants):
                for block_types in itertools.product(self.types, repeat=len(blocks)):
                    for present in itertools.product((True, False), repeat=len(self.types)):
                        occupied = [kind for kind, flag in zip(self.types, present) if flag]
                        if not blocks and not occupied:
                            continue
                        yield truth, blocks, block_types, occupied

    def model(self, truth, blocks, block_types, occupied) -> Tuple[int, Dict[str, int], Dict[str, set]]:
        valuation = {name: index for index, block in enumerate(blocks) for name in block}
        element_types = list(block_types)
        for kind in occupied:
            element_types.extend([kind] * self.copies)
        relations: Dict[str, set] = {name: ({()} if flag else set()) for name, flag in zip(self.nullary, truth)}
        for position, name in enumerate(self.unary):
            relations[name] = {(element,) for element, kind in enumerate(element_types) if kind[position]}
        return len(element_types), valuation, relations

    def _type_of(self, term, kind: UnaryType) -> Formula:
        return conj(*(atom(name, term) if flag else neg(atom(name, term)) for name, flag in zip(self.unary, kind)))

    def describe(self, truth, blocks, block_types, occupied) -> Formula:
        parts = [atom(name) if flag else neg(atom(name)) for name, flag in zip(self.nullary, truth)]
        heads = [Const(block[0]) for block in blocks]
        for head, block, kind in zip(heads, blocks, block_types):
            parts.append(self._type_of(head, kind))
            parts.extend(eq(head, Const(name)) for name in block[1:])
        parts.extend(neq(left, right) for left, right in itertools.combinations(heads, 2))
        unnamed = Var(self.var)
        for kind in self.types:
            witness = exists(
                [self.var],
                conj(self._type_of(unnamed, kind), *(neq(unnamed, Const(name)) for name in self.constants)),
            )
            parts.append(witness if kind in occupied else neg(witness))
        return conj(*parts)


def _eliminate_closed(formula: Formula, copies: int, config: SolverConfig) -> Formula:
    check_monadic(formula)
    if free_vars(formula):
        raise FragmentError(
            "second-order quantifier under a first-order quantifier",
            f"free variables {sorted(free_vars(formula))}",
        )
    structures = _Structures(formula, copies)
    estimate = structures.estimate(formula)
    if estimate > config.ground_budget:
        raise EnumerationBudgetError("Monadic elimination", estimate, config.ground_budget)

    satisfied: List[Formula] = []
    failed: List[Formula] = []
    for structure in structures:
        size, valuation, relations = structures.model(*structure)
        target = satisfied if evaluate(formula, size, valuation, relations) else failed
        target.append(structures.describe(*structure))
    log.debug("|MonadicElimination| %d of %d structures satisfy", len(satisfied), len(satisfied) + len(failed))
    if len(satisfied) <= len(failed):
        return simplify(disj(*satisfied))
    return simplify(neg(disj(*failed)))


def eliminate_monadic(formula: Formula, copies: int = 2, config: Optional[SolverConfig] = None) -> Formula:
    """First-order formula equivalent to ``formula`` on its abstract structures.

    Every closed second-order subformula is evaluated on representative models with
    ``copies`` elements of each occupied type. With two copies a universally quantified
    unary predicate can hold on all, none or some elements of a type; with one copy an
    existentially quantified one picks whole types, which is the weakest strengthening
    without disequalities between bound variables. The input must not contain equalities
    or disequalities between bound variables.

    Examples
    --------

    >>> from fo_games.logic import equivalent_bounded, parse_formula
    >>> from fo_games.monadic import eliminate_monadic
    >>> result = eliminate_monadic(parse_formula("forall A/1. forall x. !A(x) | P(x)"))
    >>> equivalent_bounded(result, parse_formula("forall x. P(x)"), 3)
    True
    >>> eliminate_monadic(parse_formula("exists B/0. B & Q")).to_text()
    'Q'
    """
    config = current_config(config)

    def walk(node: Formula) -> Formula:  # noqa: WPS212
        if not has_so_quantifier(node):
            return node
        if isinstance(node, (SOForall, SOExists)):
            return _eliminate_closed(node, copies, config)
        if isinstance(node, Not):
            return neg(walk(node.body))
        if isinstance(node, And):
            return conj(*(walk(item) for item in node.items))
        if isinstance(node, Or):
            return disj(*(walk(item) for item in node.items))
        if isinstance(node, (Forall, Exists)):
            return type(node)(node.vars, walk(node.body))
        if isinstance(node, CountExists):
            return CountExists(node.threshold, node.var, walk(node.body))
        return node

    return walk(formula)

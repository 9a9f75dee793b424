# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

import logging
from typing import Collection, Dict, FrozenSet, Iterable, List, Sequence, Tuple

from fo_games.logic.formula import (
    FALSE,
    TRUE,
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
    Var,
    conj,
    constants,
    count_exists,
    disj,
    exists,
    forall,
    has_so_quantifier,
    neg,
    predicates,
    subformulas,
)
from fo_games.logic.transform import (
    Clause,
    free_vars,
    is_universal,
    sort_clause,
    substitute_terms,
    to_prenex_cnf,
)

log = logging.getLogger(__name__)

MAX_ROUNDS = 20


def _items(formula: Formula, kind: type) -> FrozenSet[Formula]:
    if isinstance(formula, kind):
        return frozenset(formula.items)  # type: ignore[attr-defined]
    return frozenset([formula])


def _has_complement(items: Sequence[Formula]) -> bool:
    present = set(items)
    return any(isinstance(item, Not) and item.body in present for item in items)


def _absorb(items: List[Formula], inner: type) -> List[Formula]:
    """Drop items whose ``inner`` item set contains the item set of another one."""
    sets = [_items(item, inner) for item in items]
    kept = []
    for index, item in enumerate(items):
        absorbed = any(
            other < sets[index] or (other == sets[index] and other_index < index)
            for other_index, other in enumerate(sets)
            if other_index != index
        )
        if not absorbed:
            kept.append(item)
    return kept


def _sorted(items: Sequence[Formula]) -> List[Formula]:
    return sorted(items, key=lambda item: item.sort_key())


def _simplify_and(items: Sequence[Formula]) -> Formula:
    combined = conj(*items)
    if not isinstance(combined, And):
        return combined
    flat = list(combined.items)
    if _has_complement(flat):
        return FALSE
    return conj(*_sorted(_absorb(flat, Or)))


def _simplify_or(items: Sequence[Formula]) -> Formula:
    combined = disj(*items)
    if not isinstance(combined, Or):
        return combined
    flat = list(combined.items)
    if _has_complement(flat):
        return TRUE
    return disj(*_sorted(_absorb(flat, And)))


def _one_point(var: str, items: Sequence[Formula], positive: bool) -> Tuple[Term, int] | None:
    """Find ``var = t`` (or ``var != t`` when not ``positive``) among ``items``."""
    for index, item in enumerate(items):
        literal = item if positive else (item.body if isinstance(item, Not) else None)
        if not isinstance(literal, Eq):
            continue
        if literal.left == Var(var) and literal.right != Var(var):
            return literal.right, index
        if literal.right == Var(var) and literal.left != Var(var):
            return literal.left, index
    return None


def _components(variables: Sequence[str], items: Sequence[Formula]) -> List[Tuple[List[str], List[Formula]]]:
    """Group items connected through shared quantified variables."""
    groups: List[Tuple[set[str], List[Formula]]] = []
    for item in items:
        mentioned = set(free_vars(item)) & set(variables)
        merged_vars = set(mentioned)
        merged_items = [item]
        rest = []
        for group_vars, group_items in groups:
            if group_vars & mentioned:
                merged_vars |= group_vars
                merged_items = group_items + merged_items
            else:
                rest.append((group_vars, group_items))
        groups = rest + [(merged_vars, merged_items)]
    return [([var for var in variables if var in group_vars], group_items) for group_vars, group_items in groups]


def _simplify_quantifier(node: Formula) -> Formula:  # noqa: WPS231
    universal = isinstance(node, Forall)
    body = node.body  # type: ignore[attr-defined]
    variables = [var for var in node.vars if var in free_vars(body)]  # type: ignore[attr-defined]
    if not variables:
        return body

    junction = Or if universal else And
    items = list(body.items) if isinstance(body, junction) else [body]
    for var in variables:
        found = _one_point(var, items, positive=not universal)
        if found is None:
            continue
        term, index = found
        if len(items) == 1:
            return FALSE if universal else TRUE
        rest = items[:index] + items[index + 1 :]
        replaced = [substitute_terms(item, {var: term}) for item in rest]
        combined = disj(*replaced) if universal else conj(*replaced)
        remaining = [other for other in variables if other != var]
        return forall(remaining, combined) if universal else exists(remaining, combined)

    quantify = forall if universal else exists
    if isinstance(body, And if universal else Or):
        parts = [quantify(variables, item) for item in body.items]  # type: ignore[attr-defined]
        return conj(*parts) if universal else disj(*parts)

    groups = _components(variables, items)
    if len(groups) == 1:
        return quantify(variables, body)
    parts = [quantify(group_vars, disj(*group) if universal else conj(*group)) for group_vars, group in groups]
    return disj(*parts) if universal else conj(*parts)


def _step(formula: Formula) -> Formula:  # noqa: WPS212, WPS231
    if isinstance(formula, (Top, Bottom, Atom)):
        return formula
    if isinstance(formula, Eq):
        return TRUE if formula.left == formula.right else formula
    if isinstance(formula, Not):
        return neg(_step(formula.body))
    if isinstance(formula, And):
        return _simplify_and([_step(item) for item in formula.items])
    if isinstance(formula, Or):
        return _simplify_or([_step(item) for item in formula.items])
    if isinstance(formula, (Forall, Exists)):
        return _simplify_quantifier(type(formula)(formula.vars, _step(formula.body)))
    if isinstance(formula, CountExists):
        body = _step(formula.body)
        if formula.var not in free_vars(body) and formula.threshold == 1:
            return body
        return count_exists(formula.threshold, formula.var, body)
    if isinstance(formula, (SOForall, SOExists)):
        body = _step(formula.body)
        if formula.pred not in predicates(body):
            return body
        return type(formula)(formula.pred, formula.arity, body)
    return formula


def simplify(formula: Formula) -> Formula:
    """Equivalent, usually smaller formula; rewriting runs until nothing changes.

    Examples
    --------

    >>> from fo_games.logic import parse_formula, simplify
    >>> simplify(parse_formula("P(c) | true", constants=["c"])).to_text()
    'true'
    >>> simplify(parse_formula("forall x. c = c", constants=["c"])).to_text()
    'true'
    >>> simplify(parse_formula("(A | B) & (A | B | C)")).to_text()
    'A | B'
    """
    current = formula
    for _ in range(MAX_ROUNDS):
        result = _step(current)
        if result == current:
            return result
        current = result
    log.debug("|Simplify| No fixpoint after %d rounds", MAX_ROUNDS)
    return current


def _canonical_names(formula: Formula) -> Formula:
    counter = iter(range(10**9))

    def walk(node: Formula, names: Dict[str, Term]) -> Formula:  # noqa: WPS231
        if isinstance(node, (Forall, Exists)):
            renamed = {var: Var(f"_{next(counter)}") for var in node.vars}
            body = walk(node.body, {**names, **renamed})
            return type(node)(tuple(term.name for term in renamed.values()), body)  # type: ignore[union-attr]
        if isinstance(node, CountExists):
            fresh = Var(f"_{next(counter)}")
            return CountExists(node.threshold, fresh.name, walk(node.body, {**names, node.var: fresh}))
        if isinstance(node, Atom):
            return Atom(node.pred, tuple(names.get(arg.name, arg) if isinstance(arg, Var) else arg for arg in node.args))
        if isinstance(node, Eq):
            left = names.get(node.left.name, node.left) if isinstance(node.left, Var) else node.left
            right = names.get(node.right.name, node.right) if isinstance(node.right, Var) else node.right
            return Eq(left, right)
        if isinstance(node, Not):
            return Not(walk(node.body, names))
        if isinstance(node, (And, Or)):
            items = _sorted([walk(item, names) for item in node.items])
            return type(node)(tuple(items))
        if isinstance(node, (SOForall, SOExists)):
            return type(node)(node.pred, node.arity, walk(node.body, names))
        return node

    return walk(formula, {})


def canonical_form(formula: Formula) -> Formula:
    """Simplified formula with positionally named binders and sorted junctions.

    Two formulas with equal canonical forms are equivalent; the converse does not hold.
    """
    current = simplify(formula)
    for _ in range(3):
        renamed = _canonical_names(current)
        if renamed == current:
            break
        current = renamed
    return current


def _clause_terms(clause: Iterable[Formula]) -> List[Term]:
    names: set[str] = set()
    consts: set[str] = set()
    for literal in clause:
        names |= free_vars(literal)
        consts |= constants(literal)
    terms: List[Term] = [Const(name) for name in consts]
    terms.extend(Var(name) for name in names)
    return sorted(terms, key=lambda term: term.sort_key())


def condense_clause(clause: Iterable[Formula], variables: Collection[str]) -> Clause:
    """Smallest instance of a universally closed clause that still implies it.

    A bound variable is replaced by another term of the clause whenever the instance is
    a proper subset of the clause, so the result is equivalent to the input.

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.logic.simplify import condense_clause
    >>> clause = parse_formula("!Conf(x, p) | !Assign(x, p) | !Assign(y, p)").items
    >>> [literal.to_text() for literal in condense_clause(clause, ["x", "y", "p"])]
    ['!Assign(x, p)', '!Conf(x, p)']
    """
    current = frozenset(clause)
    changed = True
    while changed:
        changed = False
        mentioned = set().union(*(free_vars(literal) for literal in current)) if current else set()
        for var in sorted(set(variables) & mentioned):
            for term in _clause_terms(current):
                if term == Var(var):
                    continue
                image = frozenset(substitute_terms(literal, {var: term}) for literal in current)
                if image < current:
                    current = image
                    changed = True
                    break
            if changed:
                break
    return sort_clause(current)


def _occurrence_order(literals: Sequence[Formula], variables: Collection[str]) -> List[str]:
    order: List[str] = []
    for literal in literals:
        for sub in subformulas(literal):
            terms = sub.args if isinstance(sub, Atom) else (sub.left, sub.right) if isinstance(sub, Eq) else ()
            for term in terms:
                if isinstance(term, Var) and term.name in variables and term.name not in order:
                    order.append(term.name)
    return order


def universal_clauses(formula: Formula, budget: int = 10000) -> List[Formula]:
    """Condensed, canonically named clauses of a universal formula, each universally closed.

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.logic.simplify import universal_clauses
    >>> phi = parse_formula("forall x, y, p. !Conf(x, p) | !Assign(x, p) | !Assign(y, p)")
    >>> [clause.to_text() for clause in universal_clauses(phi)]
    ['forall v1, v2. !Assign(v1, v2) | !Conf(v1, v2)']
    """
    cnf = to_prenex_cnf(formula, budget=budget, prefer="forall")
    if not cnf.is_universal:
        raise ValueError("Clause splitting needs a universal formula")
    variables = set(cnf.variables)
    result: List[Formula] = []
    for clause in cnf.clauses:
        literals = condense_clause(clause, variables)
        bound = _occurrence_order(literals, variables)
        closed = canonical_form(forall(bound, disj(*literals)))
        if closed not in result:
            result.append(closed)
    return result


def condense(formula: Formula, budget: int = 10000) -> Formula:
    """Conjunction of :obj:`universal_clauses`; non-universal formulas are returned unchanged."""
    if not is_universal(formula) or has_so_quantifier(formula):
        return formula
    return conj(*universal_clauses(formula, budget))

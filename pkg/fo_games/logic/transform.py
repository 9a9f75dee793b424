# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Equivalence-preserving rewrites and predicate substitution."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import (
    Any,
    Collection,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

from fo_games.exceptions import CNFBudgetExceededError, MissingSubstitutionError
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
    disj,
    exists,
    forall,
    fresh_name,
    is_quantifier_free,
    neg,
)

log = logging.getLogger(__name__)

Clause = Tuple[Formula, ...]
Prefix = Tuple[Tuple[str, str], ...]


@dataclass(frozen=True)
class Lambda:
    """Formal parameters and a body, the shape shared by substitution entries and strategies."""

    params: Tuple[str, ...]
    body: Formula


def term_vars(terms: Iterable[Term]) -> set[str]:
    return {term.name for term in terms if isinstance(term, Var)}


def free_vars(formula: Formula) -> FrozenSet[str]:
    """Variables occurring unbound; constants are never included.

    >>> from fo_games.logic import parse_formula, free_vars
    >>> sorted(free_vars(parse_formula("forall x. P(x, y)")))
    ['y']
    """
    cached = formula.__dict__.get("_free")
    if cached is not None:
        return cached

    if isinstance(formula, Atom):
        result = frozenset(term_vars(formula.args))
    elif isinstance(formula, Eq):
        result = frozenset(term_vars((formula.left, formula.right)))
    elif isinstance(formula, (Forall, Exists)):
        result = free_vars(formula.body) - set(formula.vars)
    elif isinstance(formula, CountExists):
        result = free_vars(formula.body) - {formula.var}
    else:
        result = frozenset().union(*(free_vars(child) for child in formula.children()))

    object.__setattr__(formula, "_free", result)
    return result


def _substitute_term(term: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    return term


def substitute_terms(formula: Formula, mapping: Mapping[str, Term]) -> Formula:  # noqa: WPS231
    """Replace free variables by terms, renaming binders that would capture."""
    mapping = {name: term for name, term in mapping.items() if name in free_vars(formula)}
    if not mapping:
        return formula

    if isinstance(formula, Atom):
        return Atom(formula.pred, tuple(_substitute_term(arg, mapping) for arg in formula.args))
    if isinstance(formula, Eq):
        return Eq(_substitute_term(formula.left, mapping), _substitute_term(formula.right, mapping))
    if isinstance(formula, Not):
        return Not(substitute_terms(formula.body, mapping))
    if isinstance(formula, And):
        return And(tuple(substitute_terms(item, mapping) for item in formula.items))
    if isinstance(formula, Or):
        return Or(tuple(substitute_terms(item, mapping) for item in formula.items))
    if isinstance(formula, (Forall, Exists, CountExists)):
        bound = formula.vars if isinstance(formula, (Forall, Exists)) else (formula.var,)
        inner = {name: term for name, term in mapping.items() if name not in bound}
        incoming = term_vars(inner.values())
        renamed: Dict[str, Term] = {}
        new_bound: List[str] = []
        for var in bound:
            if var in incoming:
                fresh = fresh_name(var)
                renamed[var] = Var(fresh)
                new_bound.append(fresh)
            else:
                new_bound.append(var)
        body = substitute_terms(formula.body, {**inner, **renamed})
        if isinstance(formula, CountExists):
            return CountExists(formula.threshold, new_bound[0], body)
        return type(formula)(tuple(new_bound), body)
    if isinstance(formula, (SOForall, SOExists)):
        return type(formula)(formula.pred, formula.arity, substitute_terms(formula.body, mapping))
    return formula


def rename_apart(formula: Formula) -> Formula:
    """Give every binder a fresh variable name."""
    if isinstance(formula, (Forall, Exists)):
        fresh = {var: Var(fresh_name(var)) for var in formula.vars}
        body = rename_apart(substitute_terms(formula.body, fresh))
        return type(formula)(tuple(term.name for term in fresh.values()), body)
    if isinstance(formula, CountExists):
        fresh_var = Var(fresh_name(formula.var))
        body = rename_apart(substitute_terms(formula.body, {formula.var: fresh_var}))
        return CountExists(formula.threshold, fresh_var.name, body)
    if isinstance(formula, Not):
        return Not(rename_apart(formula.body))
    if isinstance(formula, And):
        return And(tuple(rename_apart(item) for item in formula.items))
    if isinstance(formula, Or):
        return Or(tuple(rename_apart(item) for item in formula.items))
    if isinstance(formula, (SOForall, SOExists)):
        return type(formula)(formula.pred, formula.arity, rename_apart(formula.body))
    return formula


def instantiate(params: Sequence[str], body: Formula, args: Sequence[Term]) -> Formula:
    """Body of a definition with its formal parameters replaced by ``args``."""
    if len(params) != len(args):
        raise ValueError(f"Expected {len(params)} arguments, got {len(args)}")
    return substitute_terms(rename_apart(body), dict(zip(params, args)))


def apply_substitution(  # noqa: WPS231
    formula: Formula,
    theta: Mapping[str, Any],
    state_preds: Optional[Collection[str]] = None,
) -> Formula:
    """Replace each atom ``R(t)`` by the body of ``theta[R]`` instantiated at ``t``.

    Atoms of predicates without an entry are kept, unless the predicate is listed in
    ``state_preds``, then :obj:`MissingSubstitutionError` is raised.
    Atoms bound by a second-order quantifier are never replaced.
    Binders that would capture a free variable of a body, other than its parameters, are renamed.

    Examples
    --------

    >>> from fo_games.game import Definition
    >>> from fo_games.logic import parse_formula, apply_substitution
    >>> theta = {"Review": Definition.of("y1, y2, y3", "Assign(y1, y2) & A3(y1, y2, y3)")}
    >>> phi = parse_formula("forall x, p, r. !(Conf(x, p) & Review(x, p, r))")
    >>> apply_substitution(phi, theta).to_text()
    'forall x, p, r. !(Conf(x, p) & Assign(x, p) & A3(x, p, r))'
    """

    loose: set[str] = set()
    for definition in theta.values():
        loose.update(free_vars(definition.body) - set(definition.params))

    def rebind(bound: Sequence[str], body: Formula) -> Tuple[Tuple[str, ...], Formula]:
        renamed = {var: Var(fresh_name(var)) for var in bound if var in loose}
        if not renamed:
            return tuple(bound), body
        return tuple(renamed[var].name if var in renamed else var for var in bound), substitute_terms(body, renamed)

    def walk(node: Formula, shadowed: FrozenSet[str]) -> Formula:  # noqa: WPS231
        if isinstance(node, Atom):
            if node.pred in shadowed:
                return node
            definition = theta.get(node.pred)
            if definition is None:
                if state_preds is not None and node.pred in state_preds:
                    raise MissingSubstitutionError(node.pred)
                return node
            return instantiate(definition.params, definition.body, node.args)
        if isinstance(node, Not):
            return Not(walk(node.body, shadowed))
        if isinstance(node, And):
            return conj(*(walk(item, shadowed) for item in node.items))
        if isinstance(node, Or):
            return disj(*(walk(item, shadowed) for item in node.items))
        if isinstance(node, (Forall, Exists)):
            bound, body = rebind(node.vars, node.body)
            return type(node)(bound, walk(body, shadowed))
        if isinstance(node, CountExists):
            (var,), body = rebind((node.var,), node.body)
            return CountExists(node.threshold, var, walk(body, shadowed))
        if isinstance(node, (SOForall, SOExists)):
            return type(node)(node.pred, node.arity, walk(node.body, shadowed | {node.pred}))
        return node

    return walk(formula, frozenset())


def substitute_predicate(formula: Formula, pred: str, params: Sequence[str], body: Formula) -> Formula:
    """``formula[body/pred]``, the form used to plug strategies and choices in."""
    return apply_substitution(formula, {pred: Lambda(tuple(params), body)})


def to_nnf(formula: Formula) -> Formula:  # noqa: WPS212, WPS231
    """Push negations down to atoms, equalities and counting formulas.

    >>> from fo_games.logic import parse_formula, to_nnf
    >>> to_nnf(parse_formula("!(forall x. P(x))")).to_text()
    'exists x. !P(x)'
    """
    if isinstance(formula, Not):
        body = formula.body
        if isinstance(body, Not):
            return to_nnf(body.body)
        if isinstance(body, Top):
            return FALSE
        if isinstance(body, Bottom):
            return TRUE
        if isinstance(body, And):
            return disj(*(to_nnf(Not(item)) for item in body.items))
        if isinstance(body, Or):
            return conj(*(to_nnf(Not(item)) for item in body.items))
        if isinstance(body, Forall):
            return exists(body.vars, to_nnf(Not(body.body)))
        if isinstance(body, Exists):
            return forall(body.vars, to_nnf(Not(body.body)))
        if isinstance(body, SOForall):
            return SOExists(body.pred, body.arity, to_nnf(Not(body.body)))
        if isinstance(body, SOExists):
            return SOForall(body.pred, body.arity, to_nnf(Not(body.body)))
        if isinstance(body, CountExists):
            return Not(CountExists(body.threshold, body.var, to_nnf(body.body)))
        return formula
    if isinstance(formula, And):
        return conj(*(to_nnf(item) for item in formula.items))
    if isinstance(formula, Or):
        return disj(*(to_nnf(item) for item in formula.items))
    if isinstance(formula, Forall):
        return forall(formula.vars, to_nnf(formula.body))
    if isinstance(formula, Exists):
        return exists(formula.vars, to_nnf(formula.body))
    if isinstance(formula, CountExists):
        return CountExists(formula.threshold, formula.var, to_nnf(formula.body))
    if isinstance(formula, (SOForall, SOExists)):
        return type(formula)(formula.pred, formula.arity, to_nnf(formula.body))
    return formula


def expand_counting(formula: Formula) -> Formula:
    """Replace ``exists>=n x. e`` by ``n`` pairwise distinct witnesses."""
    if isinstance(formula, CountExists):
        body = expand_counting(formula.body)
        if formula.threshold == 1:
            return exists((formula.var,), body)
        witnesses = [fresh_name(formula.var) for _ in range(formula.threshold)]
        instances = [substitute_terms(body, {formula.var: Var(name)}) for name in witnesses]
        distinct = [neg(Eq(Var(left), Var(right))) for left, right in combinations(witnesses, 2)]
        return exists(witnesses, conj(*instances, *distinct))
    if isinstance(formula, Not):
        return neg(expand_counting(formula.body))
    if isinstance(formula, And):
        return conj(*(expand_counting(item) for item in formula.items))
    if isinstance(formula, Or):
        return disj(*(expand_counting(item) for item in formula.items))
    if isinstance(formula, (Forall, Exists)):
        return type(formula)(formula.vars, expand_counting(formula.body))
    if isinstance(formula, (SOForall, SOExists)):
        return type(formula)(formula.pred, formula.arity, expand_counting(formula.body))
    return formula


def _merge_prefixes(prefixes: List[Prefix], prefer: str) -> Prefix:
    queues = [list(prefix) for prefix in prefixes if prefix]
    merged: List[Tuple[str, str]] = []
    kind = prefer
    while any(queues):
        progress = False
        for queue in queues:
            while queue and queue[0][0] == kind:
                merged.append(queue.pop(0))
                progress = True
        if not progress:
            kind = "forall" if kind == "exists" else "exists"
    return tuple(merged)


def _prenex(formula: Formula, prefer: str) -> Tuple[Prefix, Formula]:
    if isinstance(formula, (Forall, Exists)):
        kind = "forall" if isinstance(formula, Forall) else "exists"
        inner_prefix, matrix = _prenex(formula.body, prefer)
        return tuple((kind, var) for var in formula.vars) + inner_prefix, matrix
    if isinstance(formula, (And, Or)):
        parts = [_prenex(item, prefer) for item in formula.items]
        prefix = _merge_prefixes([part[0] for part in parts], prefer)
        builder = conj if isinstance(formula, And) else disj
        return prefix, builder(*(part[1] for part in parts))
    if isinstance(formula, (SOForall, SOExists)):
        raise ValueError("Prenex form is defined for first-order formulas only")
    return (), formula


def to_prenex(formula: Formula, prefer: str = "exists") -> Tuple[Prefix, Formula]:
    """Prenex form of the NNF of ``formula`` with bound variables renamed apart.

    Quantifier blocks are merged greedily starting with ``prefer``, which keeps the number
    of alternations minimal.
    """
    return _prenex(rename_apart(to_nnf(formula)), prefer)


def complement(literal: Formula) -> Formula:
    return literal.body if isinstance(literal, Not) else Not(literal)


def _literal_truth(literal: Formula) -> Optional[bool]:
    body = literal.body if isinstance(literal, Not) else literal
    if isinstance(body, Eq) and body.left == body.right:
        return not isinstance(literal, Not)
    return None


def _cnf(formula: Formula, budget: int) -> set[FrozenSet[Formula]]:  # noqa: WPS231
    if isinstance(formula, Top):
        return set()
    if isinstance(formula, Bottom):
        return {frozenset()}
    if isinstance(formula, And):
        clauses: set[FrozenSet[Formula]] = set()
        for item in formula.items:
            clauses |= _cnf(item, budget)
            if len(clauses) > budget:
                raise CNFBudgetExceededError(budget)
        return clauses
    if isinstance(formula, Or):
        product: set[FrozenSet[Formula]] = {frozenset()}
        for item in formula.items:
            item_clauses = _cnf(item, budget)
            product = {
                left | right
                for left in product
                for right in item_clauses
                if not _is_tautology(left | right)
            }
            if len(product) > budget:
                raise CNFBudgetExceededError(budget)
            product = reduce_clauses(product)
        return product

    truth = _literal_truth(formula)
    if truth is True:
        return set()
    if truth is False:
        return {frozenset()}
    return {frozenset([formula])}


def _is_tautology(clause: FrozenSet[Formula]) -> bool:
    for literal in clause:
        if _literal_truth(literal) is True:
            return True
        if isinstance(literal, Not) and literal.body in clause:
            return True
    return False


def reduce_clauses(clauses: Iterable[FrozenSet[Formula]], limit: int = 2000) -> set[FrozenSet[Formula]]:
    """Drop clauses that are subsumed by a strictly smaller one."""
    clauses = set(clauses)
    if len(clauses) > limit:
        return clauses
    ordered = sorted(clauses, key=len)
    kept: List[FrozenSet[Formula]] = []
    for clause in ordered:
        if not any(other <= clause for other in kept):
            kept.append(clause)
    return set(kept)


def literal_key(literal: Formula) -> tuple:
    body = literal.body if isinstance(literal, Not) else literal
    return (body.sort_key(), isinstance(literal, Not))


def sort_clause(clause: Iterable[Formula]) -> Clause:
    return tuple(sorted(clause, key=literal_key))


def cnf_clauses(matrix: Formula, budget: int = 10000) -> Tuple[Clause, ...]:
    """Distributive CNF of a quantifier-free NNF matrix as sorted clause tuples.

    >>> from fo_games.logic import parse_formula, cnf_clauses
    >>> [[lit.to_text() for lit in clause] for clause in cnf_clauses(parse_formula("A | B & C"))]
    [['A', 'B'], ['A', 'C']]
    """
    clauses = reduce_clauses(
        (clause for clause in _cnf(to_nnf(matrix), budget) if not _is_tautology(clause)),
        limit=budget,
    )
    return tuple(sorted((sort_clause(clause) for clause in clauses), key=lambda c: [literal_key(lit) for lit in c]))


@dataclass(frozen=True)
class PrenexCNF:
    prefix: Prefix
    clauses: Tuple[Clause, ...]

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(var for _, var in self.prefix)

    @property
    def is_universal(self) -> bool:
        return all(kind == "forall" for kind, _ in self.prefix)

    def matrix(self) -> Formula:
        return conj(*(disj(*clause) for clause in self.clauses))

    def to_formula(self) -> Formula:
        result = self.matrix()
        for kind, var in reversed(self.prefix):
            result = forall((var,), result) if kind == "forall" else exists((var,), result)
        return result


def to_prenex_cnf(formula: Formula, budget: int = 10000, prefer: str = "exists") -> PrenexCNF:
    """Prenex form with a distributive CNF matrix.

    Raises :obj:`CNFBudgetExceededError` when the matrix exceeds ``budget`` clauses.
    Counting quantifiers are kept as literals.
    """
    prefix, matrix = to_prenex(formula, prefer=prefer)
    clauses = cnf_clauses(matrix, budget)
    used = set().union(*(free_vars(lit) for clause in clauses for lit in clause)) if clauses else set()
    prefix = tuple((kind, var) for kind, var in prefix if var in used)
    log.debug("|CNF| %d quantifiers, %d clauses", len(prefix), len(clauses))
    return PrenexCNF(prefix=prefix, clauses=clauses)


def is_universal(formula: Formula) -> bool:
    """Whether the negation normal form has no existential first-order quantifier.

    Negated counting formulas over quantifier-free bodies count as universal,
    second-order quantifiers never do.
    """

    def walk(node: Formula, positive: bool) -> bool:
        if isinstance(node, Not):
            return walk(node.body, not positive)
        if isinstance(node, (And, Or)):
            return all(walk(item, positive) for item in node.items)
        if isinstance(node, Forall):
            return positive and walk(node.body, positive)
        if isinstance(node, Exists):
            return not positive and walk(node.body, positive)
        if isinstance(node, CountExists):
            return not positive and is_quantifier_free(node.body)
        return not isinstance(node, (SOForall, SOExists))

    return walk(formula, positive=True)


def universal_closure_vars(formula: Formula) -> Tuple[str, ...]:
    return tuple(sorted(free_vars(formula)))


def const_or_var(name: str, constants: Collection[str]) -> Term:
    return Const(name) if name in constants else Var(name)

# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Counting quantifier normal form of monadic formulas.

A formula in CQNF is a boolean combination of nullary atoms, literals over constants and
free variables, and basic formulas ``exists>=n x. L1(x) & ... & Lk(x)`` whose literals all
mention ``x``. In liberal CQNF the literals may include guards ``x != a`` with ``a`` a
constant or a free variable of the whole formula; strict CQNF has none.
"""

from __future__ import annotations

import itertools
import logging
from typing import Collection, Iterable, List, Optional, Sequence

from fo_games.config import SolverConfig, current_config
from fo_games.exceptions import FragmentError, NonMonadicError
from fo_games.logic import (
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
    cnf_clauses,
    conj,
    count_exists,
    disj,
    free_vars,
    neg,
    neq,
    simplify,
    subformulas,
    substitute_terms,
    to_nnf,
)
from fo_games.logic.transform import complement

log = logging.getLogger(__name__)

Literals = List[Formula]


def check_monadic(formula: Formula) -> None:
    """Raise :obj:`NonMonadicError` for predicates of arity above one or second-order quantifiers."""
    for sub in subformulas(formula):
        if isinstance(sub, Atom) and sub.arity > 1:
            raise NonMonadicError(sub.to_text())
        if isinstance(sub, (SOForall, SOExists)) and sub.arity > 1:
            raise NonMonadicError(f"second-order quantifier over {sub.pred}/{sub.arity}")


def rank(formula: Formula) -> int:
    """Counting quantifier rank: ``exists>=n`` adds ``n``, every other quantified variable adds one.

    For a formula in CQNF this is the largest threshold of its counting quantifiers.

    Examples
    --------

    >>> from fo_games.logic import TRUE, parse_formula
    >>> from fo_games.monadic import rank
    >>> rank(TRUE)
    0
    >>> rank(parse_formula("exists>=3 x. P(x)"))
    3
    >>> rank(parse_formula("forall x. exists y. P(x) | Q(y)"))
    2
    """
    if isinstance(formula, CountExists):
        return formula.threshold + rank(formula.body)
    if isinstance(formula, (Forall, Exists)):
        return len(formula.vars) + rank(formula.body)
    return max((rank(child) for child in formula.children()), default=0)


def _mentions(literal: Formula, var: str) -> bool:
    return var in free_vars(literal)


def _dnf(formula: Formula, budget: int) -> List[Literals]:
    """Disjuncts of ``formula`` as literal lists, counting formulas count as literals."""
    clauses = cnf_clauses(to_nnf(neg(formula)), budget)
    return [[complement(literal) for literal in clause] for clause in clauses]


def _equated(literal: Formula, var: str) -> Optional[Term]:
    if isinstance(literal, Eq) and literal.left != literal.right and Var(var) in (literal.left, literal.right):
        return literal.right if literal.left == Var(var) else literal.left
    return None


def _distinct_from(literal: Formula, var: str) -> Optional[Term]:
    if isinstance(literal, Not):
        return _equated(literal.body, var)
    return None


class _Converter:
    def __init__(self, strict: bool, globals_: Collection[str], budget: int):
        self.strict = strict
        self.globals = set(globals_)
        self.budget = budget

    def convert(self, node: Formula) -> Formula:  # noqa: WPS212
        if isinstance(node, (Top, Bottom, Atom, Eq)):
            return node
        if isinstance(node, Not):
            return neg(self.convert(node.body))
        if isinstance(node, And):
            return conj(*(self.convert(item) for item in node.items))
        if isinstance(node, Or):
            return disj(*(self.convert(item) for item in node.items))
        if isinstance(node, Exists):
            body = self.convert(node.body)
            for var in reversed(node.vars):
                body = self.count(1, var, body)
            return body
        if isinstance(node, Forall):
            body = neg(self.convert(node.body))
            for var in reversed(node.vars):
                body = self.count(1, var, body)
            return neg(body)
        if isinstance(node, CountExists):
            return self.count(node.threshold, node.var, self.convert(node.body))
        raise NonMonadicError(f"second-order quantifier in {node.to_text()}")

    def _guard(self, term: Term) -> bool:
        if self.strict:
            return False
        return isinstance(term, Const) or term.name in self.globals

    def count(self, threshold: int, var: str, body: Formula) -> Formula:
        """``exists>=threshold var. body`` for a body whose quantifiers are already converted."""
        body = simplify(body)
        if var not in free_vars(body):
            # universes are nonempty
            return conj(body, count_exists(threshold, var, TRUE)) if threshold > 1 else body
        if threshold == 1:
            return disj(*(self.basic(1, var, literals) for literals in _dnf(body, self.budget)))
        return self._count_shannon(threshold, var, body)

    def _count_shannon(self, threshold: int, var: str, body: Formula) -> Formula:
        """Case split on the literals without ``var``, then count inside each case."""
        outside = sorted(
            {
                (lit.body if isinstance(lit, Not) else lit)
                for literals in _dnf(body, self.budget)
                for lit in literals
                if not _mentions(lit, var)
            },
            key=lambda lit: lit.sort_key(),
        )
        cases = []
        for values in itertools.product((True, False), repeat=len(outside)):
            assignment = dict(zip(outside, values))
            restricted = simplify(_assign(body, assignment))
            if restricted == FALSE:
                continue
            guard = conj(*(unit if value else neg(unit) for unit, value in assignment.items()))
            cases.append(conj(guard, self._count_inside(threshold, var, restricted)))
        return disj(*cases)

    def _count_inside(self, threshold: int, var: str, body: Formula) -> Formula:
        if var not in free_vars(body):
            return count_exists(threshold, var, body)
        disjuncts = _dnf(body, self.budget)
        if len(disjuncts) == 1:
            return self.basic(threshold, var, disjuncts[0])
        if any(_equated(lit, var) or _distinct_from(lit, var) for literals in disjuncts for lit in literals):
            raise FragmentError("counting quantifier over a disjunction with equalities", body.to_text())
        return _count_types(threshold, var, body)

    def basic(self, threshold: int, var: str, literals: Sequence[Formula]) -> Formula:
        """``exists>=threshold var`` of a conjunction of literals."""
        outside = [lit for lit in literals if not _mentions(lit, var)]
        inside = [lit for lit in literals if _mentions(lit, var)]
        for literal in inside:
            term = _equated(literal, var)
            if term is not None:
                if threshold > 1:
                    return FALSE
                rest = [item for item in inside if item is not literal]
                return conj(*outside, substitute_terms(conj(*rest), {var: term}))

        unary: Literals = []
        guards: List[Term] = []
        expand: List[Term] = []
        for literal in inside:
            term = _distinct_from(literal, var)
            if term is None:
                unary.append(literal)
            elif self._guard(term):
                guards.append(term)
            else:
                expand.append(term)
        if any(complement(literal) in unary for literal in unary):
            return FALSE
        base = conj(*unary, *(neq(Var(var), term) for term in guards))
        return conj(*outside, _split(threshold, var, base, list(dict.fromkeys(expand))))


def _split(threshold: int, var: str, base: Formula, terms: List[Term]) -> Formula:
    """``exists>=threshold var. base & var != t1 & ... & var != tm`` without the disequalities.

    Excluding ``t1`` changes nothing when ``t1`` fails ``base`` or equals a later term,
    otherwise one more element of ``base`` is needed.
    """
    if not terms:
        return count_exists(threshold, var, base)
    first, rest = terms[0], terms[1:]
    at_first = substitute_terms(conj(base, *(neq(Var(var), term) for term in rest)), {var: first})
    return disj(
        conj(neg(at_first), _split(threshold, var, base, rest)),
        conj(at_first, _split(threshold + 1, var, base, rest)),
    )


def _assign(formula: Formula, assignment) -> Formula:
    if formula in assignment:
        return TRUE if assignment[formula] else FALSE
    if isinstance(formula, Not):
        return neg(_assign(formula.body, assignment))
    if isinstance(formula, And):
        return conj(*(_assign(item, assignment) for item in formula.items))
    if isinstance(formula, Or):
        return disj(*(_assign(item, assignment) for item in formula.items))
    return formula


def _compositions(total: int, parts: int) -> Iterable[tuple]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def _count_types(threshold: int, var: str, body: Formula) -> Formula:
    """Counting over a disjunction of unary literals through mutually exclusive complete types."""
    atoms_ = sorted({sub for sub in subformulas(body) if isinstance(sub, Atom)}, key=lambda sub: sub.sort_key())
    types = []
    for values in itertools.product((True, False), repeat=len(atoms_)):
        assignment = dict(zip(atoms_, values))
        if simplify(_assign(body, assignment)) == TRUE:
            types.append(conj(*(unit if value else neg(unit) for unit, value in assignment.items())))
    if not types:
        return FALSE
    return disj(
        *(
            conj(*(count_exists(share, var, kind) for share, kind in zip(shares, types)))
            for shares in _compositions(threshold, len(types))
        ),
    )


def to_cqnf(formula: Formula, strict: bool = False, config: Optional[SolverConfig] = None) -> Formula:
    """Equivalent formula in counting quantifier normal form.

    Quantifiers are removed innermost first. ``exists x`` distributes over the disjunctive
    normal form of its body, an equality ``x = t`` substitutes ``t`` for ``x``, and every
    disequality ``x != t`` with ``t`` bound further out is removed by a case split on ``t``.
    With ``strict`` the disequalities with constants and free variables are split as well.
    No predicates are introduced and every variable of the result occurs in the input.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.monadic import rank, to_cqnf
    >>> to_cqnf(parse_formula("P(c)", constants=["c"])).to_text()
    'P(c)'
    >>> to_cqnf(parse_formula("exists x. P(x) & x = c", constants=["c"])).to_text()
    'P(c)'
    >>> rank(to_cqnf(parse_formula("exists y. exists x. P(x) & x != y")))
    2
    >>> to_cqnf(parse_formula("exists x. P(x) & x != c", constants=["c"])).to_text()
    'exists>=1 x. P(x) & c != x'
    """
    config = current_config(config)
    check_monadic(formula)
    converter = _Converter(strict, free_vars(formula), config.clause_budget)
    result = simplify(converter.convert(formula))
    log.debug("|CQNF| Rank %d after conversion", rank(result))
    return result

# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Immutable first- and second-order formula trees.

Nodes are frozen dataclasses with structural equality and a cached hash.
Terms are either bound/free variables (:obj:`Var`) or global constants (:obj:`Const`).
Implication and equivalence are not nodes, :obj:`implies` and :obj:`iff` desugar them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, fields
from typing import Iterable, Iterator, Tuple, Union

RESERVED_PREFIX = "_"

_fresh_counter = itertools.count()


@dataclass(frozen=True)
class Var:
    name: str

    def to_text(self) -> str:
        return self.name

    def sort_key(self) -> tuple:
        return (1, self.name)


@dataclass(frozen=True)
class Const:
    name: str

    def to_text(self) -> str:
        return self.name

    def sort_key(self) -> tuple:
        return (0, self.name)


Term = Union[Var, Const]


def fresh_name(hint: str = "v") -> str:
    """Return a variable name that never collides with parsed names.

    >>> from fo_games.logic.formula import fresh_name
    >>> fresh_name("x").startswith("_x")
    True
    """
    hint = hint.lstrip(RESERVED_PREFIX).rstrip("0123456789") or "v"
    return f"{RESERVED_PREFIX}{hint}{next(_fresh_counter)}"


class Formula:
    """Base class of formula nodes."""

    def _key(self) -> tuple:
        return tuple(getattr(self, field.name) for field in fields(self))  # type: ignore[arg-type]

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(self) is not type(other) or hash(self) != hash(other):
            return False
        return self._key() == other._key()

    def __hash__(self) -> int:
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hash((type(self).__name__, self._key()))
            object.__setattr__(self, "_hash", cached)
        return cached

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        """Readable, re-parseable text."""
        from fo_games.logic.printer import print_formula

        return print_formula(self)

    def sort_key(self) -> str:
        """Raw text used as a total order on formulas, cached per node."""
        cached = self.__dict__.get("_raw")
        if cached is None:
            from fo_games.logic.printer import raw_text

            cached = raw_text(self)
            object.__setattr__(self, "_raw", cached)
        return cached

    def children(self) -> Tuple["Formula", ...]:
        return ()


@dataclass(frozen=True, eq=False)
class Top(Formula):
    pass


@dataclass(frozen=True, eq=False)
class Bottom(Formula):
    pass


TRUE = Top()
FALSE = Bottom()


@dataclass(frozen=True, eq=False)
class Atom(Formula):
    pred: str
    args: Tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass(frozen=True, eq=False)
class Eq(Formula):
    """Equality with terms kept in the fixed term order."""

    left: Term
    right: Term

    def __post_init__(self):
        if self.right.sort_key() < self.left.sort_key():
            left, right = self.right, self.left
            object.__setattr__(self, "left", left)
            object.__setattr__(self, "right", right)


@dataclass(frozen=True, eq=False)
class Not(Formula):
    body: Formula

    def children(self):
        return (self.body,)


@dataclass(frozen=True, eq=False)
class And(Formula):
    items: Tuple[Formula, ...]

    def children(self):
        return self.items


@dataclass(frozen=True, eq=False)
class Or(Formula):
    items: Tuple[Formula, ...]

    def children(self):
        return self.items


@dataclass(frozen=True, eq=False)
class Forall(Formula):
    vars: Tuple[str, ...]
    body: Formula

    def children(self):
        return (self.body,)


@dataclass(frozen=True, eq=False)
class Exists(Formula):
    vars: Tuple[str, ...]
    body: Formula

    def children(self):
        return (self.body,)


@dataclass(frozen=True, eq=False)
class CountExists(Formula):
    """There are at least ``threshold`` distinct ``var`` satisfying ``body``."""

    threshold: int
    var: str
    body: Formula

    def children(self):
        return (self.body,)


@dataclass(frozen=True, eq=False)
class SOForall(Formula):
    pred: str
    arity: int
    body: Formula

    def children(self):
        return (self.body,)


@dataclass(frozen=True, eq=False)
class SOExists(Formula):
    pred: str
    arity: int
    body: Formula

    def children(self):
        return (self.body,)


FOQuantifier = (Forall, Exists)
SOQuantifier = (SOForall, SOExists)


def atom(pred: str, *args: Union[str, Term]) -> Atom:
    """Build an atom, strings become variables.

    >>> from fo_games.logic.formula import atom
    >>> atom("Conf", "x", "p").to_text()
    'Conf(x, p)'
    """
    return Atom(pred, tuple(Var(arg) if isinstance(arg, str) else arg for arg in args))


def eq(left: Union[str, Term], right: Union[str, Term]) -> Eq:
    left_term = Var(left) if isinstance(left, str) else left
    right_term = Var(right) if isinstance(right, str) else right
    return Eq(left_term, right_term)


def neq(left: Union[str, Term], right: Union[str, Term]) -> Formula:
    return neg(eq(left, right))


def neg(formula: Formula) -> Formula:
    if isinstance(formula, Top):
        return FALSE
    if isinstance(formula, Bottom):
        return TRUE
    if isinstance(formula, Not):
        return formula.body
    return Not(formula)


def _flatten(kind: type, items: Iterable[Formula]) -> Iterator[Formula]:
    for item in items:
        if isinstance(item, kind):
            yield from item.items  # type: ignore[attr-defined]
        else:
            yield item


def conj(*items: Formula) -> Formula:
    """Flattened, deduplicated conjunction.

    >>> from fo_games.logic.formula import TRUE, FALSE, atom, conj
    >>> conj() is TRUE
    True
    >>> conj(atom("P"), FALSE) is FALSE
    True
    """
    result: list[Formula] = []
    seen: set[Formula] = set()
    for item in _flatten(And, items):
        if isinstance(item, Top):
            continue
        if isinstance(item, Bottom):
            return FALSE
        if item not in seen:
            seen.add(item)
            result.append(item)
    if not result:
        return TRUE
    if len(result) == 1:
        return result[0]
    return And(tuple(result))


def disj(*items: Formula) -> Formula:
    result: list[Formula] = []
    seen: set[Formula] = set()
    for item in _flatten(Or, items):
        if isinstance(item, Bottom):
            continue
        if isinstance(item, Top):
            return TRUE
        if item not in seen:
            seen.add(item)
            result.append(item)
    if not result:
        return FALSE
    if len(result) == 1:
        return result[0]
    return Or(tuple(result))


def implies(premise: Formula, conclusion: Formula) -> Formula:
    return disj(neg(premise), conclusion)


def iff(left: Formula, right: Formula) -> Formula:
    return conj(implies(left, right), implies(right, left))


def _quantify(kind: type, variables: Iterable[str], body: Formula) -> Formula:
    names = tuple(dict.fromkeys(variables))
    if not names or isinstance(body, (Top, Bottom)):
        return body
    if isinstance(body, kind) and not set(names) & set(body.vars):  # type: ignore[attr-defined]
        return kind(names + body.vars, body.body)  # type: ignore[attr-defined]
    return kind(names, body)


def forall(variables: Iterable[str], body: Formula) -> Formula:
    return _quantify(Forall, variables, body)


def exists(variables: Iterable[str], body: Formula) -> Formula:
    return _quantify(Exists, variables, body)


def count_exists(threshold: int, var: str, body: Formula) -> Formula:
    if threshold <= 0:
        return TRUE
    if isinstance(body, Bottom):
        return FALSE
    return CountExists(threshold, var, body)


def so_forall(pred: str, arity: int, body: Formula) -> Formula:
    return SOForall(pred, arity, body)


def so_exists(pred: str, arity: int, body: Formula) -> Formula:
    return SOExists(pred, arity, body)


def is_literal(formula: Formula) -> bool:
    if isinstance(formula, Not):
        formula = formula.body
    return isinstance(formula, (Atom, Eq, CountExists))


def subformulas(formula: Formula) -> Iterator[Formula]:
    """Pre-order traversal."""
    stack = [formula]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(reversed(current.children()))


def atoms(formula: Formula) -> Iterator[Atom]:
    for sub in subformulas(formula):
        if isinstance(sub, Atom):
            yield sub


def predicates(formula: Formula) -> dict[str, int]:
    """Predicates occurring free (not bound by an SO quantifier) with their arities."""
    result: dict[str, int] = {}

    def walk(node: Formula, bound: frozenset) -> None:
        if isinstance(node, Atom):
            if node.pred not in bound:
                result.setdefault(node.pred, node.arity)
            return
        if isinstance(node, SOQuantifier):
            walk(node.body, bound | {node.pred})
            return
        for child in node.children():
            walk(child, bound)

    walk(formula, frozenset())
    return result


def constants(formula: Formula) -> set[str]:
    result: set[str] = set()
    for sub in subformulas(formula):
        if isinstance(sub, Atom):
            result.update(arg.name for arg in sub.args if isinstance(arg, Const))
        elif isinstance(sub, Eq):
            result.update(term.name for term in (sub.left, sub.right) if isinstance(term, Const))
    return result


def size(formula: Formula) -> int:
    """Number of syntax-tree nodes, the label size reported in statistics."""
    return sum(1 for _ in subformulas(formula))


def has_so_quantifier(formula: Formula) -> bool:
    return any(isinstance(sub, SOQuantifier) for sub in subformulas(formula))


def is_quantifier_free(formula: Formula) -> bool:
    return not any(isinstance(sub, (Forall, Exists, CountExists, SOForall, SOExists)) for sub in subformulas(formula))

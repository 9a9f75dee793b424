# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Propositional grounding of formulas over finite universes.

Ground atoms become z3 Boolean constants. Constants and free variables are encoded
one-hot so a single satisfiability query covers every valuation, and an optional domain
predicate lets one query cover every universe size up to the grounding size.
"""

from __future__ import annotations

import itertools
import logging
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import z3
from frozendict import frozendict

try:
    from pydantic.v1 import validator
except (ImportError, AttributeError):
    from pydantic import validator  # type: ignore[no-redef, assignment]

from fo_games.config import SolverConfig, current_config
from fo_games.entity import BaseModel
from fo_games.exceptions import EnumerationBudgetError, SolverBackendError
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
    constants,
    iff,
    neg,
    predicates,
)
from fo_games.logic.transform import free_vars

log = logging.getLogger(__name__)

# (element index, condition under which the term denotes it)
Choices = List[Tuple[int, z3.BoolRef]]


class GroundModel(BaseModel):
    """Finite structure: universe ``0..size-1``, constant valuation and relation tables.

    Examples
    --------

    >>> from fo_games.logic import GroundModel
    >>> model = GroundModel(size=2, constants={"c": 1}, relations={"P": [(1,)]})
    >>> model.holds("P", (1,))
    True
    >>> model.to_text()
    '|U|=2; c=1; P={(1)}'
    """

    size: int
    constants: frozendict = frozendict()
    relations: frozendict = frozendict()

    @validator("constants", pre=True)
    def _freeze_constants(cls, value):  # noqa: N805
        return frozendict(sorted((str(name), int(index)) for name, index in dict(value).items()))

    @validator("relations", pre=True)
    def _freeze_relations(cls, value):  # noqa: N805
        result = {}
        for name, rows in sorted(dict(value).items()):
            result[str(name)] = tuple(sorted({tuple(int(item) for item in row) for row in rows}))
        return frozendict(result)

    def holds(self, pred: str, args: Iterable[int]) -> bool:
        return tuple(args) in self.relations.get(pred, ())

    def to_text(self) -> str:
        parts = [f"|U|={self.size}"]
        parts.extend(f"{name}={index}" for name, index in self.constants.items())
        for name, rows in self.relations.items():
            tuples = ", ".join("(" + ", ".join(map(str, row)) + ")" for row in rows)
            parts.append(f"{name}={{{tuples}}}")
        return "; ".join(parts)


class Grounder:
    """Translate formulas into z3 propositional (or quantified Boolean) constraints.

    Second-order quantifiers are kept as z3 quantifiers over the fresh Boolean constants
    of their ground atoms.
    """

    def __init__(self, size: int, symbols: Iterable[str], relativize: bool = False, atom_budget: int = 4096):
        self.size = size
        self.relativize = relativize
        self.atom_budget = atom_budget
        self.atoms: Dict[Tuple[str, Tuple[int, ...]], z3.BoolRef] = {}
        self.domain = [z3.Bool(f"dom!{index}") for index in range(size)]
        self.symbols: Dict[str, List[z3.BoolRef]] = {
            name: [z3.Bool(f"{name}={index}") for index in range(size)] for name in sorted(set(symbols))
        }
        self._so_scope: Dict[str, str] = {}
        self._so_counter = itertools.count()

    def axioms(self) -> List[z3.BoolRef]:
        """Exactly-one constraints for symbols and domain closure when relativized."""
        result = []
        for options in self.symbols.values():
            result.append(z3.PbEq([(option, 1) for option in options], 1))
            if self.relativize:
                result.extend(z3.Implies(option, dom) for option, dom in zip(options, self.domain))
        if self.relativize:
            result.append(z3.Or(*self.domain))
        return result

    def atom(self, pred: str, args: Tuple[int, ...]) -> z3.BoolRef:
        name = self._so_scope.get(pred, pred)
        key = (name, args)
        found = self.atoms.get(key)
        if found is None:
            if len(self.atoms) >= self.atom_budget:
                raise EnumerationBudgetError("Grounding", len(self.atoms) + 1, self.atom_budget)
            found = z3.Bool(f"{name}!{','.join(map(str, args))}")
            self.atoms[key] = found
        return found

    def _term(self, term: Term, env: Mapping[str, int]) -> Choices:
        if not isinstance(term, Const) and term.name in env:
            return [(env[term.name], z3.BoolVal(True))]
        return list(enumerate(self.symbols[term.name]))

    def ground(self, formula: Formula, env: Optional[Mapping[str, int]] = None) -> z3.BoolRef:  # noqa: WPS212, WPS231
        env = env or {}
        if isinstance(formula, Top):
            return z3.BoolVal(True)
        if isinstance(formula, Bottom):
            return z3.BoolVal(False)
        if isinstance(formula, Atom):
            options = [self._term(arg, env) for arg in formula.args]
            cases = []
            for combination in itertools.product(*options):
                args = tuple(index for index, _ in combination)
                conditions = [condition for _, condition in combination if not z3.is_true(condition)]
                cases.append(z3.And(*conditions, self.atom(formula.pred, args)))
            return cases[0] if len(cases) == 1 else z3.Or(*cases)
        if isinstance(formula, Eq):
            left = self._term(formula.left, env)
            right = self._term(formula.right, env)
            cases = [z3.And(lcond, rcond) for lindex, lcond in left for rindex, rcond in right if lindex == rindex]
            return z3.simplify(z3.Or(*cases)) if cases else z3.BoolVal(False)
        if isinstance(formula, Not):
            return z3.Not(self.ground(formula.body, env))
        if isinstance(formula, And):
            return z3.And(*(self.ground(item, env) for item in formula.items))
        if isinstance(formula, Or):
            return z3.Or(*(self.ground(item, env) for item in formula.items))
        if isinstance(formula, (Forall, Exists)):
            universal = isinstance(formula, Forall)
            cases = []
            for values in itertools.product(range(self.size), repeat=len(formula.vars)):
                inner = self.ground(formula.body, {**env, **dict(zip(formula.vars, values))})
                if self.relativize:
                    guard = z3.And(*(self.domain[value] for value in set(values)))
                    inner = z3.Implies(guard, inner) if universal else z3.And(guard, inner)
                cases.append(inner)
            return z3.And(*cases) if universal else z3.Or(*cases)
        if isinstance(formula, CountExists):
            cases = []
            for value in range(self.size):
                inner = self.ground(formula.body, {**env, formula.var: value})
                if self.relativize:
                    inner = z3.And(self.domain[value], inner)
                cases.append(inner)
            if formula.threshold > self.size:
                return z3.BoolVal(False)
            return z3.AtLeast(*cases, formula.threshold)
        if isinstance(formula, (SOForall, SOExists)):
            return self._ground_so(formula, env)
        raise TypeError(f"Unknown formula node {formula!r}")

    def _ground_so(self, formula, env: Mapping[str, int]) -> z3.BoolRef:
        renamed = f"{formula.pred}#{next(self._so_counter)}"
        outer = self._so_scope.get(formula.pred)
        self._so_scope[formula.pred] = renamed
        try:
            body = self.ground(formula.body, env)
        finally:
            if outer is None:
                del self._so_scope[formula.pred]
            else:
                self._so_scope[formula.pred] = outer
        bound = [
            self.atom(renamed, args) for args in itertools.product(range(self.size), repeat=formula.arity)
        ]
        for args in itertools.product(range(self.size), repeat=formula.arity):
            self.atoms.pop((renamed, args), None)
        if isinstance(formula, SOForall):
            return z3.ForAll(bound, body)
        return z3.Exists(bound, body)

    def extract(self, model: z3.ModelRef, signature: Mapping[str, int]) -> GroundModel:
        if self.relativize:
            elements = [index for index, dom in enumerate(self.domain) if z3.is_true(model.eval(dom, True))]
        else:
            elements = list(range(self.size))
        position = {element: new for new, element in enumerate(elements)}

        valuation = {}
        for name, options in self.symbols.items():
            for index, option in enumerate(options):
                if z3.is_true(model.eval(option, True)):
                    valuation[name] = position[index]
                    break

        relations: Dict[str, list] = {}
        for pred, arity in signature.items():
            rows = []
            for args in itertools.product(elements, repeat=arity):
                ground = self.atoms.get((pred, args))
                if ground is not None and z3.is_true(model.eval(ground, True)):
                    rows.append(tuple(position[arg] for arg in args))
            relations[pred] = rows
        return GroundModel(size=len(elements), constants=valuation, relations=relations)


def grounding_cost(formula: Formula, size: int) -> int:
    """Number of quantifier instances grounding ``formula`` over ``size`` elements unfolds."""
    if isinstance(formula, (Forall, Exists)):
        return size ** len(formula.vars) * grounding_cost(formula.body, size)
    if isinstance(formula, CountExists):
        return size * grounding_cost(formula.body, size)
    if isinstance(formula, (And, Or)):
        return sum(grounding_cost(item, size) for item in formula.items)
    if isinstance(formula, (Not, SOForall, SOExists)):
        return grounding_cost(formula.body, size)
    return 1


def _grounder(formula: Formula, size: int, config: SolverConfig, relativize: bool = False) -> Grounder:
    cost = grounding_cost(formula, size)
    if cost > config.ground_budget:
        raise EnumerationBudgetError("Grounding", cost, config.ground_budget)
    return Grounder(size, _symbols(formula), relativize=relativize, atom_budget=config.atom_budget)


def _symbols(formula: Formula) -> List[str]:
    return sorted(constants(formula) | set(free_vars(formula)))


def _check(solver: z3.Solver) -> bool:
    result = solver.check()
    if result == z3.unknown:
        raise SolverBackendError(f"z3 returned unknown: {solver.reason_unknown()}")
    return result == z3.sat


def satisfiable_at(formula: Formula, size: int, config: Optional[SolverConfig] = None) -> Optional[GroundModel]:
    """Model of exactly ``size`` elements, or ``None``."""
    config = current_config(config)
    grounder = _grounder(formula, size, config)
    solver = z3.Solver()
    solver.add(*grounder.axioms())
    solver.add(grounder.ground(formula))
    if not _check(solver):
        return None
    return grounder.extract(solver.model(), predicates(formula))


def bounded_sat(formula: Formula, max_size: int, config: Optional[SolverConfig] = None) -> Optional[GroundModel]:
    """Smallest model with at most ``max_size`` elements, or ``None`` if there is none up to the bound.

    Examples
    --------

    >>> from fo_games.logic import parse_formula, bounded_sat
    >>> bounded_sat(parse_formula("P(c)", constants=["c"]), 3).to_text()
    '|U|=1; c=0; P={(0)}'
    >>> bounded_sat(parse_formula("exists x, y. x != y"), 1) is None
    True
    """
    config = current_config(config)
    grounder = _grounder(formula, max_size, config, relativize=True)
    solver = z3.Solver()
    solver.add(*grounder.axioms())
    solver.add(grounder.ground(formula))
    if not _check(solver):
        log.debug("|Grounding| Unsatisfiable up to size %d", max_size)
        return None

    signature = predicates(formula)
    for size in range(1, max_size + 1):
        solver.push()
        solver.add(z3.AtMost(*grounder.domain, size))
        if _check(solver):
            model = grounder.extract(solver.model(), signature)
            log.debug("|Grounding| Found model of size %d", model.size)
            return model
        solver.pop()
    raise SolverBackendError("Satisfiable grounding has no model within the domain bound")


def bounded_valid(formula: Formula, max_size: int, config: Optional[SolverConfig] = None) -> Optional[GroundModel]:
    """``None`` when ``formula`` holds on every model up to ``max_size``, else a smallest countermodel."""
    return bounded_sat(neg(formula), max_size, config)


def equivalent_bounded(
    left: Formula,
    right: Formula,
    max_size: int,
    config: Optional[SolverConfig] = None,
) -> bool:
    """Whether ``left <-> right`` holds on every model with 1 to ``max_size`` elements.

    Free variables are read as constants.

    Examples
    --------

    >>> from fo_games.logic import parse_formula, equivalent_bounded
    >>> forall_p, exists_p = parse_formula("forall x. P(x)"), parse_formula("exists x. P(x)")
    >>> equivalent_bounded(forall_p, exists_p, 1)
    True
    >>> equivalent_bounded(forall_p, exists_p, 2)
    False
    """
    return bounded_sat(neg(iff(left, right)), max_size, config) is None

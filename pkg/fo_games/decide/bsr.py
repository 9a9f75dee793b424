# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Satisfiability in the Bernays-Schönfinkel-Ramsey fragment.

A satisfiable ``exists* forall*`` sentence without function symbols has a model whose
universe is no larger than the number of constants plus the number of existential
witnesses, so grounding at that size decides it.
"""

from __future__ import annotations

import logging
from typing import List, Optional

from fo_games.config import SolverConfig, current_config
from fo_games.entity import BaseModel
from fo_games.exceptions import FragmentError
from fo_games.logic import (
    TRUE,
    And,
    Exists,
    Forall,
    Formula,
    GroundModel,
    Not,
    Or,
    bounded_sat,
    conj,
    constants,
    expand_counting,
    free_vars,
    has_so_quantifier,
    neg,
    to_nnf,
)

log = logging.getLogger(__name__)


class EntailmentResult(BaseModel):
    """Outcome of ``premise => conclusion``.

    ``bounded`` is set when some part of the check left the decidable fragment and was
    only checked on small universes; a countermodel is always a real one.
    """

    holds: bool
    countermodel: Optional[GroundModel] = None
    bounded: bool = False


def _witnesses(node: Formula, under_forall: bool) -> int:
    if isinstance(node, Exists):
        if under_forall:
            raise FragmentError("formula must be in the exists-forall fragment", node.to_text())
        return len(node.vars) + _witnesses(node.body, under_forall)
    if isinstance(node, Forall):
        return _witnesses(node.body, True)
    if isinstance(node, And):
        return sum(_witnesses(item, under_forall) for item in node.items)
    if isinstance(node, Or):
        return max((_witnesses(item, under_forall) for item in node.items), default=0)
    return 0


def small_model_size(formula: Formula) -> int:
    """Universe size that suffices to find a model of a BSR formula if there is one.

    Raises :obj:`FragmentError` outside the fragment.

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.decide import small_model_size
    >>> small_model_size(parse_formula("(exists x. P(x)) & exists y. !P(y)"))
    2
    >>> small_model_size(parse_formula("forall x. exists y. E(x, y)"))
    Traceback (most recent call last):
        ...
    fo_games.exceptions.FragmentError: Fragment condition violated: formula must be in the exists-forall fragment (exists y. E(x, y))
    """
    if has_so_quantifier(formula):
        raise FragmentError("no second-order quantifiers", formula.to_text())
    nnf = to_nnf(expand_counting(formula))
    return max(1, len(constants(formula)) + len(free_vars(formula)) + _witnesses(nnf, False))


def bsr_sat(formula: Formula, config: Optional[SolverConfig] = None) -> Optional[GroundModel]:
    """Smallest model of a BSR formula, or ``None`` when it is unsatisfiable.

    Free variables are read as constants.
    """
    bound = small_model_size(formula)
    log.debug("|BSR| Grounding up to %d elements", bound)
    return bounded_sat(formula, bound, config)


def bsr_valid(formula: Formula, config: Optional[SolverConfig] = None) -> Optional[GroundModel]:
    """``None`` when ``formula`` is valid, otherwise a smallest countermodel.

    The negation must be in the BSR fragment.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.decide import bsr_valid
    >>> bsr_valid(parse_formula("forall x. x = x")) is None
    True
    >>> bsr_valid(parse_formula("(exists x. P(x)) -> forall x. P(x)")).size
    2
    """
    return bsr_sat(neg(formula), config)


def _conjuncts(formula: Formula) -> List[Formula]:
    if isinstance(formula, And):
        return list(formula.items)
    if isinstance(formula, Not) and isinstance(formula.body, Or):
        return [neg(item) for item in formula.body.items]
    return [formula]


def entails(premise: Formula, conclusion: Formula, config: Optional[SolverConfig] = None) -> EntailmentResult:
    """Check ``premise => conclusion``, one conclusion conjunct at a time.

    Conjuncts whose refutation is outside BSR are checked up to ``bounded_size`` elements.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.decide import entails
    >>> strong = parse_formula("forall x, p. !Conf(x, p)")
    >>> weak = parse_formula("forall x, p. !Conf(x, p) | !Assign(x, p)")
    >>> entails(strong, weak).holds
    True
    >>> result = entails(weak, strong)
    >>> result.holds, result.countermodel.size
    (False, 1)
    """
    config = current_config(config)
    bounded = False
    for item in _conjuncts(conclusion):
        if item == TRUE:
            continue
        query = conj(premise, neg(item))
        try:
            model = bsr_sat(query, config)
        except FragmentError:
            log.debug("|BSR| Falling back to bounded check up to %d elements", config.bounded_size)
            model = bounded_sat(query, config.bounded_size, config)
            bounded = True
        if model is not None:
            return EntailmentResult(holds=False, countermodel=model)
    return EntailmentResult(holds=True, bounded=bounded)

# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

from typing import Tuple

from frozendict import frozendict

try:
    from pydantic.v1 import validator
except (ImportError, AttributeError):
    from pydantic import validator  # type: ignore[no-redef, assignment]

from fo_games.entity import BaseModel
from fo_games.game import Definition, formal_params
from fo_games.logic import TRUE, Formula, Var, atom, conj, disj, exists, forall, neg, substitute_terms


class NormalForm(BaseModel):
    """``E & (forall y. F | B(y)) & (forall y'. G | !B(y')) & (forall y, y'. H | B(y) | !B(y'))``.

    None of ``E``, ``F``, ``G``, ``H`` mentions ``pred``. Variables in ``outer`` are existentially
    quantified in front of the second-order quantifier. An inexact normal form is stronger
    than the formula it was computed from.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> from fo_games.soqe import NormalForm
    >>> nf = NormalForm(pred="B", y=("y1",), y_prime=("z1",), g=parse_formula("!C(z1)"))
    >>> nf.is_simple, nf.recompose().to_text()
    (True, 'forall z1. !C(z1) | !B(z1)')
    """

    pred: str
    y: Tuple[str, ...] = ()
    y_prime: Tuple[str, ...] = ()
    e: Formula = TRUE
    f: Formula = TRUE
    g: Formula = TRUE
    h: Formula = TRUE
    outer: Tuple[str, ...] = ()
    exact: bool = True

    @property
    def arity(self) -> int:
        return len(self.y)

    @property
    def is_simple(self) -> bool:
        return self.h == TRUE

    def matrix(self) -> Formula:
        """The recomposed formula without the ``outer`` binders."""
        positive = atom(self.pred, *self.y)
        negative = neg(atom(self.pred, *self.y_prime))
        return conj(
            self.e,
            forall(self.y, disj(self.f, positive)),
            forall(self.y_prime, disj(self.g, negative)),
            forall(self.y + self.y_prime, disj(self.h, positive, negative)),
        )

    def recompose(self) -> Formula:
        """The formula this normal form stands for."""
        return exists(self.outer, self.matrix())


class ChoiceResult(BaseModel):
    """Elimination of ``exists B`` together with the defining formula chosen for ``B``.

    ``choice`` has free variables ``params``. When ``exact`` is false the choice is a sound
    strengthening: plugging it in implies the existential but may not be equivalent to it.
    """

    eliminated: Formula
    choice: Formula
    params: Tuple[str, ...] = ()
    exact: bool = True
    k_used: int = 0
    stabilized: bool = True
    bounded: bool = False

    def definition(self) -> Definition:
        """The choice over the formal parameters ``y1, y2, ...``."""
        params = formal_params(len(self.params))
        body = substitute_terms(self.choice, {name: Var(formal) for name, formal in zip(self.params, params)})
        return Definition(params=params, body=body)


class Elimination(BaseModel):
    """First-order result of removing every second-order quantifier of a formula.

    ``choices`` holds the weakest defining formulas found for existentially quantified
    predicates. An inexact elimination is a strengthening of its input.
    """

    formula: Formula
    exact: bool = True
    bounded: bool = False
    choices: frozendict = frozendict()
    diagnostics: Tuple[str, ...] = ()

    @validator("choices", pre=True)
    def _freeze_choices(cls, value):  # noqa: N805
        return frozendict(sorted(dict(value).items()))

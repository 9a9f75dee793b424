# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

from typing import Optional, Tuple

from frozendict import frozendict

try:
    from pydantic.v1 import validator
except (ImportError, AttributeError):
    from pydantic import validator  # type: ignore[no-redef, assignment]

from fo_games.entity import BaseModel
from fo_games.game import Definition, Game, formal_params, prime
from fo_games.logic import (
    FALSE,
    Const,
    Formula,
    apply_substitution,
    atom,
    forall,
    iff,
    parse_formula,
)
from fo_games.logic.parser import bind_constants


class NiSpec(BaseModel):
    """Noninterference requirement for one observer.

    ``secrets`` maps each secret input of A to its declassification condition over the formal
    parameters ``y1, ..., yk`` of the input and the observer constant: the tuples for which
    the condition holds may be disclosed. ``admissible`` optionally fixes, per node, the
    predicates a strategy may read.

    Examples
    --------

    >>> from fo_games.selfcomp import NiSpec
    >>> spec = NiSpec(observer="a", secrets={"A2": "!Conf(a, y2)"})
    >>> spec.secrets["A2"].to_text()
    '!Conf(a, y2)'
    """

    observer: str = "a"
    secrets: frozendict = frozendict()
    admissible: Optional[frozendict] = None

    @validator("secrets", pre=True)
    def _parse_secrets(cls, value, values):  # noqa: N805
        observer = values.get("observer", "a")
        result = {}
        for name, formula in dict(value).items():
            if formula is None:
                formula = FALSE
            elif isinstance(formula, str):
                formula = parse_formula(formula)
            result[str(name)] = bind_constants(formula, [observer])
        return frozendict(result)

    @validator("admissible", pre=True)
    def _freeze_admissible(cls, value):  # noqa: N805
        if value is None:
            return None
        return frozendict((str(node), tuple(preds)) for node, preds in dict(value).items())


def _track_map(arities) -> dict:
    return {
        pred: Definition(params=formal_params(arity), body=atom(prime(pred), *formal_params(arity)))
        for pred, arity in arities.items()
    }


class ComposedGame(BaseModel):
    """Product of a game with a primed copy of itself."""

    game: Game
    original: Game
    spec: NiSpec

    @property
    def state(self) -> Tuple[str, ...]:
        return tuple(self.original.signature.state)

    def arity(self, pred: str) -> int:
        return self.original.signature.state[pred]

    def to_second_track(self, formula: Formula) -> Formula:
        """``formula`` with every original state predicate primed."""
        return apply_substitution(formula, _track_map(self.original.signature.state))

    def to_first_track(self, formula: Formula) -> Formula:
        """``formula`` with every primed state predicate replaced by the original one."""
        unprime = {
            prime(pred): Definition(params=formal_params(arity), body=atom(pred, *formal_params(arity)))
            for pred, arity in self.original.signature.state.items()
        }
        return apply_substitution(formula, unprime)

    def original_name(self, pred: str) -> str:
        for name in self.state:
            if pred in {name, prime(name)}:
                return name
        return pred

    def equivalence(self, pred: str) -> Formula:
        """``forall z. R(z) <-> R'(z)``."""
        params = tuple(f"z{index}" for index in range(1, self.arity(pred) + 1))
        return forall(params, iff(atom(pred, *params), atom(prime(pred), *params)))

    def observation(self, pred: str) -> Formula:
        """Agreement of both tracks on the tuples whose first argument is the observer."""
        arity = self.arity(pred)
        if not arity:
            return iff(atom(pred), atom(prime(pred)))
        params = tuple(f"z{index}" for index in range(2, arity + 1))
        args = (Const(self.spec.observer), *params)
        return forall(params, iff(atom(pred, *args), atom(prime(pred), *args)))


class AdmissibilityReport(BaseModel):
    """Admissible predicates per node and whether a strategy only reads them."""

    admissible: bool
    predicates: frozendict = frozendict()
    diagnostics: Tuple[str, ...] = ()

    @validator("predicates", pre=True)
    def _freeze_predicates(cls, value):  # noqa: N805
        return frozendict((str(node), tuple(preds)) for node, preds in dict(value).items())

    def __bool__(self) -> bool:
        return self.admissible

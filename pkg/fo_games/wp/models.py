# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

from typing import Optional, Tuple

from frozendict import frozendict
from typing_extensions import Literal

try:
    from pydantic.v1 import validator
except (ImportError, AttributeError):
    from pydantic import validator  # type: ignore[no-redef, assignment]

from fo_games.entity import BaseModel
from fo_games.logic import GroundModel

IterationStatus = Literal["fixed", "cap-reached"]
Verdict = Literal["safe", "unsafe", "unknown"]


def _freeze_map(value) -> frozendict:
    return frozendict((str(node), formula) for node, formula in dict(value).items())


class IterationStep(BaseModel):
    """Assertion map after step ``h`` and the nodes whose formula changed in it.

    ``exact`` is false once any elimination or strengthening up to this step was not an
    equivalence.
    """

    h: int
    assertion: frozendict
    changed: Tuple[str, ...] = ()
    exact: bool = True
    elapsed_ms: float = 0

    _freeze = validator("assertion", pre=True, allow_reuse=True)(_freeze_map)


class IterationTrace(BaseModel):
    steps: Tuple[IterationStep, ...] = ()

    @property
    def last(self) -> IterationStep:
        return self.steps[-1]

    def exact_steps(self) -> Tuple[IterationStep, ...]:
        return tuple(step for step in self.steps if step.exact)


class IterationResult(BaseModel):
    """Outcome of the weakest-precondition iteration.

    ``bounded`` is set when some implication check left the decidable fragment and
    was only checked on small universes.
    """

    assertion: frozendict
    trace: IterationTrace
    status: IterationStatus
    h: int
    exact: bool = True
    bounded: bool = False
    strengthenings: int = 0
    max_label_size: int = 0
    diagnostics: Tuple[str, ...] = ()

    _freeze = validator("assertion", pre=True, allow_reuse=True)(_freeze_map)


class SafetyVerdict(BaseModel):
    verdict: Verdict
    h: int = 0
    bounded: bool = False
    witness: Optional[GroundModel] = None
    reason: str = ""

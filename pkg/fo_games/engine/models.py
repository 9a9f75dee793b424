# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

from typing import Optional, Tuple

from frozendict import frozendict
from typing_extensions import Literal

try:
    from pydantic.v1 import Field, validator
except (ImportError, AttributeError):
    from pydantic import Field, validator  # type: ignore[no-redef, assignment]

from fo_games.decide import GroundSolution
from fo_games.entity import BaseModel
from fo_games.game import Strategy
from fo_games.logic import Formula, GroundModel

Verdict = Literal["safe", "unsafe", "unknown"]
InvariantStatus = Literal["inductive", "inferred", "none"]


def _freeze(value):
    return frozendict(sorted(dict(value).items()))


class Obligation(BaseModel):
    """One verification condition: its name, formula and outcome."""

    name: str
    formula: Formula
    holds: bool
    countermodel: Optional[GroundModel] = None
    bounded: bool = False


class CertificateReport(BaseModel):
    """Outcome of a batch of verification conditions.

    Examples
    --------

    >>> from fo_games.engine import CertificateReport
    >>> CertificateReport().holds
    True
    """

    obligations: Tuple[Obligation, ...] = ()

    @property
    def holds(self) -> bool:
        return all(item.holds for item in self.obligations)

    @property
    def bounded(self) -> bool:
        return any(item.bounded for item in self.obligations)

    @property
    def failures(self) -> Tuple[Obligation, ...]:
        return tuple(item for item in self.obligations if not item.holds)

    def merge(self, other: CertificateReport) -> CertificateReport:
        return CertificateReport(obligations=self.obligations + other.obligations)


class SynthesisStats(BaseModel):
    h: int = 0
    strengthenings: int = 0
    max_label_size: int = 0
    gamma_k: frozendict = Field(default_factory=frozendict)
    phases_ms: frozendict = Field(default_factory=frozendict)
    elapsed_ms: float = 0
    memory_rss: int = 0

    _freeze_maps = validator("gamma_k", "phases_ms", pre=True, allow_reuse=True)(_freeze)


class SynthesisResult(BaseModel):
    """End result of :obj:`synthesize` or :obj:`verify`.

    A safe verdict always comes with an invariant that passed the boundary and
    inductiveness checks for the game under ``strategies``.
    """

    verdict: Verdict
    invariant: frozendict = Field(default_factory=frozendict)
    invariant_status: InvariantStatus = "none"
    strategies: Strategy = Field(default_factory=Strategy)
    exact: frozendict = Field(default_factory=frozendict)
    stats: SynthesisStats = Field(default_factory=SynthesisStats)
    bounded: bool = False
    witness: Optional[GroundModel] = None
    trace: Optional[GroundSolution] = None
    certificate: Optional[CertificateReport] = None
    diagnostics: Tuple[str, ...] = ()

    _freeze_maps = validator("invariant", "exact", pre=True, allow_reuse=True)(_freeze)

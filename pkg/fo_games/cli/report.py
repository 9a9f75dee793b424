# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

from typing import List, Mapping, Optional, Tuple

from frozendict import frozendict
from typing_extensions import Literal

try:
    from pydantic.v1 import Field, validator
except (ImportError, AttributeError):
    from pydantic import Field, validator  # type: ignore[no-redef, assignment]

from fo_games.decide import GroundSolution, OracleVerdict
from fo_games.engine import SynthesisResult
from fo_games.entity import BaseModel
from fo_games.game import Definition, Game, Strategy
from fo_games.logic import Formula, GroundModel, parse_formula
from fo_games.monadic import MonadicVerdict
from fo_games.selfcomp import AdmissibilityReport

SCHEMA_VERSION = 1

EXIT_SAFE = 0
EXIT_UNSAFE = 1
EXIT_UNKNOWN = 2
EXIT_ERROR = 3

EXIT_CODES = {"safe": EXIT_SAFE, "unsafe": EXIT_UNSAFE, "unknown": EXIT_UNKNOWN}


def canonical_texts(value) -> frozendict:
    """Canonical text of every formula or definition in a map, sorted by key."""
    result = {}
    for name, item in sorted(dict(value).items()):
        to_text = getattr(item, "to_text", None)
        result[str(name)] = to_text() if to_text is not None else str(item)
    return frozendict(result)


def _freeze(value) -> frozendict:
    return frozendict(sorted(dict(value).items()))


class RunStats(BaseModel):
    h: int = 0
    strengthenings: int = 0
    max_label_size: int = 0
    gamma_k: frozendict = Field(default_factory=frozendict)
    small_model_bound: Optional[int] = None

    _freeze_gamma = validator("gamma_k", pre=True, allow_reuse=True)(_freeze)


class RunTimings(BaseModel):
    phases_ms: frozendict = Field(default_factory=frozendict)
    elapsed_ms: float = 0
    memory_rss: int = 0

    _freeze_phases = validator("phases_ms", pre=True, allow_reuse=True)(_freeze)


class RunReport(BaseModel):
    """Machine-readable outcome of one command.

    Fields are emitted in declaration order and every map is sorted by key, so equal runs
    give equal JSON apart from ``timings``. Formulas and strategies are stored as canonical
    text which the game parser reads back.

    Examples
    --------

    >>> from fo_games.cli.report import RunReport
    >>> report = RunReport(command=("verify", "fixture:conference"), game="fixture:conference", verdict="safe")
    >>> list(report.serialize())[:4]
    ['schema_version', 'command', 'game', 'verdict']
    >>> report.exit_code()
    0
    """

    schema_version: int = SCHEMA_VERSION
    command: Tuple[str, ...] = ()
    game: str
    verdict: Literal["safe", "unsafe", "unknown"]
    fragment: Optional[str] = None
    invariant_status: str = "none"
    invariant: frozendict = Field(default_factory=frozendict)
    strategies: frozendict = Field(default_factory=frozendict)
    exact: frozendict = Field(default_factory=frozendict)
    original_strategies: frozendict = Field(default_factory=frozendict)
    stats: RunStats = Field(default_factory=RunStats)
    timings: RunTimings = Field(default_factory=RunTimings)
    bounded: bool = False
    countermodel: Optional[GroundModel] = None
    trace: Optional[GroundSolution] = None
    oracle: Optional[OracleVerdict] = None
    admissibility: Optional[AdmissibilityReport] = None
    diagnostics: Tuple[str, ...] = ()

    _to_texts = validator("invariant", "strategies", "original_strategies", pre=True, allow_reuse=True)(
        canonical_texts,
    )
    _freeze_exact = validator("exact", pre=True, allow_reuse=True)(_freeze)

    @classmethod
    def from_synthesis(cls, command: Tuple[str, ...], game: str, result: SynthesisResult) -> RunReport:
        stats = result.stats
        return cls(
            command=command,
            game=game,
            verdict=result.verdict,
            invariant_status=result.invariant_status,
            invariant=result.invariant,
            strategies=result.strategies.choices,
            exact=result.exact,
            stats=RunStats(
                h=stats.h,
                strengthenings=stats.strengthenings,
                max_label_size=stats.max_label_size,
                gamma_k=stats.gamma_k,
            ),
            timings=RunTimings(phases_ms=stats.phases_ms, elapsed_ms=stats.elapsed_ms, memory_rss=stats.memory_rss),
            bounded=result.bounded,
            countermodel=result.witness,
            trace=result.trace if result.trace is not None and result.trace.winner == "A" else None,
            diagnostics=result.diagnostics,
        )

    @classmethod
    def from_monadic(cls, command: Tuple[str, ...], game: str, result: MonadicVerdict) -> RunReport:
        return cls(
            command=command,
            game=game,
            verdict=result.verdict,
            fragment=result.fragment,
            invariant_status="inferred" if result.verdict == "safe" else "none",
            invariant=result.invariant,
            stats=RunStats(h=result.h, small_model_bound=result.small_model_bound),
            countermodel=result.witness,
        )

    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def witness_size(self) -> Optional[int]:
        if self.trace is not None:
            return self.trace.size
        if self.countermodel is not None:
            return self.countermodel.size
        return None

    def invariant_for(self, game: Game) -> Mapping[str, Formula]:
        constants = game.signature.constants
        return {node: parse_formula(text, constants) for node, text in self.invariant.items()}

    def strategy(self) -> Strategy:
        return Strategy(choices={name: Definition.from_text(text) for name, text in self.strategies.items()})

    def render(self) -> str:
        """Human-readable rendering of the report."""
        lines: List[str] = [f"verdict: {self.verdict}"]
        if self.fragment:
            lines.append(f"fragment: {self.fragment}")
        if self.bounded:
            lines.append("confidence: bounded")
        if self.invariant:
            lines.append(f"invariant ({self.invariant_status}):")
            lines.extend(f"    {node}: {text}" for node, text in self.invariant.items())
        if self.strategies:
            lines.append("strategy:")
            for name, text in self.strategies.items():
                marker = "" if self.exact.get(name, True) else "  [under-approximation]"
                lines.append(f"    {name}{text}{marker}")
        if self.countermodel is not None:
            lines.append(f"countermodel: {self.countermodel.to_text()}")
        if self.trace is not None:
            moves = " ".join(move.edge for move in self.trace.moves) or "(none)"
            lines.append(f"trace: |U|={self.trace.size}, moves {moves}, violation at {self.trace.violation}")
        if self.oracle is not None:
            lines.append(f"oracle: {self.oracle.verdict} up to |U|={self.oracle.max_size}")
        if self.admissibility is not None:
            lines.append(f"admissible: {'yes' if self.admissibility.admissible else 'no'}")
        if self.original_strategies:
            lines.append("strategy for the original game:")
            lines.extend(f"    {name}{text}" for name, text in self.original_strategies.items())
        lines.extend(f"note: {message}" for message in self.diagnostics)
        return "\n".join(lines)

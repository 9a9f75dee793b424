# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

from typing import Optional


class FOGamesError(Exception):
    """Base class of every error raised by the solver."""


class FormulaParseError(FOGamesError, ValueError):
    """Syntax error in formula, game, invariant or NI-spec text.

    Examples
    --------

    >>> from fo_games.exceptions import FormulaParseError
    >>> str(FormulaParseError("Expected ';'", line=3, column=7))
    "line 3, column 7: Expected ';'"
    """

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class GameSemanticError(FOGamesError, ValueError):
    """Well-formed text describing an ill-formed game."""


class MissingSubstitutionError(FOGamesError, KeyError):
    def __init__(self, predicate: str):
        self.predicate = predicate
        super().__init__(f"Substitution has no entry for state predicate {predicate!r}")

    def __str__(self) -> str:
        return self.args[0]


class CNFBudgetExceededError(FOGamesError, RuntimeError):
    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"CNF matrix exceeds the clause budget of {budget}")


class EnumerationBudgetError(FOGamesError, RuntimeError):
    def __init__(self, what: str, estimate: int, budget: int):
        self.estimate = estimate
        self.budget = budget
        super().__init__(f"{what} requires about {estimate} items, budget is {budget}")


class FragmentError(FOGamesError, ValueError):
    """Input falls outside the logical fragment a procedure decides."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        self.detail = detail
        message = f"Fragment condition violated: {condition}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class NonMonadicError(FragmentError):
    def __init__(self, detail: str):
        super().__init__("formula must be monadic", detail)


class BoundEqualityError(FragmentError):
    pass


class PreconditionError(FOGamesError, ValueError):
    def __init__(self, message: str, edge: Optional[str] = None):
        self.edge = edge
        if edge:
            message = f"{message} (edge {edge})"
        super().__init__(message)


class UncoveredStrategyError(FOGamesError, KeyError):
    def __init__(self, predicates):
        self.predicates = sorted(predicates)
        super().__init__(f"Strategy does not cover B predicates: {', '.join(self.predicates)}")

    def __str__(self) -> str:
        return self.args[0]


class InadmissibleStrategyError(FOGamesError, ValueError):
    pass


class NotSimpleError(FOGamesError, ValueError):
    def __init__(self, predicate: str):
        self.predicate = predicate
        super().__init__(f"Normal form for {predicate!r} has a nontrivial mixed part H")


class NonUniversalError(FOGamesError, ValueError):
    def __init__(self, what: str):
        super().__init__(f"Expected a universal formula: {what}")


class UnknownFixtureError(FOGamesError, KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Unknown fixture {name!r}")

    def __str__(self) -> str:
        return self.args[0]


class UnsupportedInstructionError(FOGamesError, ValueError):
    pass


class MalformedPrefixError(FOGamesError, ValueError):
    pass


class NonComposablePathError(FOGamesError, ValueError):
    pass


class SolverBackendError(FOGamesError, RuntimeError):
    pass


class ConfigurationError(FOGamesError, ValueError):
    pass


class OracleDisagreementError(FOGamesError, RuntimeError):
    def __init__(self, verdict: str, oracle: str, max_size: int):
        self.verdict = verdict
        self.oracle = oracle
        self.max_size = max_size
        super().__init__(f"Verdict {verdict} disagrees with the ground game ({oracle} up to |U|={max_size})")


class ReplayMismatchError(FOGamesError, RuntimeError):
    pass

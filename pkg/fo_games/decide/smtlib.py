# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""SMT-LIB2 export of first-order formulas and an external solver runner."""

from __future__ import annotations

import logging
import re
import subprocess  # noqa: S404
import tempfile
from pathlib import Path
from typing import List, Optional

from fo_games.config import SolverConfig, current_config
from fo_games.exceptions import FragmentError, SolverBackendError
from fo_games.logic import (
    And,
    Atom,
    Bottom,
    Eq,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    Term,
    Top,
    constants,
    expand_counting,
    free_vars,
    has_so_quantifier,
    predicates,
)

log = logging.getLogger(__name__)

SORT = "U"
SIMPLE_SYMBOL = re.compile(r"^[A-Za-z~!@$%^&*_+=<>.?/-][A-Za-z0-9~!@$%^&*_+=<>.?/-]*$")


def symbol(name: str) -> str:
    """SMT-LIB symbol for ``name``, quoted when it is not a simple symbol.

    >>> from fo_games.decide import symbol
    >>> symbol("Conf"), symbol("Conf'")
    ('Conf', "|Conf'|")
    """
    if SIMPLE_SYMBOL.match(name):
        return name
    return f"|{name}|"


def _term(term: Term) -> str:
    return symbol(term.name)


def _render(formula: Formula) -> str:  # noqa: WPS212
    if isinstance(formula, Top):
        return "true"
    if isinstance(formula, Bottom):
        return "false"
    if isinstance(formula, Atom):
        if not formula.args:
            return symbol(formula.pred)
        return f"({symbol(formula.pred)} {' '.join(_term(arg) for arg in formula.args)})"
    if isinstance(formula, Eq):
        return f"(= {_term(formula.left)} {_term(formula.right)})"
    if isinstance(formula, Not):
        return f"(not {_render(formula.body)})"
    if isinstance(formula, And):
        return f"(and {' '.join(_render(item) for item in formula.items)})"
    if isinstance(formula, Or):
        return f"(or {' '.join(_render(item) for item in formula.items)})"
    if isinstance(formula, (Forall, Exists)):
        keyword = "forall" if isinstance(formula, Forall) else "exists"
        bound = " ".join(f"({symbol(var)} {SORT})" for var in formula.vars)
        return f"({keyword} ({bound}) {_render(formula.body)})"
    raise FragmentError("no second-order quantifiers", formula.to_text())


def to_smtlib(formula: Formula) -> str:
    """SMT-LIB2 script asserting ``formula`` over one uninterpreted sort.

    Free variables are declared as constants. The output only depends on the formula.

    Examples
    --------

    >>> from fo_games.logic import parse_formula, TRUE
    >>> from fo_games.decide import to_smtlib
    >>> print(to_smtlib(TRUE))
    (set-logic UF)
    (declare-sort U 0)
    (assert true)
    (check-sat)
    >>> print(to_smtlib(parse_formula("forall x. P(x) | x != c", constants=["c"])))
    (set-logic UF)
    (declare-sort U 0)
    (declare-const c U)
    (declare-fun P (U) Bool)
    (assert (forall ((x U)) (or (P x) (not (= c x)))))
    (check-sat)
    """
    if has_so_quantifier(formula):
        raise FragmentError("no second-order quantifiers", formula.to_text())
    formula = expand_counting(formula)
    lines: List[str] = ["(set-logic UF)", f"(declare-sort {SORT} 0)"]
    for name in sorted(constants(formula) | set(free_vars(formula))):
        lines.append(f"(declare-const {symbol(name)} {SORT})")
    for pred, arity in sorted(predicates(formula).items()):
        lines.append(f"(declare-fun {symbol(pred)} ({' '.join([SORT] * arity)}) Bool)")
    lines.append(f"(assert {_render(formula)})")
    lines.append("(check-sat)")
    return "\n".join(lines)


def run_smt_solver(script: str, config: Optional[SolverConfig] = None) -> bool:
    """Run the external solver named by ``smt_solver`` and return whether it answered ``sat``.

    The first output token must be ``sat`` or ``unsat``; anything else, a nonzero exit code
    or a missing solver raises :obj:`SolverBackendError`.
    """
    config = current_config(config)
    if not config.smt_solver:
        raise SolverBackendError("No external SMT solver configured, set FO_GAMES_SMT_SOLVER")

    with tempfile.TemporaryDirectory() as directory:
        path = Path(directory) / "query.smt2"
        path.write_text(script + "\n", encoding="utf-8")
        log.debug("|SMT| Running %s on %s", config.smt_solver, path)
        try:
            completed = subprocess.run(  # noqa: S603
                [config.smt_solver, str(path)],
                capture_output=True,
                text=True,
                check=False,
            )
        except OSError as e:
            raise SolverBackendError(f"Cannot run SMT solver {config.smt_solver!r}: {e}") from e

    if completed.returncode != 0:
        raise SolverBackendError(
            f"SMT solver exited with code {completed.returncode}: {completed.stderr.strip() or completed.stdout.strip()}",
        )
    tokens = completed.stdout.split()
    answer = tokens[0] if tokens else ""
    if answer not in {"sat", "unsat"}:
        raise SolverBackendError(f"Unexpected SMT solver answer {answer!r}")
    return answer == "sat"

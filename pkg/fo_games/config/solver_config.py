# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

import logging
import os
from typing import Optional

try:
    from pydantic.v1 import Field, validator
except (ImportError, AttributeError):
    from pydantic import Field, validator  # type: ignore[no-redef, assignment]

from fo_games.entity import BaseModel

log = logging.getLogger(__name__)


class SolverConfig(BaseModel):
    """Tunables shared by every solver component.

    Entering the config as a context manager makes it the current one,
    see :obj:`ConfigStackManager <fo_games.config.config_stack_manager.ConfigStackManager>`.

    Parameters
    ----------
    clause_budget : int, default: ``10000``
        Maximal number of clauses a distributive CNF may have.

    max_iter : int, default: ``20``
        Cap on the number of weakest-precondition iterations.

    max_gamma : int, default: ``5``
        Cap on ``k`` when iterating the choice sequence of a non-simple normal form.

    bounded_size : int, default: ``3``
        Universe size used by bounded-model checks outside the decidable fragment.

    gamma_universe : int, default: ``8``
        Largest small-model size of one implication check of the choice sequence; the
        sequence stops unstabilized when a check needs more.

    max_universe : int, default: ``3``
        Largest universe used by the ground game oracle.

    atom_budget : int, default: ``4096``
        Maximal number of ground atoms in one grounding.

    ground_budget : int, default: ``2 ** 20``
        Maximal number of positions of an explicit ground game.

    instance_budget : int, default: ``256``
        Maximal number of Herbrand instances produced for one existential block.

    approx : bool, default: ``False``
        Truncate every precondition clause to ``literal_budget`` literals while iterating.

    literal_budget : int, default: ``6``
        Clause width kept in approximation mode.

    smt_solver : str, optional
        Path to an external SMT-LIB2 solver, defaults to ``FO_GAMES_SMT_SOLVER``.

    Examples
    --------

    >>> from fo_games.config import SolverConfig, ConfigStackManager
    >>> with SolverConfig(max_iter=3):
    ...     ConfigStackManager.get_current().max_iter
    3
    >>> ConfigStackManager.get_current().max_iter
    20
    """

    clause_budget: int = Field(default=10000, gt=0)
    max_iter: int = Field(default=20, ge=0)
    max_gamma: int = Field(default=5, ge=0)
    bounded_size: int = Field(default=3, gt=0)
    gamma_universe: int = Field(default=8, gt=0)
    max_universe: int = Field(default=3, gt=0)
    atom_budget: int = Field(default=4096, gt=0)
    ground_budget: int = Field(default=2**20, gt=0)
    instance_budget: int = Field(default=256, gt=0)
    approx: bool = False
    literal_budget: int = Field(default=6, gt=0)
    smt_solver: Optional[str] = None

    @validator("smt_solver", pre=True, always=True)
    def _smt_solver_from_env(cls, value):  # noqa: N805
        return value or os.getenv("FO_GAMES_SMT_SOLVER") or None

    def __enter__(self):
        # hack to avoid circular imports
        from fo_games.config.config_stack_manager import ConfigStackManager

        log.debug("|%s| Entered stack at level %d", self.__class__.__name__, ConfigStackManager.get_current_level())
        ConfigStackManager.push(self)

        self._log_parameters()
        return self

    def __exit__(self, _exc_type, _exc_value, _traceback):
        from fo_games.config.config_stack_manager import ConfigStackManager

        log.debug(
            "|%s| Exiting stack at level %d",
            self.__class__.__name__,
            ConfigStackManager.get_current_level() - 1,
        )
        ConfigStackManager.pop()
        return False

    def _log_parameters(self) -> None:
        options = self.dict(by_alias=True, exclude_none=True)
        log.info("|%s| Using options:", self.__class__.__name__)
        for option, value in options.items():
            log.info("    %s = %r", option, value)

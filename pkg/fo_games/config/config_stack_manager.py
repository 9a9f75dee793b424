# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

from collections import deque
from typing import ClassVar, Optional

from fo_games.config.solver_config import SolverConfig


class ConfigStackManager:
    """
    Class used to store stack of entered solver configurations.
    """

    _stack: ClassVar[deque[SolverConfig]] = deque()

    @classmethod
    def push(cls, config: SolverConfig) -> None:
        """Push config object to stack"""
        cls._stack.append(config)

    @classmethod
    def pop(cls) -> SolverConfig:
        """Pop latest config object from stack"""
        return cls._stack.pop()

    @classmethod
    def get_current_level(cls) -> int:
        """Get current number of objects in the stack"""
        return len(cls._stack)

    @classmethod
    def get_current(cls) -> SolverConfig:
        """
        Get config set by the innermost context manager, or the default one.

        Examples
        --------

        >>> from fo_games.config import ConfigStackManager, SolverConfig
        >>> with SolverConfig(max_gamma=2):
        ...     ConfigStackManager.get_current().max_gamma
        2
        >>> ConfigStackManager.get_current() == SolverConfig()
        True
        """
        if cls._stack:
            return cls._stack[-1]

        return SolverConfig()


def current_config(config: Optional[SolverConfig] = None) -> SolverConfig:
    """Return ``config`` if given, otherwise the current one."""
    if config is not None:
        return config
    return ConfigStackManager.get_current()

# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from fo_games.config.config_detect import detect_solver_config, solver_config_from
from fo_games.config.config_stack_manager import ConfigStackManager, current_config
from fo_games.config.solver_config import SolverConfig

__all__ = [
    "ConfigStackManager",
    "SolverConfig",
    "current_config",
    "detect_solver_config",
    "solver_config_from",
]

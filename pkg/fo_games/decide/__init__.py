# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from fo_games.decide.bsr import (
    EntailmentResult,
    bsr_sat,
    bsr_valid,
    entails,
    small_model_size,
)
from fo_games.decide.ground_game import (
    GroundGame,
    GroundSolution,
    Move,
    OracleVerdict,
    StrategyEntry,
    ground_game_solve,
    oracle_verdict,
    replay,
    state_from_model,
)
from fo_games.decide.smtlib import run_smt_solver, symbol, to_smtlib

__all__ = [
    "EntailmentResult",
    "GroundGame",
    "GroundSolution",
    "Move",
    "OracleVerdict",
    "StrategyEntry",
    "bsr_sat",
    "bsr_valid",
    "entails",
    "ground_game_solve",
    "oracle_verdict",
    "replay",
    "run_smt_solver",
    "small_model_size",
    "state_from_model",
    "symbol",
    "to_smtlib",
]

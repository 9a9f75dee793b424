# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from fo_games.cli.main import build_parser, load_game, main
from fo_games.cli.report import SCHEMA_VERSION, RunReport, RunStats, RunTimings

__all__ = [
    "SCHEMA_VERSION",
    "RunReport",
    "RunStats",
    "RunTimings",
    "build_parser",
    "load_game",
    "main",
]

# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from fo_games.selfcomp.admissible import check_admissible, translate_strategy_back
from fo_games.selfcomp.compose import self_compose
from fo_games.selfcomp.models import AdmissibilityReport, ComposedGame, NiSpec
from fo_games.selfcomp.parser import parse_ni_spec

__all__ = [
    "AdmissibilityReport",
    "ComposedGame",
    "NiSpec",
    "check_admissible",
    "parse_ni_spec",
    "self_compose",
    "translate_strategy_back",
]

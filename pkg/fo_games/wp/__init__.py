# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from fo_games.wp.iteration import (
    iterate,
    safety_verdict,
    satisfiable,
    split_conjuncts,
)
from fo_games.wp.models import (
    IterationResult,
    IterationStep,
    IterationTrace,
    SafetyVerdict,
)
from fo_games.wp.transformer import wp_edge, wp_path

__all__ = [
    "IterationResult",
    "IterationStep",
    "IterationTrace",
    "SafetyVerdict",
    "iterate",
    "safety_verdict",
    "satisfiable",
    "split_conjuncts",
    "wp_edge",
    "wp_path",
]

# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from fo_games.engine.certify import (
    boundary_conditions,
    check_boundary,
    check_inductive,
    check_preconditions,
    inductive_conditions,
)
from fo_games.engine.models import (
    CertificateReport,
    Obligation,
    SynthesisResult,
    SynthesisStats,
)
from fo_games.engine.strengthen import (
    approximate,
    strengthen_universal,
    universal_strengthener,
)
from fo_games.engine.synthesis import extract_strategy, synthesize, verify

__all__ = [
    "CertificateReport",
    "Obligation",
    "SynthesisResult",
    "SynthesisStats",
    "approximate",
    "boundary_conditions",
    "check_boundary",
    "check_inductive",
    "check_preconditions",
    "extract_strategy",
    "inductive_conditions",
    "strengthen_universal",
    "synthesize",
    "universal_strengthener",
    "verify",
]

# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from fo_games.monadic.abstraction import (
    abstract_disequalities,
    abstract_equalities,
    multiplicity,
    multiplicity_threshold,
)
from fo_games.monadic.cqnf import check_monadic, rank, to_cqnf
from fo_games.monadic.decide import (
    MonadicVerdict,
    decide_mono_A,
    decide_mono_B,
    decide_monadic,
    decide_plain,
    detect_fragment,
    monadic_entails,
    monadic_small_model_bound,
)
from fo_games.monadic.elimination import eliminate_monadic

__all__ = [
    "MonadicVerdict",
    "abstract_disequalities",
    "abstract_equalities",
    "check_monadic",
    "decide_mono_A",
    "decide_mono_B",
    "decide_monadic",
    "decide_plain",
    "detect_fragment",
    "eliminate_monadic",
    "monadic_entails",
    "monadic_small_model_bound",
    "multiplicity",
    "multiplicity_threshold",
    "rank",
    "to_cqnf",
]

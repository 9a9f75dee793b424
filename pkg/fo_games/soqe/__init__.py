# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from fo_games.soqe.ackermannian import is_ackermannian, weakest_strategy_ackermannian
from fo_games.soqe.choice import (
    ackermann_eliminate,
    gamma,
    gamma_iterate,
    general_choice,
    h_power,
)
from fo_games.soqe.models import ChoiceResult, Elimination, NormalForm
from fo_games.soqe.normal_form import b_prenex, normal_form
from fo_games.soqe.pipeline import choose, eliminate_exists, eliminate_so
from fo_games.soqe.universal import eliminate_forall

__all__ = [
    "ChoiceResult",
    "Elimination",
    "NormalForm",
    "ackermann_eliminate",
    "b_prenex",
    "choose",
    "eliminate_exists",
    "eliminate_forall",
    "eliminate_so",
    "gamma",
    "gamma_iterate",
    "general_choice",
    "h_power",
    "is_ackermannian",
    "normal_form",
    "weakest_strategy_ackermannian",
]

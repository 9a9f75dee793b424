# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from fo_games.game.counter_machine import (
    CounterMachine,
    Instruction,
    counter_machine_game,
)
from fo_games.game.fixtures import (
    FixtureRegistry,
    builtin_fixture,
    register_fixture,
)
from fo_games.game.models import (
    Definition,
    Edge,
    Game,
    Signature,
    Strategy,
    check_game,
    formal_params,
)
from fo_games.game.parser import parse_game, parse_invariant
from fo_games.game.printer import print_game
from fo_games.game.so_games import game_from_so_formula, prime
from fo_games.game.strategy import apply_strategy, check_strategy

__all__ = [
    "CounterMachine",
    "Definition",
    "Edge",
    "FixtureRegistry",
    "Game",
    "Instruction",
    "Signature",
    "Strategy",
    "apply_strategy",
    "builtin_fixture",
    "check_game",
    "check_strategy",
    "counter_machine_game",
    "formal_params",
    "game_from_so_formula",
    "parse_game",
    "parse_invariant",
    "prime",
    "print_game",
    "register_fixture",
]

import os
import random
from typing import Callable, Sequence

import pytest

# disable failing plugin import
os.environ["FO_GAMES_PLUGINS_BLACKLIST"] = "failing-plugin"

from fo_games.game import Game, parse_game

STATE = ("P", "Q")
INITS = (
    "true",
    "forall x. !P(x)",
    "forall x. !Q(x)",
    "forall x. P(x) | Q(x)",
    "forall x. !P(x) | Q(x)",
    "exists x. P(x)",
)
UNIVERSAL_ASSERTIONS = (
    "forall x. !P(x)",
    "forall x. Q(x)",
    "forall x. P(x) | Q(x)",
    "forall x. !P(x) | !Q(x)",
    "forall x. P(x) | !Q(x)",
)


def _literal(rng: random.Random, names: Sequence[str]) -> str:
    name = rng.choice(names)
    return f"{name}(y1)" if rng.random() < 0.5 else f"!{name}(y1)"


def _update(rng: random.Random, names: Sequence[str], first: str = "") -> str:
    literals = [first] if first else []
    literals.extend(_literal(rng, names) for _ in range(rng.randint(1, 2)))
    rng.shuffle(literals)
    body = literals[0]
    for literal in literals[1:]:
        body = f"({body}) {rng.choice('&|')} {literal}"
    return body


def make_random_game(rng: random.Random, owners: str = "AB", assertions: Sequence[str] = UNIVERSAL_ASSERTIONS) -> Game:
    """Two-edge game over unary ``P``, ``Q`` with one fresh input per edge of an owner in ``owners``.

    With empty ``owners`` the edges read no inputs.
    """
    inputs = {"A": [], "B": []}
    edges = []
    for index, (source, target) in enumerate([("n0", "n1"), ("n1", "n2")], start=1):
        owner = rng.choice(owners or "AB")
        names = list(STATE)
        header = f"edge {source} -> {target} owner {owner}"
        used = ""
        if owners:
            used = f"{owner}{index}"
            inputs[owner].append(used)
            names.append(used)
            header += f" input {used}"
        first = ""
        if used:
            first = f"{used}(y1)" if rng.random() < 0.5 else f"!{used}(y1)"
        pred, *rest = rng.sample(STATE, rng.randint(1, 2))
        updates = [f"{pred}(y1) := {_update(rng, names, first)};"]
        updates.extend(f"{other}(y1) := {_update(rng, names)};" for other in rest)
        edges.append(f"{header} {{ {' '.join(updates)} }}")

    lines = ["state P/1, Q/1;"]
    if inputs["A"]:
        lines.append(f"inputA {', '.join(f'{name}/1' for name in inputs['A'])};")
    if inputs["B"]:
        lines.append(f"inputB {', '.join(f'{name}/1' for name in inputs['B'])};")
    lines.extend(["node n0 start;", "node n1;", "node n2;", *edges])
    lines.append(f"init {rng.choice(INITS)};")
    lines.append(f"assert n2: {rng.choice(assertions)};")
    if rng.random() < 0.3:
        lines.append(f"assert n1: {rng.choice(assertions)};")
    return parse_game("\n".join(lines), name="random")


@pytest.fixture
def random_game() -> Callable[..., Game]:
    return make_random_game

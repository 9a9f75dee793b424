import random

import pytest

from fo_games.config import SolverConfig
from fo_games.logic import (
    apply_substitution,
    bounded_valid,
    equivalent_bounded,
    implies,
    parse_formula,
    predicates,
    so_exists,
    so_forall,
)
from fo_games.soqe import ackermann_eliminate, eliminate_forall, gamma_iterate, normal_form

SIDE_LITERALS = ("C(x)", "!C(x)", "D(x)", "!D(x)", "E(x, y)", "!E(x, y)", "E(y, x)", "x = y", "x != y")
UNARY_ATOMS = ("C(x)", "D(x)", "E(x, x)")
MIXED = "!E(x, y) | !B(x) | B(y)"


def _universal_formula(rng: random.Random) -> str:
    clauses = []
    for _ in range(rng.randint(1, 3)):
        literals = rng.sample(SIDE_LITERALS, rng.randint(0, 2))
        literals += [rng.choice(("A(x)", "!A(x)", "A(y)", "!A(y)")) for _ in range(rng.randint(1, 2))]
        rng.shuffle(literals)
        clauses.append(f"(forall x, y. {' | '.join(literals)})")
    return " & ".join(clauses)


def _side(rng: random.Random) -> str:
    chosen = rng.sample(UNARY_ATOMS, rng.randint(1, 2))
    return " | ".join(item if rng.random() < 0.5 else f"!{item}" for item in chosen)


def _simple_formula(rng: random.Random) -> str:
    clauses = [f"(forall x. {_side(rng)} | {rng.choice(('B(x)', '!B(x)'))})" for _ in range(rng.randint(1, 3))]
    if rng.random() < 0.5:
        clauses.append(f"(forall x. {_side(rng)})")
    return " & ".join(clauses)


def _recursive_formula(rng: random.Random) -> str:
    clauses = [f"(forall x. {_side(rng)} | B(x))", f"(forall x. {_side(rng)} | !B(x))"]
    extra = rng.choice(("", "C(x) | ", "D(y) | "))
    clauses.append(f"(forall x, y. {extra}{MIXED})")
    return " & ".join(clauses)


@pytest.mark.parametrize("seed", range(200))
def test_eliminate_forall_matches_enumeration(seed):
    formula = parse_formula(_universal_formula(random.Random(seed)))

    result = eliminate_forall(formula, "A")

    assert "A" not in predicates(result)
    assert equivalent_bounded(so_forall("A", 1, formula), result, 3)


@pytest.mark.parametrize("seed", range(100))
def test_ackermann_matches_enumeration(seed):
    formula = parse_formula(_simple_formula(random.Random(seed)))

    result = ackermann_eliminate(normal_form(formula, "B"))

    assert result.exact
    assert equivalent_bounded(so_exists("B", 1, formula), result.eliminated, 3)
    plugged = apply_substitution(formula, {"B": result.definition()})
    assert equivalent_bounded(so_exists("B", 1, formula), plugged, 3)


@pytest.mark.parametrize("seed", range(40))
def test_gamma_choice_is_sound(seed):
    formula = parse_formula(_recursive_formula(random.Random(seed)))

    with SolverConfig(gamma_universe=4):
        result = gamma_iterate(normal_form(formula, "B"), max_k=2)

    assert "B" not in predicates(result.eliminated)
    assert bounded_valid(implies(result.eliminated, so_exists("B", 1, formula)), 3) is None
    plugged = apply_substitution(formula, {"B": result.definition()})
    assert bounded_valid(implies(plugged, so_exists("B", 1, formula)), 3) is None


@pytest.mark.parametrize("seed", range(10))
def test_elimination_is_deterministic(seed):
    formula = parse_formula(_recursive_formula(random.Random(seed)))

    first = gamma_iterate(normal_form(formula, "B"), max_k=1)
    second = gamma_iterate(normal_form(formula, "B"), max_k=1)

    assert first.eliminated == second.eliminated
    assert first.choice == second.choice

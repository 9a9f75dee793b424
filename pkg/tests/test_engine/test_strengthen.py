from fo_games.config import SolverConfig
from fo_games.engine import approximate, strengthen_universal, universal_strengthener
from fo_games.logic import bounded_valid, implies, is_universal, parse_formula


def test_strengthen_universal_implies_input():
    formula = parse_formula("forall x. exists y. E(x, y) & P(y)")

    result = strengthen_universal(formula)

    assert is_universal(result)
    assert bounded_valid(implies(result, formula), 3) is None


def test_strengthen_universal_uses_constants():
    assert strengthen_universal(parse_formula("exists x. P(x)", constants=["c"])).to_text() == "P(c)"


def test_strengthen_universal_keeps_universal_formula():
    formula = parse_formula("forall x. P(x)")

    assert strengthen_universal(formula) is formula


def test_approximate_truncates_clauses():
    formula = parse_formula("forall x. P(x) | Q(x) | R(x)")

    result = approximate(formula, 2)

    assert result.to_text() == "forall v1. P(v1) | Q(v1)"
    assert bounded_valid(implies(result, formula), 3) is None
    assert approximate(formula, 3) is formula


def test_universal_strengthener_applies_approximation():
    formula = parse_formula("forall x. P(x) | Q(x) | R(x)")

    plain = universal_strengthener(SolverConfig())
    approx = universal_strengthener(SolverConfig(approx=True, literal_budget=1))

    assert plain(formula) is formula
    assert approx(formula).to_text() == "forall v1. P(v1)"

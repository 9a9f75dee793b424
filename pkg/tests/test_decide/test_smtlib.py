import os

import pytest

from fo_games.config import SolverConfig
from fo_games.decide import run_smt_solver, symbol, to_smtlib
from fo_games.exceptions import FragmentError, SolverBackendError
from fo_games.logic import parse_formula


def test_to_smtlib_declares_symbols():
    script = to_smtlib(parse_formula("forall x. Conf'(x, c) | Q", constants=["c"]))

    assert script.splitlines() == [
        "(set-logic UF)",
        "(declare-sort U 0)",
        "(declare-const c U)",
        "(declare-fun |Conf'| (U U) Bool)",
        "(declare-fun Q () Bool)",
        "(assert (forall ((x U)) (or (|Conf'| x c) Q)))",
        "(check-sat)",
    ]


def test_to_smtlib_expands_counting():
    script = to_smtlib(parse_formula("exists>=2 x. P(x)"))

    assert ">=" not in script
    assert "(exists" in script


def test_to_smtlib_rejects_second_order():
    with pytest.raises(FragmentError, match="no second-order quantifiers"):
        to_smtlib(parse_formula("exists B/1. forall x. B(x)"))


def test_symbol_quoting():
    assert symbol("P1") == "P1"
    assert symbol("A2_copy") == "A2_copy"
    assert symbol("Conf'") == "|Conf'|"


def test_run_smt_solver_requires_configuration(monkeypatch):
    monkeypatch.delenv("FO_GAMES_SMT_SOLVER", raising=False)

    with pytest.raises(SolverBackendError, match="No external SMT solver configured"):
        run_smt_solver("(check-sat)", SolverConfig())


def test_run_smt_solver_missing_binary(tmp_path):
    config = SolverConfig(smt_solver=str(tmp_path / "missing-solver"))

    with pytest.raises(SolverBackendError, match="Cannot run SMT solver"):
        run_smt_solver("(check-sat)", config)


@pytest.mark.skipif(not os.getenv("FO_GAMES_SMT_SOLVER"), reason="FO_GAMES_SMT_SOLVER is not set")
@pytest.mark.parametrize(
    "text, expected",
    [
        ("exists x. P(x)", True),
        ("(forall x. P(x)) & !P(c)", False),
    ],
)
def test_run_smt_solver(text, expected):
    assert run_smt_solver(to_smtlib(parse_formula(text, constants=["c"]))) is expected

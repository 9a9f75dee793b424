import pytest

from fo_games.config import ConfigStackManager, SolverConfig, current_config


def test_solver_config_defaults(monkeypatch):
    monkeypatch.delenv("FO_GAMES_SMT_SOLVER", raising=False)

    config = SolverConfig()

    assert config.clause_budget == 10000
    assert config.max_iter == 20
    assert config.max_gamma == 5
    assert config.gamma_universe == 8
    assert config.bounded_size == 3
    assert config.max_universe == 3
    assert config.ground_budget == 2**20
    assert not config.approx
    assert config.smt_solver is None


def test_solver_config_smt_solver_from_env(monkeypatch):
    monkeypatch.setenv("FO_GAMES_SMT_SOLVER", "/usr/bin/z3")

    assert SolverConfig().smt_solver == "/usr/bin/z3"
    assert SolverConfig(smt_solver="cvc5").smt_solver == "cvc5"


@pytest.mark.parametrize(
    "options",
    [
        {"clause_budget": 0},
        {"max_iter": -1},
        {"max_gamma": -1},
        {"gamma_universe": 0},
        {"bounded_size": 0},
        {"ground_budget": 0},
        {"literal_budget": 0},
        {"max_iter": "many"},
    ],
)
def test_solver_config_invalid(options):
    with pytest.raises(ValueError):
        SolverConfig(**options)


def test_solver_config_is_frozen():
    config = SolverConfig()

    with pytest.raises(TypeError):
        config.max_iter = 5  # noqa: WPS122


def test_solver_config_stack():
    outer = SolverConfig(max_iter=3)
    inner = SolverConfig(max_iter=7)

    assert ConfigStackManager.get_current_level() == 0

    with outer:
        assert ConfigStackManager.get_current_level() == 1
        assert current_config().max_iter == 3

        with inner:
            assert ConfigStackManager.get_current_level() == 2
            assert current_config().max_iter == 7
            assert current_config(outer) is outer

        assert current_config() is outer

    assert ConfigStackManager.get_current_level() == 0
    assert current_config() == SolverConfig()


def test_solver_config_stack_after_exception():
    with pytest.raises(RuntimeError):
        with SolverConfig(max_gamma=1):
            raise RuntimeError("failed")

    assert ConfigStackManager.get_current_level() == 0

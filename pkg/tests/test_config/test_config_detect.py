import pytest
from omegaconf import OmegaConf

from fo_games.config import ConfigStackManager, detect_solver_config, solver_config_from


@pytest.mark.parametrize(
    "config_value",
    [
        {},
        42,
        "string",
        None,
        [1, 2, 3],
    ],
)
@pytest.mark.parametrize("config_constructor", [dict, OmegaConf.create])
def test_detect_solver_config_invalid_configs(config_constructor, config_value):
    @detect_solver_config("solver")
    def main(config):  # NOSONAR
        pass

    with pytest.raises((ValueError, TypeError)):
        conf = config_constructor(config_value)
        main(conf)


@pytest.mark.parametrize("invalid_key", [None, 123, []], ids=["None", "int", "list"])
def test_detect_solver_config_invalid_key_input(invalid_key):
    with pytest.raises(ValueError, match="key name must be a string"):

        @detect_solver_config(invalid_key)
        def main(config):  # NOSONAR
            pass


def test_detect_solver_config_empty_key_input():
    with pytest.raises(ValueError, match="Key value must be specified"):

        @detect_solver_config("")
        def main(config):  # NOSONAR
            pass


@pytest.mark.parametrize(
    "config, key",
    [
        ({"some": "value"}, "solver"),
        ({"a": {"b": {"solver": {}}}}, "a.b.unknown"),
        ({"a": {"b": {"solver": {}}}}, "unknown.b.solver"),
        ({"a": {"b": {"solver": {}}}}, "a..b"),
        ({"a": {"b": {"solver": {}}}}, ".a.b"),
    ],
)
@pytest.mark.parametrize("config_constructor", [dict, OmegaConf.create])
def test_detect_solver_config_missing_key(config_constructor, config, key):
    @detect_solver_config(key)
    def main(config):  # NOSONAR
        pass

    with pytest.raises(ValueError, match=f"The configuration does not contain a required key {key!r}"):
        main(config_constructor(config))


@pytest.mark.parametrize("config_constructor", [dict, OmegaConf.create])
def test_detect_solver_config_unknown_option(config_constructor):
    @detect_solver_config("solver")
    def main(config):  # NOSONAR
        pass

    with pytest.raises(ValueError, match="Unknown solver options: max_depth"):
        main(config_constructor({"solver": {"max_iter": 2, "max_depth": 4}}))


@pytest.mark.parametrize("config_constructor", [dict, OmegaConf.create])
@pytest.mark.parametrize("key", ["solver", "verification.solver"])
def test_detect_solver_config(config_constructor, key):
    options = {"max_iter": 10, "max_gamma": 3, "approx": True}
    conf = {"solver": options} if key == "solver" else {"verification": {"solver": options}}

    @detect_solver_config(key)
    def main(config):
        current = ConfigStackManager.get_current()
        assert current.max_iter == 10
        assert current.max_gamma == 3
        assert current.approx
        assert current.clause_budget == 10000

    main(config_constructor(conf))
    assert ConfigStackManager.get_current_level() == 0


def test_detect_solver_config_passes_arguments():
    @detect_solver_config("solver")
    def main(config, value, scale=1):
        return ConfigStackManager.get_current().max_iter * value * scale

    assert main({"solver": {"max_iter": 2}}, 3, scale=5) == 30


def test_solver_config_from_empty_section():
    assert solver_config_from(OmegaConf.create({"solver": None}), "solver").max_iter == 20

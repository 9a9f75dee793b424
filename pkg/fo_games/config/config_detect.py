# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

from functools import wraps
from typing import Any, Callable, Mapping

from omegaconf import DictConfig, OmegaConf

from fo_games.config.solver_config import SolverConfig


def parse_config(value: Any, key: str) -> dict:
    if value is None:
        return {}

    if isinstance(value, DictConfig):
        value = OmegaConf.to_container(value, resolve=True)

    if not isinstance(value, Mapping):
        raise ValueError(f"Wrong value {value!r} for {key!r} config item")

    unknown = sorted(set(value) - set(SolverConfig.__fields__))
    if unknown:
        raise ValueError(f"Unknown solver options: {', '.join(map(str, unknown))}")

    return dict(value)


def resolve_attr(conf: Mapping, config_key: str) -> Any:
    obj = {}

    try:
        if "." not in config_key:
            obj = conf[config_key]
        else:
            for name in config_key.split("."):
                obj = conf[name]
                conf = obj
    except Exception as e:
        raise ValueError(f"The configuration does not contain a required key {config_key!r}") from e

    return obj


def solver_config_from(conf: Mapping, key: str) -> SolverConfig:
    """Build a :obj:`SolverConfig` from the section ``key`` (dot-delimited) of ``conf``.

    Examples
    --------

    >>> from fo_games.config import solver_config_from
    >>> solver_config_from({"solver": {"max_iter": 4}}, "solver").max_iter
    4
    """
    return SolverConfig(**parse_config(resolve_attr(conf, key), key))


def detect_solver_config(key: str) -> Callable:
    """Run the decorated function inside the solver config stored in a config object.

    Parameters
    ----------
    key : str
        Full name of the config section with solver options, delimited by dot ``.``

    Examples
    --------

    Config

    .. code-block:: yaml
        :caption: conf/config.yaml

        verification:
            solver:
                max_iter: 10
                max_gamma: 3

    Using decorator:

    .. code-block:: python

        from omegaconf import OmegaConf

        from fo_games.config import detect_solver_config
        from fo_games.engine import synthesize


        @detect_solver_config(key="verification.solver")
        def main(config):
            # max_iter=10 and max_gamma=3 are used here
            return synthesize(game)


        main(OmegaConf.load("conf/config.yaml"))
    """

    if not isinstance(key, str):
        raise ValueError("key name must be a string")

    if not key:
        raise ValueError("Key value must be specified")

    def pre_wrapper(func: Callable):  # noqa: WPS430
        @wraps(func)
        def wrapper(config: Mapping, *args, **kwargs):
            if not config:
                raise ValueError("Config must be specified")

            with solver_config_from(config, key):
                return func(config, *args, **kwargs)

        return wrapper

    return pre_wrapper

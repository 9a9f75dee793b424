# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
import os

from fo_games.plugins import import_plugins
from fo_games.version import __version__

__all__ = ["__version__"]


def plugins_auto_import():
    """
    Automatically import all fo-games plugins.

    Executed while fo_games is being imported. Plugins usually register extra fixtures.

    See :ref:`plugins` documentation.
    """
    plugins_enabled = os.getenv("FO_GAMES_PLUGINS_ENABLED", "true").lower() != "false"
    if not plugins_enabled:
        return

    plugins_whitelist = list(filter(None, os.getenv("FO_GAMES_PLUGINS_WHITELIST", "").split(",")))
    plugins_blacklist = list(filter(None, os.getenv("FO_GAMES_PLUGINS_BLACKLIST", "").split(",")))

    import_plugins("fo_games.plugins", whitelist=plugins_whitelist, blacklist=plugins_blacklist)


plugins_auto_import()

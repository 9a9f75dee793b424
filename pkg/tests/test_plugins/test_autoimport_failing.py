import textwrap

import pytest

import fo_games


def test_autoimport_failing(monkeypatch):
    monkeypatch.delenv("FO_GAMES_PLUGINS_BLACKLIST", raising=False)

    error_msg = textwrap.dedent(
        r"""
        Error while importing plugin 'failing-plugin' from package 'failing' v0.1.0.

        Statement:
            import failing

        Check if plugin is compatible with current fo_games version \d+.\d+.\d+.

        You can disable loading this plugin by setting environment variable:
            FO_GAMES_PLUGINS_BLACKLIST='failing-plugin,failing-plugin'

        You can also define a whitelist of packages which can be loaded by fo_games:
            FO_GAMES_PLUGINS_WHITELIST='not-failing-plugin1,not-failing-plugin2'

        Plugins usually register additional game fixtures with @register_fixture.
        Plugin name may differ from package or module name, see package metadata for details
        """,
    ).strip()

    with pytest.raises(ImportError, match=error_msg):
        fo_games.plugins_auto_import()


def test_autoimport_failing_disabled(monkeypatch):
    monkeypatch.setenv("FO_GAMES_PLUGINS_ENABLED", "false")

    # no exception
    fo_games.plugins_auto_import()


def test_autoimport_failing_whitelist(monkeypatch):
    monkeypatch.delenv("FO_GAMES_PLUGINS_BLACKLIST", raising=False)

    # skip all plugins instead of some-other-plugin
    monkeypatch.setenv("FO_GAMES_PLUGINS_WHITELIST", "some-other-plugin")

    # no exception
    fo_games.plugins_auto_import()

    # import only failing-plugin
    monkeypatch.setenv("FO_GAMES_PLUGINS_WHITELIST", "failing-plugin")
    with pytest.raises(ImportError):
        fo_games.plugins_auto_import()


def test_autoimport_failing_blacklist(monkeypatch):
    # ignore failing plugin
    monkeypatch.setenv("FO_GAMES_PLUGINS_BLACKLIST", "failing-plugin")

    # no exception
    fo_games.plugins_auto_import()

    # return failing plugin back
    monkeypatch.setenv("FO_GAMES_PLUGINS_BLACKLIST", "some-other-plugin")
    with pytest.raises(ImportError):
        fo_games.plugins_auto_import()


def test_autoimport_failing_env_variables_priority(monkeypatch):
    # blacklist is applied after whitelist
    monkeypatch.setenv("FO_GAMES_PLUGINS_BLACKLIST", "failing-plugin")
    monkeypatch.setenv("FO_GAMES_PLUGINS_WHITELIST", "failing-plugin")

    fo_games.plugins_auto_import()

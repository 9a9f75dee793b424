import json

import pytest

from fo_games.cli.main import main

FLIP = """
state P/0;
node n0 start;
node n1;
edge n0 -> n1 owner A { P := !P; }
init true;
assert n1: P;
"""

MONO_B = """
state P/1;
inputB B1/1;
node n0 start;
node n1;
edge n0 -> n1 owner B { P(y1) := B1(y1); }
assert n1: forall x. P(x);
"""

NI_SPEC = "observer a; secret A2 declass !Conf(a, y2);"


@pytest.fixture
def flip_file(tmp_path):
    path = tmp_path / "flip.game"
    path.write_text(FLIP, encoding="utf-8")
    return path


def test_verify_conference(capsys):
    assert main(["verify", "fixture:conference"]) == 0

    out = capsys.readouterr().out
    assert "verdict: safe" in out
    assert "B1(y1, y2) :=" in out


def test_synthesize_json(capsys):
    assert main(["synthesize", "fixture:conference", "--json"]) == 0

    report = json.loads(capsys.readouterr().out)
    assert list(report)[:4] == ["schema_version", "command", "game", "verdict"]
    assert report["command"] == ["synthesize", "fixture:conference", "--json"]
    assert report["verdict"] == "safe"
    assert report["invariant_status"] == "inferred"
    assert set(report["invariant"]) == {"0", "1", "2", "3", "4"}
    assert list(report["strategies"]) == ["B1"]
    assert report["exact"] == {"B1": True}


def test_synthesize_unknown_exit_code(capsys):
    assert main(["synthesize", "fixture:transitive-closure"]) == 2
    assert "verdict: unknown" in capsys.readouterr().out


def test_unsafe_game_from_file(flip_file, capsys):
    assert main(["synthesize", str(flip_file)]) == 1

    out = capsys.readouterr().out
    assert "verdict: unsafe" in out
    assert "violation at n1" in out


def test_unsafe_json_has_trace(flip_file, capsys):
    assert main(["synthesize", str(flip_file), "--json"]) == 1

    report = json.loads(capsys.readouterr().out)
    assert report["game"] == str(flip_file)
    assert report["trace"]["winner"] == "A"
    assert report["countermodel"] is not None


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "missing.game"],
        ["verify", "fixture:chess"],
        ["verify"],
    ],
)
def test_input_errors(argv, capsys):
    assert main(argv) == 3
    assert "fo-games: error:" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "fixture:conference", "--unknown-flag"],
        ["check", "fixture:conference"],
        ["verify", "fixture:conference", "--max-iter", "many"],
        [],
    ],
)
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as e:
        main(argv)

    assert e.value.code == 3


def test_version(capsys):
    with pytest.raises(SystemExit) as e:
        main(["--version"])

    assert e.value.code == 0
    assert capsys.readouterr().out.startswith("fo-games ")


def test_config_file(tmp_path, capsys):
    config = tmp_path / "solver.yaml"
    config.write_text("solver:\n  max_iter: 0\n", encoding="utf-8")

    assert main(["synthesize", "fixture:conference", "--config", str(config)]) == 2
    assert "iteration cap reached" in capsys.readouterr().out

    # flags take precedence over the file
    assert main(["synthesize", "fixture:conference", "--config", str(config), "--max-iter", "20"]) == 0


@pytest.mark.parametrize(
    "content, error",
    [
        ("solver:\n  max_depth: 3\n", "Unknown solver options: max_depth"),
        ("solver:\n  max_iter: -1\n", "Invalid solver option max_iter"),
    ],
)
def test_invalid_config_file(tmp_path, capsys, content, error):
    config = tmp_path / "solver.yaml"
    config.write_text(content, encoding="utf-8")

    assert main(["verify", "fixture:conference", "--config", str(config)]) == 3
    assert error in capsys.readouterr().err


def test_invariant_file(tmp_path, capsys):
    invariant = tmp_path / "conference.inv"
    invariant.write_text(
        """
invariant 0: forall x, p, r. !Read(x, p, r);
invariant 2: forall x, p. !Conf(x, p) | !Assign(x, p);
invariant 3: forall x, p. !Conf(x, p) | !Assign(x, p);
invariant 4: forall x, p. !Conf(x, p) | !Assign(x, p);
""",
        encoding="utf-8",
    )

    assert main(["verify", "fixture:conference", "--invariant", str(invariant)]) == 0
    assert "invariant (inductive):" in capsys.readouterr().out


def test_smtlib_out(tmp_path, capsys):
    target = tmp_path / "smt"

    assert main(["verify", "fixture:conference", "--smtlib-out", str(target)]) == 0

    scripts = sorted(path.name for path in target.iterdir())
    assert scripts[0] == "000_init_0.smt2"
    assert scripts[6] == "006_edge_0_1.smt2"
    assert len(scripts) == 11
    assert all("(check-sat)" in (target / name).read_text(encoding="utf-8") for name in scripts)


def test_oracle_agrees(capsys):
    assert main(["verify", "fixture:conference", "--oracle", "1"]) == 0
    assert "oracle: safe up to |U|=1" in capsys.readouterr().out


def test_replay_safe_report(tmp_path, capsys):
    assert main(["synthesize", "fixture:conference", "--json"]) == 0
    report = tmp_path / "report.json"
    report.write_text(capsys.readouterr().out, encoding="utf-8")

    assert main(["verify", "--replay", str(report)]) == 0
    assert "replay reproduced the verdict" in capsys.readouterr().out


def test_replay_unsafe_report(tmp_path, flip_file, capsys):
    assert main(["synthesize", str(flip_file), "--json"]) == 1
    report = tmp_path / "report.json"
    report.write_text(capsys.readouterr().out, encoding="utf-8")

    assert main(["synthesize", "--replay", str(report)]) == 1


def test_replay_tampered_strategy(tmp_path, capsys):
    assert main(["synthesize", "fixture:conference", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    data["strategies"]["B1"] = "(y1, y2) := true"
    report = tmp_path / "report.json"
    report.write_text(json.dumps(data), encoding="utf-8")

    assert main(["verify", "--replay", str(report)]) == 3
    assert "Reported invariant and strategy fail" in capsys.readouterr().err


def test_decide_monadic(tmp_path, capsys):
    game = tmp_path / "mono.game"
    game.write_text(MONO_B, encoding="utf-8")

    assert main(["decide-monadic", str(game)]) == 0

    out = capsys.readouterr().out
    assert "verdict: safe" in out
    assert "fragment: monoB" in out


def test_decide_monadic_wrong_fragment(tmp_path, capsys):
    game = tmp_path / "mono.game"
    game.write_text(MONO_B, encoding="utf-8")

    assert main(["decide-monadic", str(game), "--fragment", "monoA"]) == 3


def test_selfcompose_prints_game(tmp_path, capsys):
    spec = tmp_path / "conference.ni"
    spec.write_text(NI_SPEC, encoding="utf-8")

    assert main(["selfcompose", "fixture:conference", str(spec)]) == 0
    assert "input A2, A2'" in capsys.readouterr().out


def test_selfcompose_output_file(tmp_path, capsys):
    spec = tmp_path / "conference.ni"
    spec.write_text(NI_SPEC, encoding="utf-8")
    output = tmp_path / "composed.game"

    assert main(["selfcompose", "fixture:conference", str(spec), "-o", str(output)]) == 0

    assert capsys.readouterr().out == ""
    assert "A2'/3" in output.read_text(encoding="utf-8")


def test_selfcompose_run_translates_strategy_back(tmp_path, capsys):
    spec = tmp_path / "conference.ni"
    spec.write_text(NI_SPEC, encoding="utf-8")

    assert main(["selfcompose", "fixture:conference", str(spec), "--run", "--json"]) == 0

    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "safe"
    assert report["admissibility"]["admissible"] is True
    assert set(report["original_strategies"]) == {"B1"}
    assert all("'" not in text for text in report["original_strategies"].values())

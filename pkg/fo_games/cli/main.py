# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""``fo-games`` command: verify, synthesize, self-compose and decide monadic games.

Exit codes are ``0`` safe, ``1`` unsafe, ``2`` unknown and ``3`` for every usage, input or
consistency error.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from omegaconf import OmegaConf

try:
    from pydantic.v1 import ValidationError
except (ImportError, AttributeError):
    from pydantic import ValidationError  # type: ignore[no-redef, assignment]

from fo_games.cli.report import EXIT_ERROR, EXIT_SAFE, RunReport, canonical_texts
from fo_games.config import SolverConfig
from fo_games.config.config_detect import parse_config
from fo_games.decide import oracle_verdict, replay, to_smtlib
from fo_games.engine import (
    boundary_conditions,
    check_boundary,
    check_inductive,
    inductive_conditions,
    synthesize,
    verify,
)
from fo_games.exceptions import (
    ConfigurationError,
    FOGamesError,
    OracleDisagreementError,
    ReplayMismatchError,
)
from fo_games.game import Game, builtin_fixture, parse_game, parse_invariant, print_game
from fo_games.logic import conj, neg
from fo_games.monadic import decide_monadic
from fo_games.selfcomp import check_admissible, parse_ni_spec, self_compose, translate_strategy_back
from fo_games.version import __version__

log = logging.getLogger(__name__)

FIXTURE_PREFIX = "fixture:"
CONFIG_FLAGS = ("max_iter", "max_gamma", "max_universe", "approx")

Command = Callable[[argparse.Namespace, SolverConfig, Tuple[str, ...]], Optional[RunReport]]


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--config", metavar="FILE", help="YAML file with solver options, flags take precedence")
    common.add_argument(
        "--oracle",
        type=int,
        metavar="N",
        help="cross-check the verdict with the ground game for universes of size 1..N",
    )
    common.add_argument("--max-iter", type=int, metavar="H", help="cap on precondition iterations")
    common.add_argument("--max-gamma", type=int, metavar="K", help="cap on the choice sequence index")
    common.add_argument("--max-universe", type=int, metavar="N", help="largest universe of bounded checks")
    common.add_argument("--approx", action="store_true", default=None, help="truncate wide clauses while iterating")
    common.add_argument("--smtlib-out", metavar="DIR", help="write one SMT-LIB2 script per verification condition")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    parser = _ArgumentParser(prog="fo-games", description="Safety games over first-order relational state")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    helps = {
        "verify": "prove the invariant of the game inductive, or infer one",
        "synthesize": "infer an invariant and a strategy for player B",
    }
    for name, text in helps.items():
        sub = subparsers.add_parser(name, parents=[common], help=text)
        sub.add_argument("game", nargs="?", help="game file or fixture:<name>")
        sub.add_argument("--invariant", metavar="FILE", help="file with 'invariant node: formula;' blocks")
        sub.add_argument(
            "--replay",
            nargs="?",
            const="-",
            metavar="REPORT",
            help="check that a JSON report (default: standard input) reproduces its verdict",
        )

    sub = subparsers.add_parser("selfcompose", parents=[common], help="self-compose a game for noninterference")
    sub.add_argument("game", help="game file or fixture:<name>")
    sub.add_argument("ni_spec", help="noninterference specification file")
    sub.add_argument("-o", "--output", metavar="FILE", help="write the composed game here")
    sub.add_argument("--run", action="store_true", help="synthesize the composed game and check admissibility")

    sub = subparsers.add_parser("decide-monadic", parents=[common], help="decide a game of a monadic fragment")
    sub.add_argument("game", help="game file or fixture:<name>")
    sub.add_argument("--fragment", choices=("plain", "monoA", "monoB"), help="skip fragment detection")
    return parser


def load_game(reference: str) -> Game:
    """Game from a file, or a registered fixture for ``fixture:<name>``."""
    if reference.startswith(FIXTURE_PREFIX):
        return builtin_fixture(reference[len(FIXTURE_PREFIX) :])
    path = Path(reference)
    return parse_game(path.read_text(encoding="utf-8"), name=path.stem)


def load_config(args: argparse.Namespace) -> SolverConfig:
    """Options of ``--config`` (top level or a ``solver`` section) overridden by explicit flags."""
    options: Dict[str, Any] = {}
    try:
        if args.config:
            conf = OmegaConf.load(args.config)
            options.update(parse_config(conf.get("solver", conf), args.config))
        for name in CONFIG_FLAGS:
            value = getattr(args, name)
            if value is not None:
                options[name] = value
        return SolverConfig(**options)
    except ValidationError as e:
        error = e.errors()[0]
        raise ConfigurationError(f"Invalid solver option {error['loc'][0]}: {error['msg']}") from e
    except ValueError as e:
        raise ConfigurationError(str(e)) from e


def load_report(source: str) -> RunReport:
    text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
    try:
        return RunReport.deserialize(json.loads(text))
    except ValueError as e:
        raise ReplayMismatchError(f"Cannot read report from {source}: {e}") from e


def replay_report(game: Game, report: RunReport, config: SolverConfig) -> RunReport:
    """Check that ``report`` still holds for ``game``.

    A safe report is certified again from its invariant and strategies, an unsafe report with
    a trace is replayed on the ground game, anything else is recomputed and compared.
    """
    if report.verdict == "safe" and not report.fragment:
        invariant = report.invariant_for(game)
        certificate = check_inductive(game, invariant, report.strategy(), config)
        certificate = certificate.merge(check_boundary(game, invariant, config))
        if not certificate.holds:
            failed = ", ".join(item.name for item in certificate.failures)
            raise ReplayMismatchError(f"Reported invariant and strategy fail: {failed}")
    elif report.verdict == "unsafe" and report.trace is not None:
        if not replay(game, report.trace, config):
            raise ReplayMismatchError("Reported trace does not reach a violated assertion")
    else:
        if report.fragment:
            verdict = decide_monadic(game, report.fragment, config).verdict
        else:
            verdict = synthesize(game, config).verdict
        if verdict != report.verdict:
            raise ReplayMismatchError(f"Reported verdict {report.verdict}, recomputed {verdict}")
    log.info("|CLI| Replay reproduced verdict %s", report.verdict)
    return report.copy(update={"diagnostics": (*report.diagnostics, "replay reproduced the verdict")})


def cross_check(game: Game, report: RunReport, max_size: int, config: SolverConfig) -> RunReport:
    """Compare the verdict with the ground game up to ``max_size``; disagreement raises."""
    oracle = oracle_verdict(game, max_size, config)
    witness_size = report.witness_size()
    missed = report.verdict == "unsafe" and oracle.verdict == "safe"
    if (report.verdict == "safe" and oracle.verdict == "unsafe") or (
        missed and witness_size is not None and witness_size <= max_size
    ):
        raise OracleDisagreementError(report.verdict, oracle.verdict, oracle.max_size)
    return report.copy(update={"oracle": oracle})


def write_smtlib(directory: str, game: Game, report: RunReport) -> List[Path]:
    """One script per boundary condition, and per edge when the verdict is safe.

    Each script asserts the negation of its condition, so ``unsat`` confirms it.
    """
    if not report.invariant:
        return []
    invariant = report.invariant_for(game)
    conditions = boundary_conditions(game, invariant)
    if report.verdict == "safe" and not report.fragment:
        conditions += inductive_conditions(game, invariant, report.strategy())

    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for index, (name, premise, conclusion) in enumerate(conditions):
        slug = re.sub("[^A-Za-z0-9]+", "_", name).strip("_")
        path = target / f"{index:03d}_{slug}.smt2"
        path.write_text(f"; {name}\n{to_smtlib(conj(premise, neg(conclusion)))}\n", encoding="utf-8")
        written.append(path)
    log.info("|CLI| Wrote %d SMT-LIB scripts to %s", len(written), target)
    return written


def _finish(args: argparse.Namespace, game: Game, report: RunReport, config: SolverConfig) -> RunReport:
    if args.oracle:
        report = cross_check(game, report, args.oracle, config)
    if args.smtlib_out:
        write_smtlib(args.smtlib_out, game, report)
    return report


def _invariant(args: argparse.Namespace, game: Game):
    if not args.invariant:
        return None
    return parse_invariant(Path(args.invariant).read_text(encoding="utf-8"), game)


def _iterate_command(
    args: argparse.Namespace,
    config: SolverConfig,
    command: Tuple[str, ...],
    run: Callable,
) -> RunReport:
    if args.replay is not None:
        previous = load_report(args.replay)
        reference = args.game or previous.game
        game = load_game(reference)
        report = replay_report(game, previous, config).copy(update={"command": command})
        return _finish(args, game, report, config)

    if not args.game:
        raise ConfigurationError("A game is required unless --replay is given")
    game = load_game(args.game)
    result = run(game, _invariant(args, game))
    return _finish(args, game, RunReport.from_synthesis(command, args.game, result), config)


def cmd_verify(args: argparse.Namespace, config: SolverConfig, command: Tuple[str, ...]) -> RunReport:
    return _iterate_command(args, config, command, lambda game, invariant: verify(game, invariant, config))


def cmd_synthesize(args: argparse.Namespace, config: SolverConfig, command: Tuple[str, ...]) -> RunReport:
    return _iterate_command(args, config, command, lambda game, invariant: synthesize(game, config, invariant))


def cmd_selfcompose(args: argparse.Namespace, config: SolverConfig, command: Tuple[str, ...]) -> Optional[RunReport]:
    game = load_game(args.game)
    spec = parse_ni_spec(Path(args.ni_spec).read_text(encoding="utf-8"))
    composed = self_compose(game, spec)
    text = print_game(composed.game)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    elif not args.run:
        sys.stdout.write(text)
    if not args.run:
        return None

    result = synthesize(composed.game, config)
    report = RunReport.from_synthesis(command, args.game, result)
    if result.verdict == "safe":
        admissibility = check_admissible(composed, result.strategies, config=config)
        report = report.copy(update={"admissibility": admissibility})
        if admissibility.admissible:
            original = translate_strategy_back(composed, result.strategies, admissibility.predicates, config)
            report = report.copy(update={"original_strategies": canonical_texts(original.choices)})
        else:
            diagnostics = (*report.diagnostics, *admissibility.diagnostics)
            report = report.copy(update={"verdict": "unknown", "diagnostics": diagnostics})
    return _finish(args, composed.game, report, config)


def cmd_decide_monadic(args: argparse.Namespace, config: SolverConfig, command: Tuple[str, ...]) -> RunReport:
    game = load_game(args.game)
    result = decide_monadic(game, args.fragment, config)
    return _finish(args, game, RunReport.from_monadic(command, args.game, result), config)


COMMANDS: Dict[str, Command] = {
    "verify": cmd_verify,
    "synthesize": cmd_synthesize,
    "selfcompose": cmd_selfcompose,
    "decide-monadic": cmd_decide_monadic,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )
    command = tuple(sys.argv[1:] if argv is None else argv)

    try:
        config = load_config(args)
        with config:
            report = COMMANDS[args.command](args, config, command)
    except (FOGamesError, OSError) as error:
        print(f"{parser.prog}: error: {error}", file=sys.stderr)
        return EXIT_ERROR

    if report is None:
        return EXIT_SAFE
    print(report.to_json(indent=2) if args.json else report.render())
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())

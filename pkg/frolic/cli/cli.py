"""
Command-line front end.

Usage:
    frolic list
    frolic bracket --group '{"group": "so3"}' --v 1,0,0 --w 0,1,0
    frolic structure-constants --group heisenberg3 --format csv
    frolic verify --group '{"group": "r_power", "J_size": 100}' --suite rj

Exit codes:
    0: success, or the suite passed
    1: the suite failed, or a verified property does not hold
    2: usage or group spec error
    3: numeric domain or chart error
"""

import argparse
import os
import sys

from typing import Mapping, Optional, Sequence

from frolic.cli.formats import render_bracket, render_listing, render_report, render_table
from frolic.config import OUTPUT_FORMATS, GroupSpec, RunConfig, parse_coordinates
from frolic.errors import DomainError, FrolicError, NotAHomomorphism, VerificationFailure
from frolic.lie import SUITES
from frolic.log import get_logger
from frolic.workbench import FrolicWorkbench

logger = get_logger(__name__)

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


def exit_code(error: FrolicError) -> int:
    if isinstance(error, DomainError):
        return EXIT_DOMAIN
    if isinstance(error, (VerificationFailure, NotAHomomorphism)):
        return EXIT_FAILURE
    return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed", type=int, default=None, help="Base seed (default: 42; FROLIC_SEED overrides)"
    )
    common.add_argument("--trials", type=int, default=None, help="Trials per suite (default: 50)")
    common.add_argument("--tol", type=float, default=None, help="Tolerance (default: 1e-8)")
    common.add_argument(
        "--format", choices=OUTPUT_FORMATS, default=None, help="Output format (default: json)"
    )

    with_group = argparse.ArgumentParser(add_help=False)
    with_group.add_argument(
        "--group", required=True, help='Group spec: a name, JSON such as {"group": "gl", "n": 2}, or @file'
    )

    parser = argparse.ArgumentParser(
        prog="frolic", description="Lie brackets of Frölicher groups from commutator curves"
    )
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("list", parents=[common], help="List builtin groups and spaces")
    bracket = commands.add_parser("bracket", parents=[common, with_group], help="Bracket of two vectors")
    bracket.add_argument("--v", required=True, help="Chart coordinates of v, comma-separated")
    bracket.add_argument("--w", required=True, help="Chart coordinates of w, comma-separated")
    commands.add_parser(
        "structure-constants", parents=[common, with_group], help="Structure constants in the identity chart"
    )
    verify = commands.add_parser("verify", parents=[common, with_group], help="Run a verification suite")
    verify.add_argument("--suite", required=True, choices=list(SUITES), help="Suite to run")
    return parser


def run(args: argparse.Namespace, environ: Mapping[str, str]) -> int:
    config = RunConfig.from_args(args, environ)
    workbench = FrolicWorkbench(config)
    fmt = config.output
    if args.command == "list":
        print(render_listing(workbench.list_builtins(), fmt))
        return EXIT_PASS
    spec = GroupSpec.load(args.group)
    group = workbench.group(spec)
    if args.command == "bracket":
        lv = workbench.bracket(group, parse_coordinates(args.v), parse_coordinates(args.w))
        print(render_bracket(group.name, lv, fmt))
        return EXIT_PASS
    if args.command == "structure-constants":
        print(render_table(workbench.structure_constants(group), fmt))
        return EXIT_PASS
    report = workbench.verify(group, args.suite)
    print(render_report(report, fmt))
    return EXIT_PASS if report.passed else EXIT_FAILURE


def main(argv: Optional[Sequence[str]] = None, environ: Optional[Mapping[str, str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args, os.environ if environ is None else environ)
    except FrolicError as e:
        print(f"error: {e}", file=sys.stderr)
        return exit_code(e)


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""
Hecke / W-algebra verification engine
Command-line entry point
"""

import argparse
import logging
import sys

from dotenv import load_dotenv

load_dotenv()

from pydantic import ValidationError

from src.algebra.errors import AlgebraError
from src.controller.schemas import Command, RunConfig
from src.controller.suite_controller import SuiteController, exit_code, persist, render
from src.utils.config import (
    BUILTIN_INSTANCES,
    DEFAULT_BOUNDS,
    DEFAULT_INSTANCES,
    DEGENERATION_SUITES,
    H2_ACTIONS,
    LEFSCHETZ_ACTIONS,
    OUTPUT_FORMATS,
    RELATION_SUITES,
    W_SUITES,
    default_jobs,
    default_max_degree,
    log_level,
)

logger = logging.getLogger("hecke_w")

EXIT_CONFIG = 2
LENGTH_HELP = (
    "Generators per test monomial (default %(default)s). Not raised with --max-degree: "
    "monomials with more generators are never tested unless this is raised too"
)


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", type=str, default="text", choices=OUTPUT_FORMATS, help="Report format")
    parser.add_argument("--jobs", type=int, default=default_jobs(), help="Worker processes (HECKE_JOBS)")


def build_parser() -> argparse.ArgumentParser:
    epilog = "built-in instances: " + "; ".join(f"{name} ({text})" for name, text in BUILTIN_INSTANCES.items())
    parser = argparse.ArgumentParser(
        description="Exact verification of Hecke, W-algebra and Lefschetz structures", epilog=epilog
    )
    commands = parser.add_subparsers(dest="command", required=True)

    rel = commands.add_parser(Command.RELATIONS.value, help="Hecke commutation relations and series oracles")
    rel.add_argument("--instance", type=str, default=DEFAULT_INSTANCES["relations"])
    rel.add_argument("--relation", dest="suite", type=str, required=True, choices=RELATION_SUITES)
    rel.add_argument("--max-degree", type=int, default=default_max_degree(), help="Test monomial degree bound")
    rel.add_argument("--max-index", type=int, default=DEFAULT_BOUNDS["max_index"])
    rel.add_argument("--max-length", type=int, default=DEFAULT_BOUNDS["max_length"], help=LENGTH_HELP)
    rel.add_argument("--order", type=int, default=DEFAULT_BOUNDS["order"], help="Series truncation order")
    _common(rel)

    w = commands.add_parser(Command.W.value, help="W-algebra relations")
    w.add_argument("--instance", type=str, default=DEFAULT_INSTANCES["w"])
    w.add_argument("--suite", type=str, required=True, choices=W_SUITES)
    w.add_argument("--max-degree", type=int, default=default_max_degree())
    w.add_argument("--max-index", type=int, default=DEFAULT_BOUNDS["index_cap"])
    w.add_argument("--max-length", type=int, default=DEFAULT_BOUNDS["max_length"], help=LENGTH_HELP)
    w.add_argument("--seed", type=int, default=0)
    _common(w)

    h2 = commands.add_parser(Command.H2.value, help="Hamiltonian vector fields on the plane")
    h2.add_argument("suite", type=str, choices=H2_ACTIONS)
    h2.add_argument("operands", nargs="*", help='Two elements such as "V(2,3)" for bracket')
    h2.add_argument("--index-cap", type=int, default=DEFAULT_BOUNDS["index_cap"])
    h2.add_argument("--degree-cap", type=int, default=DEFAULT_BOUNDS["degree_cap"])
    _common(h2)

    deg = commands.add_parser(Command.DEGENERATE.value, help="Specialized truncated modules and the sl_2 pipeline")
    deg.add_argument("--instance", type=str, default=DEFAULT_INSTANCES["degenerate"])
    deg.add_argument("--suite", type=str, required=True, choices=DEGENERATION_SUITES)
    deg.add_argument("--r", type=str, default="1", help="Value of p_1(w)")
    deg.add_argument("--chi", type=str, default="0", help="Value of psi_1(1) in sector 0")
    deg.add_argument("--window", type=int, default=DEFAULT_BOUNDS["window"])
    deg.add_argument("--interp-max", type=int, default=DEFAULT_BOUNDS["interp_max"])
    _common(deg)

    lef = commands.add_parser(Command.LEFSCHETZ.value, help="Weight filtrations and Lefschetz structures")
    lef.add_argument("suite", type=str, choices=LEFSCHETZ_ACTIONS)
    lef.add_argument("--matrix", dest="path", type=str, help="JSON matrix for weight-filtration")
    lef.add_argument("--space", dest="space", type=str, help="JSON filtered space for verify")
    lef.add_argument("--seed", type=int, default=0)
    lef.add_argument("--count", type=int, default=50)
    _common(lef)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {k: v for k, v in vars(args).items() if v is not None}
    space = values.pop("space", None)
    if space and "path" not in values:
        values["path"] = space
    return RunConfig(**values)


def main(argv=None) -> int:
    logging.basicConfig(
        level=getattr(logging, log_level(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ValidationError as e:
        print(f"Invalid configuration:\n{e}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        report = SuiteController().run(cfg)
    except AlgebraError as e:
        logger.error(f"{cfg.command.value} {cfg.suite} rejected its input: {e}")
        return EXIT_CONFIG
    except (OSError, ValueError) as e:
        logger.error(f"{cfg.command.value} {cfg.suite} could not read its input: {e}")
        return EXIT_CONFIG
    except Exception as e:
        logger.error(f"{cfg.command.value} {cfg.suite} failed: {type(e).__name__}: {e}")
        return 1

    print(render(report, cfg.format))
    persist(report, cfg)
    return exit_code(report)


if __name__ == '__main__':
    sys.exit(main())

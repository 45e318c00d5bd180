#!/usr/bin/env python3
"""
hn - Harder-Narasimhan filtrations of multi-filtered spaces and Euclidean lattices
Main Entry Point
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from src.cli.commands import EXIT_VALIDATION, cmd_check, cmd_compute, cmd_oracle, cmd_polygon
from src.cli.suites import SUITES
from src.config.engine_config import EngineConfig
from src.utils.logger import Logger

COMMANDS = {
    "compute": cmd_compute,
    "polygon": cmd_polygon,
    "check": cmd_check,
    "oracle": cmd_oracle,
}


def setup_environment() -> EngineConfig:
    """Setup environment and load configuration"""
    load_dotenv()
    return EngineConfig.load_from_env()


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line arguments"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, help="Subspace enumeration ceiling (overrides HN_BUDGET)")
    common.add_argument("--digits", type=int, help="Decimal digits in rendered values (overrides HN_DIGITS)")
    common.add_argument("--verbose", action="store_true", help="Enable verbose logging")
    common.add_argument("-o", "--output", type=Path, help="Write the result here instead of stdout")

    parser = argparse.ArgumentParser(prog="hn", description="Harder-Narasimhan filtrations, polygons and checks")
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", parents=[common], help="HN sequence, polygon and measure as JSON")
    compute.add_argument("input", type=Path, help="Input document (JSON)")
    compute.add_argument("--timing", action="store_true", help="Include wall-clock seconds in the result")

    polygon = commands.add_parser("polygon", parents=[common], help="HN polygon as CSV or SVG")
    polygon.add_argument("input", type=Path, help="Input document (JSON)")
    polygon.add_argument("--format", choices=("csv", "svg"), default="csv", help="Output format")

    check = commands.add_parser("check", parents=[common], help="Seeded property suites")
    check.add_argument("--suite", choices=SUITES, default="all", help="Suite to run")
    check.add_argument("--seed", type=int, default=0, help="Seed of the first trial")
    check.add_argument("--trials", type=int, default=100, help="Number of trials")

    oracle = commands.add_parser("oracle", parents=[common], help="Cross-check destabilizers on a file or random instances")
    source = oracle.add_mutually_exclusive_group(required=True)
    source.add_argument("input", nargs="?", type=Path, help="Input document (JSON)")
    source.add_argument("--random", help='Random instances, e.g. "multifilt_fp:p=2,dim=3,n=2,count=500,seed=0"')

    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point for the hn command line
    """
    args = parse_arguments(argv)

    # Setup environment
    config = setup_environment()

    # Override config with command line arguments
    config = config.with_overrides(
        budget=args.budget,
        digits=args.digits,
        log_level="DEBUG" if args.verbose else None,
    )
    if not config.validate_config():
        return EXIT_VALIDATION

    Logger.configure(config.log_level, config.log_dir)
    logger = Logger.get_logger("hn")
    logger.info(f"hn {args.command}")

    try:
        return COMMANDS[args.command](args, config)
    except KeyboardInterrupt:
        logger.warning("Interrupted by user")
        return 130


if __name__ == "__main__":
    exit_code = main()
    sys.exit(exit_code)

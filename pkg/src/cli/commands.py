"""
Command-line surface.

``register_commands`` adds one subcommand per CommandType with the shared
flags; ``handle`` loads the config, applies overrides and runs the command
through the orchestrator. Every failure maps onto the exit-code contract
(0 pass, 1 usage/config/precondition error, 2 tolerance breach).

Example:
    python main.py check-forms --config experiments/default.toml --out results/
"""

import argparse
import sys
from pathlib import Path
from typing import NoReturn, Optional, Sequence

from src.core.config import settings
from src.core.constants import EXIT_CONFIG_ERROR, TOOL_NAME, TOOL_VERSION
from src.core.error_handling import handle_command_errors
from src.core.logging import add_file_handler, get_logger, set_log_level, setup_logging
from src.services.command_orchestrator import get_command_orchestrator
from src.services.config_loader import apply_overrides, load_config
from src.workflows.command_types import CommandType

logger = get_logger(__name__)

_HELP = {
    CommandType.CHECK_FORMS: "Check that every scalar-product form agrees on state pairs",
    CommandType.BOOST_CHECK: "Check Lorentz invariance and helicity preservation under boosts",
    CommandType.NUMBER_DENSITY: "Evaluate the number amplitude and density of a state",
    CommandType.TAIL_FIT: "Fit the radial falloff exponent of the localized-field model",
}


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with code 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG_ERROR, f"{self.prog}: error: {message}\n")


def register_commands(sub: argparse._SubParsersAction) -> None:
    """Register one subcommand per CommandType."""
    for command_type in CommandType:
        cmd = sub.add_parser(command_type.value, help=_HELP[command_type])
        cmd.add_argument("--config", type=Path, required=True, help="TOML experiment file")
        cmd.add_argument("--out", type=str, default=None, help="Report directory")
        cmd.add_argument("--tolerance", type=float, default=None, help="Override the command tolerance")
        cmd.add_argument("--seed", type=int, default=None, help="Override the run seed")
        cmd.add_argument("--grid-scale", type=int, default=None, help="Multiply every grid node count")
        cmd.add_argument("--strict", action="store_true", help="Treat a tolerance breach as an error")
        cmd.add_argument("--log-file", type=str, default=None, help="Also write a debug log here")
        cmd.add_argument("--verbose", action="store_true")


def build_parser() -> CommandParser:
    parser = CommandParser(prog=TOOL_NAME, description="Single-photon wave-function numerics")
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CommandParser)
    register_commands(sub)
    return parser


def _run(args: argparse.Namespace) -> int:
    command_type = CommandType.from_string(args.command)
    config = load_config(args.config)
    config = apply_overrides(
        config,
        tolerance=args.tolerance,
        seed=args.seed,
        grid_scale=args.grid_scale,
        out=args.out,
        command_section=command_type.config_section,
    )
    return get_command_orchestrator().execute_command(command_type, config, strict=args.strict)


def handle(args: argparse.Namespace) -> Optional[int]:
    """Handle a subcommand. Returns exit code, or None if not ours."""
    if args.command not in {command_type.value for command_type in CommandType}:
        return None
    return handle_command_errors(args.command)(_run)(args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, configure logging and run one command."""
    parser = build_parser()
    args = parser.parse_args(argv)

    setup_logging(settings.LOG_LEVEL, settings.LOG_FILE, settings.ENABLE_FILE_LOGGING)
    if args.verbose:
        set_log_level("DEBUG")
    if args.log_file:
        add_file_handler(args.log_file)

    code = handle(args)
    if code is None:
        parser.error(f"unknown command {args.command}")
    logger.debug(f"{args.command} finished with exit code {code}")
    return code

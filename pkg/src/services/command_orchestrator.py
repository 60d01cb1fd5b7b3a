"""
Command Orchestrator.

This module provides the central orchestration for command execution.
It routes a command to its handler, wraps the result in the report
envelope, writes every output file and returns the process exit code.
"""

import logging
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from src.core.config import settings
from src.core.constants import EXIT_OK, EXIT_TOLERANCE_BREACH, TOOL_NAME, TOOL_VERSION
from src.core.error_handling import ConfigurationError, ToleranceBreachError
from src.models.experiment_config import ExperimentConfig
from src.models.report_models import CommandReport, CommandResult, RunMetadata
from src.services.report_writer import ReportWriter
from src.services.workflows.base_handler import BaseCommandHandler
from src.services.workflows.boost_check_handler import BoostCheckHandler
from src.services.workflows.check_forms_handler import CheckFormsHandler
from src.services.workflows.number_density_handler import NumberDensityHandler
from src.services.workflows.tail_fit_handler import TailFitHandler
from src.workflows.command_types import CommandType

logger = logging.getLogger(__name__)


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


class CommandOrchestrator:
    """Orchestrates command execution by routing to the matching handler.

    This class is responsible for:
    1. Resolving the command to its handler
    2. Executing the handler on the resolved config
    3. Building the deterministic report envelope
    4. Writing the report, the sidecar and the CSV tables

    The orchestrator follows the singleton pattern to ensure
    consistent handler instances across the process.
    """

    _instance: Optional["CommandOrchestrator"] = None

    def __new__(cls):
        """Singleton pattern implementation."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        """Initialize orchestrator with command handlers."""
        if self._initialized:
            return

        logger.debug("Initializing CommandOrchestrator")

        self.command_handlers: dict[CommandType, BaseCommandHandler] = {
            CommandType.CHECK_FORMS: CheckFormsHandler(),
            CommandType.BOOST_CHECK: BoostCheckHandler(),
            CommandType.NUMBER_DENSITY: NumberDensityHandler(),
            CommandType.TAIL_FIT: TailFitHandler(),
        }

        self._initialized = True
        logger.debug(f"CommandOrchestrator initialized with {len(self.command_handlers)} handlers")

    def get_handler(self, command_type: CommandType) -> BaseCommandHandler:
        """Get the handler of a command.

        Raises:
            ConfigurationError: If no handler is registered for the command
        """
        handler = self.command_handlers.get(command_type)
        if not handler:
            raise ConfigurationError(
                f"Unknown command: {command_type}. "
                f"Available: {self.list_commands()}"
            )
        return handler

    def list_commands(self) -> list[str]:
        """List all available command names."""
        return [command_type.value for command_type in self.command_handlers]

    @staticmethod
    def build_report(command_type: CommandType, config: ExperimentConfig, result: CommandResult) -> CommandReport:
        """Wrap a handler result in the report envelope.

        The envelope holds no timestamps, so identical inputs give
        byte-identical reports.
        """
        return CommandReport(
            command=command_type.value,
            tool=TOOL_NAME,
            version=TOOL_VERSION,
            passed=result.passed,
            exit_code=EXIT_OK if result.passed else EXIT_TOLERANCE_BREACH,
            tolerance=result.tolerance,
            config=config.model_dump(mode="json"),
            grids=result.grids,
            result=result.result,
        )

    @staticmethod
    def output_directory(config: ExperimentConfig) -> Path:
        """Report directory: the config's choice, else OUTPUT_DIR."""
        return Path(config.output.directory or settings.OUTPUT_DIR)

    def execute_command(
        self,
        command: CommandType | str,
        config: ExperimentConfig,
        strict: bool = False,
    ) -> int:
        """Run a command and write its outputs.

        Args:
            command: Command type or name
            config: Resolved experiment config
            strict: Raise ToleranceBreachError instead of returning exit 2

        Returns:
            0 when every check passed, 2 on a tolerance breach

        Raises:
            ConfigurationError: For config problems and unwritable outputs
            ToleranceBreachError: In strict mode, for the first failed check
            PhotonNumericsError: For precondition failures in the numerics

        Examples:
            >>> orchestrator = get_command_orchestrator()
            >>> orchestrator.execute_command("tail-fit", config)
            0
        """
        command_type = command if isinstance(command, CommandType) else CommandType.from_string(command)
        handler = self.get_handler(command_type)

        started_at = _utc_now()
        start = time.perf_counter()
        logger.info(f"Executing command: {command_type.value}")
        result = handler.execute(config)
        duration = time.perf_counter() - start

        report = self.build_report(command_type, config, result)
        writer = ReportWriter(self.output_directory(config))
        writer.write_report(report)
        writer.write_tables(command_type.value, result.tables)
        writer.write_metadata(
            RunMetadata(
                command=command_type.value,
                started_at=started_at,
                finished_at=_utc_now(),
                duration_seconds=duration,
            )
        )

        summary = "PASS" if result.passed else "FAIL"
        print(f"{command_type.value}: {summary}")
        for failure in result.failures:
            print(f"  {failure}")

        if not result.passed and strict:
            raise ToleranceBreachError(command_type.value, float("nan"), result.tolerance or 0.0)
        return report.exit_code


# Singleton accessor function
_orchestrator_instance: Optional[CommandOrchestrator] = None


def get_command_orchestrator() -> CommandOrchestrator:
    """Get the singleton CommandOrchestrator instance.

    Returns:
        CommandOrchestrator instance
    """
    global _orchestrator_instance
    if _orchestrator_instance is None:
        _orchestrator_instance = CommandOrchestrator()
    return _orchestrator_instance

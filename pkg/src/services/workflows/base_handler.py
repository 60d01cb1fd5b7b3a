"""
Base Command Handler.

This module defines the abstract base class for all command handlers.
Each handler runs one family of numerical checks (form equivalence, boost
invariance, number density, tail fit) on a resolved experiment config.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Optional, Tuple
import logging

from src.core.error_handling import ConfigurationError
from src.models.experiment_config import ExperimentConfig
from src.models.report_models import CommandResult
from src.photon.wavefunction import WaveFunctionK
from src.services.state_factory import StateFactory
from src.workflows.command_types import CommandType

logger = logging.getLogger(__name__)


class BaseCommandHandler(ABC):
    """Abstract base class for command handlers.

    All command handlers must implement the execute() method which runs the
    command's checks and reports whether they passed.

    Attributes:
        command_type: The command this handler implements
    """

    def __init__(self, command_type: CommandType):
        """Initialize handler with command type.

        Args:
            command_type: The command this handler implements
        """
        self.command_type = command_type
        logger.debug(f"Initialized {self.__class__.__name__} for {command_type.value}")

    @abstractmethod
    def execute(self, config: ExperimentConfig) -> CommandResult:
        """Run the command's checks.

        Implementations should:
        1. Build the grids and states the command needs
        2. Evaluate the checks with the photon modules
        3. Compare every measured quantity with its tolerance
        4. Return a CommandResult with the JSON payload and CSV tables

        Args:
            config: Resolved experiment config

        Returns:
            CommandResult containing:
                - passed: whether every check met its tolerance
                - result: command-specific JSON payload
                - tables: CSV tables by stem
                - failures: failed checks in words

        Raises:
            ConfigurationError: If the config lacks what the command needs
            PhotonNumericsError: For precondition failures in the numerics
        """
        pass

    def _section(self, config: ExperimentConfig) -> Any:
        """The config table of this command.

        Raises:
            ConfigurationError: If the table is missing
        """
        section: Optional[Any] = getattr(config, self.command_type.config_section, None)
        if section is None:
            raise ConfigurationError(
                f"{self.command_type.value} needs a [{self.command_type.config_section}] table"
            )
        return section

    def _factory(self, config: ExperimentConfig) -> StateFactory:
        return StateFactory(config)

    @staticmethod
    def _export_states(
        config: ExperimentConfig, tables: Dict[str, Dict[str, Any]], states: Dict[Tuple[str, str], WaveFunctionK]
    ) -> None:
        """Add k-space snapshots of ``states`` to ``tables`` when export is enabled.

        Args:
            config: Resolved experiment config
            tables: Table mapping to extend in place
            states: (name, family) -> sampled state
        """
        if not config.output.export_states:
            return
        for (name, family), wf in sorted(states.items()):
            tables[f"state.{name}.{family}"] = wf.snapshot_columns()

    def _log_start(self, config: ExperimentConfig) -> None:
        """Log command start.

        Args:
            config: Resolved experiment config
        """
        logger.info(
            f"Starting {self.command_type.value} | "
            f"Grids: {config.grids.families()} | States: {len(config.states)}"
        )

    def _log_complete(self, result: CommandResult, execution_time: float) -> None:
        """Log command completion.

        Args:
            result: Handler result
            execution_time: Total execution time in seconds
        """
        logger.info(
            f"Completed {self.command_type.value} | "
            f"Passed: {result.passed} | "
            f"Time: {execution_time:.2f}s | "
            f"Grids: {result.grids}"
        )
        for failure in result.failures:
            logger.warning(f"{self.command_type.value} check failed: {failure}")

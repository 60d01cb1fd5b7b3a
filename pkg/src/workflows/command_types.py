"""
Command Types Enumeration.

This module defines the verification commands the CLI can run. Each command
drives one family of numerical checks and writes its own report.
"""

from enum import Enum

from src.core.error_handling import InvalidArgumentError


class CommandType(Enum):
    """Available verification commands.

    - CHECK_FORMS: Scalar-product form equivalence over state pairs
    - BOOST_CHECK: Lorentz invariance of the scalar product and helicity preservation
    - NUMBER_DENSITY: Number amplitude / density of a state on the r-grid
    - TAIL_FIT: Radial falloff exponent of the localized-field model
    """

    CHECK_FORMS = "check-forms"
    BOOST_CHECK = "boost-check"
    NUMBER_DENSITY = "number-density"
    TAIL_FIT = "tail-fit"

    @classmethod
    def from_string(cls, command_str: str) -> "CommandType":
        """Convert string to CommandType enum.

        Args:
            command_str: Command name or alias (underscores accepted)

        Returns:
            CommandType enum value

        Raises:
            InvalidArgumentError: If the command is not recognized
        """
        command_str = command_str.lower().strip().replace("_", "-")

        alias_map = {
            "forms": cls.CHECK_FORMS,
            "boost": cls.BOOST_CHECK,
            "density": cls.NUMBER_DENSITY,
            "tail": cls.TAIL_FIT,
        }

        if command_str in alias_map:
            return alias_map[command_str]

        for command_type in cls:
            if command_type.value == command_str:
                return command_type

        raise InvalidArgumentError(
            f"Unknown command: {command_str}. "
            f"Valid options: {[c.value for c in cls]}"
        )

    @property
    def config_section(self) -> str:
        """Name of the experiment-config table the command reads."""
        return self.value.replace("-", "_")

    def __str__(self) -> str:
        """Return string representation."""
        return self.value

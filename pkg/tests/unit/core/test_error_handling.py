"""
Unit tests for the error handling framework.

Tests the exit-code mapping of handle_command_errors and the file error
conversion.
"""

import logging

import pytest

from src.core.constants import EXIT_CONFIG_ERROR, EXIT_OK, EXIT_TOLERANCE_BREACH
from src.core.error_handling import (
    ConfigurationError,
    IncompatibleGridsError,
    InvalidArgumentError,
    PhotonNumericsError,
    PoleSingularityError,
    ToleranceBreachError,
    handle_command_errors,
    handle_file_errors,
)


class TestHandleCommandErrors:
    """Test cases for handle_command_errors."""

    def test_success_passes_through(self):
        """Test that a returned exit code is kept."""

        @handle_command_errors("test")
        def run() -> int:
            return EXIT_OK

        assert run() == EXIT_OK

    def test_configuration_error(self):
        """Test that configuration errors map to exit 1."""

        @handle_command_errors("test")
        def run() -> int:
            raise ConfigurationError("missing grid")

        assert run() == EXIT_CONFIG_ERROR

    def test_tolerance_breach(self):
        """Test that tolerance breaches map to exit 2."""

        @handle_command_errors("test")
        def run() -> int:
            raise ToleranceBreachError("defect", 1e-3, 1e-6)

        assert run() == EXIT_TOLERANCE_BREACH

    @pytest.mark.parametrize(
        "error", [InvalidArgumentError("bad"), IncompatibleGridsError("grids"), PoleSingularityError("pole")]
    )
    def test_precondition_errors(self, error):
        """Test that numeric precondition failures map to exit 1."""

        @handle_command_errors("test")
        def run() -> int:
            raise error

        assert run() == EXIT_CONFIG_ERROR

    def test_unexpected_error_is_logged(self, caplog):
        """Test that unexpected exceptions are logged with context and map to exit 1."""

        @handle_command_errors("tail-fit")
        def run() -> int:
            raise RuntimeError("boom")

        with caplog.at_level(logging.ERROR):
            assert run() == EXIT_CONFIG_ERROR
        assert "tail-fit - Unexpected error: boom" in caplog.text


class TestToleranceBreachError:
    """Test cases for ToleranceBreachError."""

    def test_message_and_attributes(self):
        """Test that the error keeps its metric, value and tolerance."""
        error = ToleranceBreachError("max_deviation", 2e-9, 1e-9)

        assert error.metric == "max_deviation"
        assert error.value == 2e-9
        assert "exceeds tolerance" in str(error)
        assert isinstance(error, PhotonNumericsError)


class TestHelpers:
    """Test cases for handle_file_errors."""

    def test_file_not_found_becomes_configuration_error(self, tmp_path):
        """Test OS error conversion."""

        @handle_file_errors
        def read():
            return (tmp_path / "missing.toml").read_text()

        with pytest.raises(ConfigurationError, match="File not found"):
            read()

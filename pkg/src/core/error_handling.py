"""
Error handling framework.

This module provides the exception hierarchy shared by the numerical modules
and the decorators that map it onto the CLI exit-code contract
(0 pass, 1 usage/config/precondition error, 2 tolerance breach).

Example:
    from src.core.error_handling import handle_command_errors, InvalidArgumentError

    @handle_command_errors("tail-fit")
    def run(config) -> int:
        if min(radii) < 5 * core_radius:
            raise InvalidArgumentError("radii inside the core region")
        ...
        return EXIT_OK
"""

import logging
from functools import wraps
from typing import Callable, Any

from src.core.constants import EXIT_CONFIG_ERROR, EXIT_TOLERANCE_BREACH

logger = logging.getLogger(__name__)


# Exception Hierarchy
class PhotonNumericsError(Exception):
    """Base exception for all errors raised by this package."""
    pass


class InvalidArgumentError(PhotonNumericsError):
    """
    Exception raised when an operation receives arguments outside its domain.

    This includes non-positive truncations, node counts below two,
    non-power-of-two FFT sizes, sample-length mismatches, non-monotone
    regulator ladders and radii inside the core region.
    """
    pass


class InvalidStateError(PhotonNumericsError):
    """
    Exception raised when a wave function cannot be used.

    This includes non-finite samples (the message names the node index),
    zero-norm states and mixed-helicity states passed where a single
    helicity is required.
    """
    pass


class IncompatibleGridsError(PhotonNumericsError):
    """Exception raised when two states that must share a grid do not."""
    pass


class WrongGridError(PhotonNumericsError):
    """Exception raised when an operation needs the other grid family."""
    pass


class PoleSingularityError(PhotonNumericsError):
    """
    Exception raised when polarization vectors are requested on the k_z axis.

    The spherical unit vectors are discontinuous at theta = 0 and theta = pi;
    the message points at the minus_phi chi convention.
    """
    pass


class UnsupportedChiError(PhotonNumericsError):
    """Exception raised when a chi specification cannot be differentiated."""
    pass


class FormPairingError(PhotonNumericsError):
    """Exception raised when a real-space product pairs alpha with anything but -alpha."""
    pass


class NeedsAnalyticStateError(PhotonNumericsError):
    """Exception raised when a boost is requested for a sampled-only state."""
    pass


class IllConditionedComparisonError(PhotonNumericsError):
    """Exception raised when a relative defect would divide by a vanishing reference."""
    pass


class ConfigurationError(PhotonNumericsError):
    """
    Exception raised for experiment configuration problems.

    This includes TOML syntax errors, schema violations, unknown state
    names, invalid command-line overrides and unwritable output paths.
    """
    pass


class ToleranceBreachError(PhotonNumericsError):
    """
    Exception raised when a check exceeds its tolerance in strict mode.

    Attributes:
        metric: Name of the quantity that breached
        value: Measured value
        tolerance: Allowed value
    """

    def __init__(self, metric: str, value: float, tolerance: float):
        self.metric = metric
        self.value = value
        self.tolerance = tolerance
        super().__init__(f"{metric} = {value:.3e} exceeds tolerance {tolerance:.3e}")


# Error Handling Decorators
def handle_command_errors(context: str):
    """
    Decorator mapping package exceptions onto CLI exit codes.

    The wrapped callable returns an exit code on success. Configuration and
    precondition failures become exit 1, strict-mode tolerance breaches
    become exit 2, and unexpected exceptions are logged with their traceback
    and become exit 1.

    Args:
        context: Descriptive context for the operation (used in logging)

    Returns:
        Decorated function returning an int exit code

    Example:
        @handle_command_errors("check-forms")
        def run_check_forms(args) -> int:
            ...
    """
    def decorator(func: Callable[..., int]) -> Callable[..., int]:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> int:
            try:
                return func(*args, **kwargs)
            except ConfigurationError as e:
                logger.error(f"{context} - Configuration error: {e}")
                return EXIT_CONFIG_ERROR
            except ToleranceBreachError as e:
                logger.error(f"{context} - Tolerance breach: {e}")
                return EXIT_TOLERANCE_BREACH
            except (InvalidArgumentError, WrongGridError, IncompatibleGridsError) as e:
                logger.error(f"{context} - Precondition failed: {e}")
                return EXIT_CONFIG_ERROR
            except PhotonNumericsError as e:
                logger.error(f"{context} - {e.__class__.__name__}: {e}")
                return EXIT_CONFIG_ERROR
            except Exception as e:
                logger.exception(f"{context} - Unexpected error: {e}")
                return EXIT_CONFIG_ERROR

        return wrapper

    return decorator


def handle_file_errors(func: Callable) -> Callable:
    """
    Decorator for report and config file operations.

    Converts common OS errors into ConfigurationError so the CLI maps
    them to exit code 1.

    Args:
        func: Function to decorate

    Returns:
        Decorated function with file error handling
    """
    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except FileNotFoundError as e:
            raise ConfigurationError(f"File not found: {e}")
        except PermissionError as e:
            raise ConfigurationError(f"Permission denied: {e}")
        except IsADirectoryError as e:
            raise ConfigurationError(f"Expected file, got directory: {e}")
        except OSError as e:
            raise ConfigurationError(f"I/O error: {e}")

    return wrapper

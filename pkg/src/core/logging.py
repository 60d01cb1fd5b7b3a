"""
Logging configuration module.

This module provides centralized logging configuration for the CLI and the
numerical modules: process-wide setup, per-module loggers, level changes
for ``--verbose``, an extra run-log file and a timing helper for command
stages.

Example:
    from src.core.logging import setup_logging, get_logger, log_timing

    # Setup logging once at process startup
    setup_logging(log_level="INFO")

    logger = get_logger(__name__)
    with log_timing(logger, "boost ladder"):
        run_ladder()
"""

import logging
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional
from src.core.constants import DEFAULT_LOG_FORMAT


def setup_logging(
    log_level: str = "INFO",
    log_file: Optional[str] = None,
    enable_file_logging: bool = False
) -> None:
    """
    Configure process-wide logging.

    Console records go to stderr; stdout carries the command summary only.
    Calling it again replaces the previously installed handlers.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Path to log file (default: logs/photon_numerics.log)
        enable_file_logging: Whether to enable file logging

    Example:
        >>> setup_logging(log_level="DEBUG", enable_file_logging=True)
        >>> logging.getLogger("src.photon.kgrid").debug("grid built")
    """
    numeric_level = getattr(logging, log_level.upper(), logging.INFO)
    formatter = logging.Formatter(DEFAULT_LOG_FORMAT)

    handlers: list[logging.Handler] = []

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(formatter)
    handlers.append(console_handler)

    if enable_file_logging:
        log_file_path = log_file or "logs/photon_numerics.log"
        Path(log_file_path).parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_file_path)
        file_handler.setLevel(numeric_level)
        file_handler.setFormatter(formatter)
        handlers.append(file_handler)

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)

    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    for handler in handlers:
        root_logger.addHandler(handler)

    logging.debug(f"Logging configured with level: {log_level}")


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance for a module.

    Args:
        name: Logger name (typically __name__ of the calling module)

    Returns:
        Configured logger instance
    """
    return logging.getLogger(name)


@contextmanager
def log_timing(logger: logging.Logger, label: str) -> Iterator[None]:
    """
    Log the wall-clock duration of a block at INFO level.

    Args:
        logger: Logger receiving the start and completion records
        label: Short description of the stage

    Example:
        >>> with log_timing(logger, "check-forms pair g1/g2"):
        ...     compare_forms(phi, psi)
    """
    start = time.perf_counter()
    logger.debug(f"Started {label}")
    try:
        yield
    finally:
        logger.info(f"Completed {label} | Time: {time.perf_counter() - start:.2f}s")


def set_log_level(log_level: str, logger_name: Optional[str] = None) -> None:
    """
    Change the level of a logger and of the root handlers.

    Args:
        log_level: New level name
        logger_name: Logger to change (default: root)
    """
    numeric_level = getattr(logging, log_level.upper(), logging.INFO)
    target = logging.getLogger(logger_name)
    target.setLevel(numeric_level)
    if logger_name is None:
        for handler in target.handlers:
            handler.setLevel(numeric_level)


def add_file_handler(log_file: str, log_level: str = "DEBUG") -> logging.Handler:
    """
    Attach an extra file handler to the root logger.

    Used by the CLI to keep a run log next to the reports.

    Args:
        log_file: Destination path (parent directories are created)
        log_level: Level of the new handler

    Returns:
        The installed handler, so callers can remove it again
    """
    Path(log_file).parent.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(log_file)
    handler.setLevel(getattr(logging, log_level.upper(), logging.DEBUG))
    handler.setFormatter(logging.Formatter(DEFAULT_LOG_FORMAT))
    root_logger = logging.getLogger()
    root_logger.setLevel(min(root_logger.level, handler.level))
    root_logger.addHandler(handler)
    return handler

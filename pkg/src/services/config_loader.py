"""
Experiment Config Loader.

This module reads TOML experiment files into validated ExperimentConfig
models and applies the command-line overrides on top of them.
"""

import logging
import sys
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from src.core.error_handling import ConfigurationError, handle_file_errors
from src.core.utils import is_power_of_two
from src.models.experiment_config import ExperimentConfig

logger = logging.getLogger(__name__)


def _format_validation_error(error: ValidationError) -> str:
    problems = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        problems.append(f"{location}: {item['msg']}")
    return "; ".join(problems)


def parse_config(payload: dict) -> ExperimentConfig:
    """Validate an already-parsed config mapping.

    Args:
        payload: Mapping as produced by the TOML parser

    Returns:
        Validated ExperimentConfig

    Raises:
        ConfigurationError: If the mapping violates the schema
    """
    try:
        return ExperimentConfig.model_validate(payload)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid experiment config: {_format_validation_error(e)}")


@handle_file_errors
def load_config(path: str | Path) -> ExperimentConfig:
    """Read and validate a TOML experiment file.

    Args:
        path: Path to the TOML file

    Returns:
        Validated ExperimentConfig

    Raises:
        ConfigurationError: If the file is missing, unreadable, not valid
            TOML or violates the schema
    """
    path = Path(path)
    logger.info(f"Loading experiment config: {path}")
    with path.open("rb") as handle:
        try:
            payload = tomllib.load(handle)
        except tomllib.TOMLDecodeError as e:
            raise ConfigurationError(f"Malformed TOML in {path}: {e}")
    return parse_config(payload)


def apply_overrides(
    config: ExperimentConfig,
    tolerance: Optional[float] = None,
    seed: Optional[int] = None,
    grid_scale: Optional[int] = None,
    out: Optional[str] = None,
    command_section: Optional[str] = None,
) -> ExperimentConfig:
    """Return a copy of ``config`` with command-line overrides applied.

    The tolerance override targets the section of the command being run;
    for tail-fit it replaces the slope tolerance.

    Args:
        config: Validated config
        tolerance: Replacement tolerance (> 0)
        seed: Replacement run seed (>= 0)
        grid_scale: Multiplier for every node count (>= 1)
        out: Replacement output directory
        command_section: Config table of the command (e.g. "boost_check")

    Returns:
        New ExperimentConfig; the input is left untouched

    Raises:
        ConfigurationError: For non-positive tolerances or scales, negative
            seeds, or a scaled Cartesian n that is not a power of two
    """
    data = config.model_dump()

    if tolerance is not None:
        if not tolerance > 0:
            raise ConfigurationError(f"--tolerance must be positive, got {tolerance}")
        if command_section is not None:
            section = data.get(command_section)
            if section is None:
                raise ConfigurationError(f"Config has no [{command_section}] table to override")
            key = "slope_tolerance" if command_section == "tail_fit" else "tolerance"
            section[key] = tolerance

    if seed is not None:
        if seed < 0:
            raise ConfigurationError(f"--seed must be non-negative, got {seed}")
        data["seed"] = seed

    if grid_scale is not None and grid_scale != 1:
        if grid_scale < 1:
            raise ConfigurationError(f"--grid-scale must be >= 1, got {grid_scale}")
        spherical = data["grids"].get("spherical")
        if spherical is not None:
            for key in ("n_r", "n_theta", "n_phi"):
                spherical[key] *= grid_scale
        cartesian = data["grids"].get("cartesian")
        if cartesian is not None:
            scaled = cartesian["n"] * grid_scale
            if not is_power_of_two(scaled):
                raise ConfigurationError(
                    f"--grid-scale {grid_scale} gives Cartesian n = {scaled}, not a power of two"
                )
            cartesian["n"] = scaled

    if out is not None:
        data["output"]["directory"] = out

    resolved = parse_config(data)
    logger.debug(
        f"Applied overrides | tolerance={tolerance} seed={seed} "
        f"grid_scale={grid_scale} out={out}"
    )
    return resolved

"""
Number-Density Handler.

This handler evaluates the number amplitude of a state on the real-space
grid (or at explicit points), writes the density table and checks that a
normalized state carries unit total probability.
"""

import time
import logging
from typing import Optional

import numpy as np

from src.models.experiment_config import ExperimentConfig
from src.models.report_models import CommandResult, NumberDensityReport
from src.photon.kgrid import CartesianGrid
from src.photon.localization import glauber_compare, number_amplitude, number_density_moments
from src.photon.polarization import ChiSpec
from src.services.workflows.base_handler import BaseCommandHandler
from src.workflows.command_types import CommandType

logger = logging.getLogger(__name__)


class NumberDensityHandler(BaseCommandHandler):
    """Handler for number amplitudes and densities.

    The fft path covers the full dual r-grid of a Cartesian k-grid; the
    quadrature path evaluates explicit points on either grid family.
    """

    def __init__(self):
        """Initialize number-density handler."""
        super().__init__(CommandType.NUMBER_DENSITY)

    def execute(self, config: ExperimentConfig) -> CommandResult:
        """Evaluate the number density of the configured state.

        Args:
            config: Resolved experiment config

        Returns:
            CommandResult; passed iff the total probability of a normalized
            state is within tolerance of one (other states always pass)

        Raises:
            ConfigurationError: If [number_density] is missing or the state is unknown
            WrongGridError: For the fft path on a spherical grid
        """
        start_time = time.time()
        self._log_start(config)

        section = self._section(config)
        factory = self._factory(config)
        psi = factory.build(section.state, section.grid)
        state_config = factory.state_config(section.state)

        points = np.asarray(section.points, dtype=float) if section.points is not None else None
        amplitude = number_amplitude(psi, section.t, ChiSpec.from_string(section.chi), section.path, points)
        density = amplitude.density()
        peak = int(np.argmax(density))

        failures = []
        total: Optional[float] = None
        first_moment = None
        if amplitude.cell_volume is not None:
            total = amplitude.total_probability()
            first_moment = number_density_moments(amplitude).tolist()
            normalized = state_config.normalize and state_config.kind != "localized"
            if normalized and abs(total - 1.0) > section.tolerance:
                failures.append(
                    f"total probability {total:.15f} deviates from 1 by more than {section.tolerance:.1e}"
                )
            logger.info(f"Total probability of '{section.state}': {total:.15f}")

        distance: Optional[float] = None
        if section.glauber and isinstance(psi.grid, CartesianGrid):
            distance = glauber_compare(psi, section.t)
            logger.info(f"Glauber density distance of '{section.state}': {distance:.3e}")

        report = NumberDensityReport(
            state=section.state,
            t=section.t,
            chi=section.chi,
            path=section.path,
            points=int(amplitude.r_points.shape[0]),
            total_probability=total,
            max_density=float(density[peak]),
            argmax=amplitude.r_points[peak].tolist(),
            first_moment=first_moment,
            glauber_distance=distance,
        )

        tables = {"density": amplitude.columns()}
        self._export_states(config, tables, {(section.state, section.grid): psi})

        result = CommandResult(
            passed=not failures,
            tolerance=section.tolerance,
            grids=factory.descriptors(),
            result=report.model_dump(),
            tables=tables,
            failures=failures,
        )
        self._log_complete(result, time.time() - start_time)
        return result

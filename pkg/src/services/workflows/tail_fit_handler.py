"""
Tail-Fit Handler.

This handler fits the radial falloff of the regulated localized-field model
after extrapolating the regulator to zero, and runs the control exponents
next to it.
"""

import time
import logging
from typing import Dict, List

import numpy as np

from src.core.constants import TAIL_ORACLE_TOLERANCE
from src.models.experiment_config import ExperimentConfig
from src.models.report_models import CommandResult, TailFitReport
from src.photon.localization import expected_tail_slope, tail_exponent, tail_radii
from src.services.workflows.base_handler import BaseCommandHandler
from src.workflows.command_types import CommandType

logger = logging.getLogger(__name__)


def _describe(report: TailFitReport) -> str:
    if report.vanishing:
        return f"alpha={report.alpha:+g}: vanishing tail"
    return f"alpha={report.alpha:+g}: slope {report.slope:.4f} +/- {report.slope_half_width:.1e}"


class TailFitHandler(BaseCommandHandler):
    """Handler for the field-tail exponent.

    Passes when the main fit meets its expected slope, the quadrature agrees
    with the closed form and every control is distinguishable from the main
    slope.
    """

    def __init__(self):
        """Initialize tail-fit handler."""
        super().__init__(CommandType.TAIL_FIT)

    def execute(self, config: ExperimentConfig) -> CommandResult:
        """Fit the main exponent and the controls.

        Args:
            config: Resolved experiment config

        Returns:
            CommandResult with the main fit, the control fits and the tail table

        Raises:
            InvalidArgumentError: For radii inside the core, a short radius
                span or a non-decreasing regulator ladder
        """
        start_time = time.time()
        self._log_start(config)

        section = config.tail_fit
        radii = tail_radii(section.radii.start, section.radii.stop, section.radii.count)

        def fit(alpha: float, check: bool) -> TailFitReport:
            expected = None
            if check:
                expected = section.expected_slope if section.expected_slope is not None else expected_tail_slope(alpha)
            return tail_exponent(
                radii,
                section.epsilon_factors,
                alpha=alpha,
                core_radius=section.core_radius,
                expected_slope=expected,
                slope_tolerance=section.slope_tolerance,
            )

        main = fit(section.alpha, check=True)
        controls: List[TailFitReport] = [fit(alpha, check=False) for alpha in section.controls]
        logger.info(_describe(main))
        for control in controls:
            logger.info(f"Control {_describe(control)}")

        failures = []
        if main.expected_slope is not None and main.vanishing:
            failures.append(f"alpha={section.alpha:+g}: tail vanishes, expected slope {main.expected_slope}")
        elif not main.within_tolerance:
            failures.append(
                f"alpha={section.alpha:+g}: slope {main.slope:.4f} outside "
                f"{main.expected_slope} +/- {section.slope_tolerance}"
            )
        for report in [main, *controls]:
            if report.oracle_max_error > TAIL_ORACLE_TOLERANCE:
                failures.append(
                    f"alpha={report.alpha:+g}: quadrature error {report.oracle_max_error:.2e} "
                    f"against the closed form exceeds {TAIL_ORACLE_TOLERANCE:.0e}"
                )
        if main.slope is not None:
            for control in controls:
                if control.slope is not None and abs(control.slope - main.slope) <= section.slope_tolerance:
                    failures.append(
                        f"control alpha={control.alpha:+g} is indistinguishable from the main fit "
                        f"(slope {control.slope:.4f})"
                    )

        table: Dict[str, object] = {
            "r": radii,
            "abs_field": np.asarray(main.extrapolated),
        }
        for control in controls:
            table[f"abs_field_alpha{control.alpha:+g}"] = np.asarray(control.extrapolated)

        result = CommandResult(
            passed=not failures,
            tolerance=section.slope_tolerance,
            grids=[],
            result={
                "fit": main.model_dump(),
                "within_tolerance": main.within_tolerance,
                "controls": [control.model_dump() for control in controls],
            },
            tables={"tail": table},
            failures=failures,
        )
        self._log_complete(result, time.time() - start_time)
        return result

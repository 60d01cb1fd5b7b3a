"""
Boost-Check Handler.

This handler boosts a state pair, measures the invariance defect of the
Lorentz-invariant scalar product per rapidity, runs a grid-refinement ladder
and checks helicity preservation for single-helicity states.
"""

import time
import logging
from typing import Dict, Optional

import numpy as np

from src.core.error_handling import InvalidStateError, NeedsAnalyticStateError
from src.core.logging import log_timing
from src.models.experiment_config import ExperimentConfig
from src.models.report_models import BoostReport, CommandResult, ComplexValue
from src.photon.lorentz import (
    Boost,
    boosted_grid,
    embed,
    helicity_invariance_check,
    invariance_defect,
    ladder_converges,
    refinement_ladder,
    wigner_phase,
)
from src.photon.wavefunction import WaveFunctionK
from src.services.workflows.base_handler import BaseCommandHandler
from src.workflows.command_types import CommandType

logger = logging.getLogger(__name__)


def _is_single_helicity(psi: WaveFunctionK) -> bool:
    return psi.has_analytic_amplitude and bool(np.any(psi.c_plus)) != bool(np.any(psi.c_minus))


class BoostCheckHandler(BaseCommandHandler):
    """Handler for Lorentz invariance and helicity preservation.

    Both states must carry analytic amplitudes; the boosted samples are
    re-evaluated at the pulled-back momenta of an inflated grid.
    """

    def __init__(self):
        """Initialize boost-check handler."""
        super().__init__(CommandType.BOOST_CHECK)

    def execute(self, config: ExperimentConfig) -> CommandResult:
        """Check the invariance defect at every configured rapidity.

        Args:
            config: Resolved experiment config

        Returns:
            CommandResult; passed iff every defect and leakage is within tolerance
            and, unless disabled, every refinement ladder converges

        Raises:
            ConfigurationError: If [boost_check] is missing or names unknown states
            NeedsAnalyticStateError: For sampled-only states
            IllConditionedComparisonError: If the rest-frame product vanishes
        """
        start_time = time.time()
        self._log_start(config)

        section = self._section(config)
        factory = self._factory(config)
        grid = factory.grid(section.grid)
        psi = factory.build(section.state, section.grid)
        phi = factory.build(section.partner or section.state, section.grid)
        single_helicity = _is_single_helicity(psi)

        reports = []
        failures = []
        rapidity_table: Dict[str, list] = {
            key: [] for key in ("rapidity", "defect", "sp_rest_re", "sp_rest_im", "sp_boosted_re", "sp_boosted_im")
        }
        ladder_table: Dict[str, list] = {key: [] for key in ("rapidity", "level", "nodes", "boosted_nodes", "defect")}

        for rapidity in section.rapidities:
            boost = Boost(rapidity, tuple(section.direction))
            target = boosted_grid(grid, rapidity)
            defect, sp_rest, sp_boosted = invariance_defect(embed(phi), embed(psi), boost, target)
            logger.info(f"eta={rapidity}: invariance defect {defect:.3e}")
            if defect > section.tolerance:
                failures.append(f"eta={rapidity}: defect {defect:.3e} exceeds {section.tolerance:.1e}")

            steps = []
            converges: Optional[bool] = None
            if section.ladder_levels > 0:
                with log_timing(logger, f"refinement ladder at eta={rapidity}"):
                    steps = refinement_ladder(phi, psi, boost, grid, section.ladder_levels)
                converges = ladder_converges(steps)
                if not converges:
                    message = f"eta={rapidity}: refinement ladder is not converging 10x per rung"
                    if section.require_ladder_convergence:
                        failures.append(message)
                    else:
                        logger.warning(message)
                for step in steps:
                    ladder_table["rapidity"].append(rapidity)
                    ladder_table["level"].append(step.level)
                    ladder_table["nodes"].append(step.grid["nodes"])
                    ladder_table["boosted_nodes"].append(step.boosted_grid["nodes"])
                    ladder_table["defect"].append(step.defect)

            leakage: Optional[float] = None
            if single_helicity:
                try:
                    leakage = helicity_invariance_check(psi, boost)
                except (InvalidStateError, NeedsAnalyticStateError) as e:
                    logger.debug(f"Skipping helicity check: {e}")
                if leakage is not None and leakage > section.helicity_tolerance:
                    failures.append(
                        f"eta={rapidity}: helicity leakage {leakage:.3e} exceeds {section.helicity_tolerance:.1e}"
                    )

            reports.append(
                BoostReport(
                    rapidity=rapidity,
                    direction=list(boost.direction),
                    defect=defect,
                    sp_rest=ComplexValue.from_complex(sp_rest),
                    sp_boosted=ComplexValue.from_complex(sp_boosted),
                    grid=grid.descriptor(),
                    boosted_grid=target.descriptor(),
                    refinement=steps,
                    refinement_converges=converges,
                    helicity_leakage=leakage,
                )
            )
            rapidity_table["rapidity"].append(rapidity)
            rapidity_table["defect"].append(defect)
            rapidity_table["sp_rest_re"].append(sp_rest.real)
            rapidity_table["sp_rest_im"].append(sp_rest.imag)
            rapidity_table["sp_boosted_re"].append(sp_boosted.real)
            rapidity_table["sp_boosted_im"].append(sp_boosted.imag)

        payload = {
            "state": section.state,
            "partner": section.partner or section.state,
            "boosts": [report.model_dump() for report in reports],
        }
        if single_helicity:
            payload["wigner_phase_max"] = [
                float(np.nanmax(np.abs(wigner_phase(psi, Boost(r, tuple(section.direction))).phase), initial=0.0))
                for r in section.rapidities
            ]

        tables = {"rapidities": rapidity_table}
        if ladder_table["level"]:
            tables["ladder"] = ladder_table
        self._export_states(
            config, tables, {(section.state, section.grid): psi, (section.partner or section.state, section.grid): phi}
        )

        result = CommandResult(
            passed=not failures,
            tolerance=section.tolerance,
            grids=factory.descriptors(),
            result=payload,
            tables=tables,
            failures=failures,
        )
        self._log_complete(result, time.time() - start_time)
        return result

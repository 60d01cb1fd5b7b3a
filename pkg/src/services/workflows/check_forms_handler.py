"""
Check-Forms Handler.

This handler evaluates the scalar product of state pairs in every form the
grid supports and checks that the forms agree within tolerance.
"""

import time
import logging
from itertools import combinations_with_replacement
from typing import Dict, List, Tuple

from src.core.error_handling import ConfigurationError
from src.models.experiment_config import ExperimentConfig
from src.models.report_models import CommandResult
from src.photon.scalarprod import compare_forms
from src.photon.wavefunction import WaveFunctionK
from src.services.workflows.base_handler import BaseCommandHandler
from src.workflows.command_types import CommandType

logger = logging.getLogger(__name__)


class CheckFormsHandler(BaseCommandHandler):
    """Handler for scalar-product form equivalence.

    Every pair [bra, ket] is compared on every selected grid family. The
    real-space form joins the comparison on Cartesian grids only.
    """

    def __init__(self):
        """Initialize check-forms handler."""
        super().__init__(CommandType.CHECK_FORMS)

    @staticmethod
    def _pairs(config: ExperimentConfig) -> List[Tuple[str, str]]:
        if config.check_forms.pairs is not None:
            return [(bra, ket) for bra, ket in config.check_forms.pairs]
        names = [state.name for state in config.states]
        return list(combinations_with_replacement(names, 2))

    def execute(self, config: ExperimentConfig) -> CommandResult:
        """Compare forms for every configured pair.

        Args:
            config: Resolved experiment config

        Returns:
            CommandResult; passed iff every pair's max deviation is within tolerance

        Raises:
            ConfigurationError: If no states are defined or a pair names an unknown state
        """
        start_time = time.time()
        self._log_start(config)

        section = config.check_forms
        if not config.states:
            raise ConfigurationError("check-forms needs at least one [[states]] entry")
        pairs = self._pairs(config)
        families = section.grids or config.grids.families()
        factory = self._factory(config)

        cache: Dict[Tuple[str, str], WaveFunctionK] = {}

        def state(name: str, family: str) -> WaveFunctionK:
            key = (name, family)
            if key not in cache:
                cache[key] = factory.build(name, family)
            return cache[key]

        entries = []
        failures = []
        table: Dict[str, list] = {key: [] for key in ("grid", "bra", "ket", "form", "re", "im", "max_deviation")}

        for family in families:
            for bra, ket in pairs:
                report = compare_forms(state(bra, family), state(ket, family), section.alpha)
                entries.append({"grid": family, "bra": bra, "ket": ket, **report.model_dump()})
                logger.info(
                    f"Pair {bra}|{ket} on {family}: max deviation {report.max_deviation:.3e}"
                )
                if report.max_deviation > section.tolerance:
                    worst = max(report.deviations, key=report.deviations.get)
                    failures.append(
                        f"{bra}|{ket} on {family}: max deviation {report.max_deviation:.3e} "
                        f"({worst}) exceeds {section.tolerance:.1e}"
                    )
                for form, value in report.values.items():
                    table["grid"].append(family)
                    table["bra"].append(bra)
                    table["ket"].append(ket)
                    table["form"].append(form)
                    table["re"].append(value.re)
                    table["im"].append(value.im)
                    table["max_deviation"].append(report.max_deviation)

        tables = {"forms": table}
        self._export_states(config, tables, cache)

        max_deviation = max((entry["max_deviation"] for entry in entries), default=0.0)
        result = CommandResult(
            passed=not failures,
            tolerance=section.tolerance,
            grids=factory.descriptors(),
            result={"alpha": section.alpha, "max_deviation": max_deviation, "pairs": entries},
            tables=tables,
            failures=failures,
        )
        self._log_complete(result, time.time() - start_time)
        return result

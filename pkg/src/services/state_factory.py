"""
Grid and State Factory.

This module turns the declarative parts of an ExperimentConfig into grids
and sampled wave functions. Built grids are cached per factory so every
state of a run shares the same grid object.
"""

import logging
from typing import Dict, Optional

from src.core.error_handling import ConfigurationError
from src.models.experiment_config import ExperimentConfig, StateConfig
from src.photon.kgrid import Grid, build_cartesian_grid, build_spherical_grid
from src.photon.localization import LocalizedState
from src.photon.polarization import ChiSpec
from src.photon.states import (
    AnalyticAmplitude,
    GaussianAmplitude,
    OscillatorAmplitude,
    TwoHelicityAmplitude,
    random_state,
)
from src.photon.wavefunction import WaveFunctionK, normalize

logger = logging.getLogger(__name__)


class StateFactory:
    """Build grids and named states from an experiment config.

    Attributes:
        config: Resolved experiment config
    """

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self._grids: Dict[str, Grid] = {}

    def grid(self, family: str) -> Grid:
        """Return the grid of a family, building it on first use.

        Args:
            family: "spherical" or "cartesian"

        Raises:
            ConfigurationError: If the config does not define that family
        """
        if family in self._grids:
            return self._grids[family]

        grid_config = getattr(self.config.grids, family, None)
        if grid_config is None:
            raise ConfigurationError(
                f"Command needs a [grids.{family}] table; defined: {self.config.grids.families()}"
            )
        if family == "spherical":
            grid = build_spherical_grid(grid_config.n_r, grid_config.n_theta, grid_config.n_phi, grid_config.k_max, grid_config.radial_rule)
        else:
            grid = build_cartesian_grid(grid_config.n, grid_config.k_max, grid_config.centering, tuple(grid_config.k_center))

        logger.info(f"Built {family} grid with {grid.node_count} nodes")
        self._grids[family] = grid
        return grid

    def state_config(self, name: str) -> StateConfig:
        """Look up a state definition by name.

        Raises:
            ConfigurationError: If no state has that name
        """
        state = self.config.state(name)
        if state is None:
            raise ConfigurationError(
                f"Unknown state '{name}'. Defined: {[s.name for s in self.config.states]}"
            )
        return state

    def amplitude(self, state: StateConfig) -> Optional[AnalyticAmplitude]:
        """Closed-form amplitude of a state, or None for sampled-only kinds."""
        if state.kind == "gaussian":
            return GaussianAmplitude(tuple(state.k0), state.s, state.helicity, tuple(state.shift))
        if state.kind == "two_helicity":
            return TwoHelicityAmplitude(tuple(state.k0), state.s, state.chi_prime)
        if state.kind == "oscillator":
            return OscillatorAmplitude(state.order, state.helicity)
        if state.kind == "localized":
            return LocalizedState(tuple(state.r0), state.t0, state.helicity, ChiSpec.from_string(state.chi))
        return None

    def build(self, name: str, family: str) -> WaveFunctionK:
        """Sample a named state on the grid of ``family``.

        Localized states are never normalized; random states use their own
        seed, falling back to the run seed.

        Args:
            name: State name from the config
            family: Grid family

        Returns:
            WaveFunctionK labelled with the state name
        """
        state = self.state_config(name)
        grid = self.grid(family)

        amplitude = self.amplitude(state)
        if amplitude is None:
            seed = state.seed if state.seed is not None else self.config.seed
            wf = random_state(grid, seed, alpha=state.alpha, label=name)
        else:
            wf = amplitude.build(grid, alpha=state.alpha, label=name)

        if state.normalize and state.kind != "localized":
            wf = normalize(wf)

        logger.debug(f"Built state '{name}' ({state.kind}) on {family} grid")
        return wf

    def descriptors(self) -> list[dict]:
        """Descriptors of every grid built so far, in family order."""
        return [self._grids[family].descriptor() for family in ("spherical", "cartesian") if family in self._grids]

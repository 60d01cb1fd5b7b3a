"""
Unit tests for boosts and the Lorentz-invariance checks.

The invariance tests use a z-centered Gaussian packet k0 = 3 z_hat, s = 1.5
on the (64, 48, 64, k_max = 12) spherical grid.
"""

import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.error_handling import (
    IllConditionedComparisonError,
    InvalidArgumentError,
    InvalidStateError,
    NeedsAnalyticStateError,
)
from src.models.report_models import RefinementStep
from src.photon.kgrid import CartesianGrid, KGrid, build_cartesian_grid, build_spherical_grid
from src.photon.lorentz import (
    Boost,
    boost_state,
    boosted_grid,
    embed,
    helicity_invariance_check,
    helicity_projection,
    invariance_defect,
    ladder_converges,
    measure_identity_defect,
    refinement_ladder,
    wigner_phase,
)
from src.photon.states import GaussianAmplitude, TwoHelicityAmplitude
from src.photon.wavefunction import make_wavefunction, normalize

directions = st.tuples(
    st.floats(min_value=-1.0, max_value=1.0),
    st.floats(min_value=-1.0, max_value=1.0),
    st.floats(min_value=-1.0, max_value=1.0),
).filter(lambda v: np.linalg.norm(v) > 1e-3)


class TestBoost:
    """Test cases for the Boost matrix."""

    @settings(max_examples=50, deadline=None)
    @given(rapidity=st.floats(min_value=-2.0, max_value=2.0), direction=directions)
    def test_preserves_metric(self, rapidity, direction):
        """Test L^T g L = g."""
        assert Boost(rapidity, direction).metric_defect() < 1e-12

    @settings(max_examples=50, deadline=None)
    @given(rapidity=st.floats(min_value=-2.0, max_value=2.0), direction=directions)
    def test_inverse(self, rapidity, direction):
        boost = Boost(rapidity, direction)

        np.testing.assert_allclose(boost.matrix @ boost.inverse().matrix, np.eye(4), atol=1e-12)

    def test_z_boost_frequency(self):
        """Test omega' = omega (cosh eta - cos theta sinh eta) and on-shell images."""
        boost = Boost(0.5)
        kvec = np.array([[0.0, 0.0, 2.0], [1.0, 0.0, 0.0], [0.0, 0.0, -1.0]])

        omega, k_prime = boost.map_momenta(kvec)

        np.testing.assert_allclose(omega, [2.0 * np.exp(-0.5), np.cosh(0.5), np.exp(0.5)])
        np.testing.assert_allclose(np.linalg.norm(k_prime, axis=1), omega)

    def test_direction_is_normalized(self):
        assert Boost(0.1, (0.0, 3.0, 4.0)).direction == pytest.approx((0.0, 0.6, 0.8))

    @pytest.mark.parametrize("kwargs", [{"rapidity": np.inf}, {"rapidity": 0.1, "direction": (0.0, 0.0, 0.0)}])
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidArgumentError):
            Boost(**kwargs)

    def test_large_rapidity_warns(self, caplog):
        with caplog.at_level(logging.WARNING, logger="src.photon.lorentz"):
            Boost(2.5)

        assert "exceeds" in caplog.text


class TestBoostedGrid:
    """Test cases for boosted_grid."""

    def test_spherical(self):
        grid = boosted_grid(build_spherical_grid(64, 48, 64, k_max=12.0), 0.5)

        assert isinstance(grid, KGrid)
        assert grid.n_r == int(np.ceil(64 * np.exp(0.5)))
        assert grid.k_max == pytest.approx(12.0 * np.exp(0.5))
        assert (grid.n_theta, grid.n_phi) == (48, 64)

    def test_cartesian_rounds_to_power_of_two(self):
        grid = boosted_grid(build_cartesian_grid(16, 4.0, centering="cell"), -0.5)

        assert isinstance(grid, CartesianGrid)
        assert grid.n == 32
        assert grid.centering == "cell"

    def test_zero_rapidity_keeps_counts(self):
        assert boosted_grid(build_cartesian_grid(16, 4.0), 0.0).n == 16


class TestInvariance:
    """Test cases for invariance_defect and measure_identity_defect."""

    @pytest.fixture(scope="class")
    def grid(self):
        return build_spherical_grid(64, 48, 64, k_max=12.0)

    @pytest.fixture(scope="class")
    def packet(self, grid):
        return normalize(GaussianAmplitude(k0=(0.0, 0.0, 3.0), s=1.5).build(grid, label="packet"))

    @pytest.mark.parametrize("rapidity", [0.25, 0.5, 1.0])
    def test_scalar_product_is_invariant(self, packet, rapidity):
        psi4 = embed(packet)

        defect, sp_rest, sp_boosted = invariance_defect(psi4, psi4, Boost(rapidity))

        assert sp_rest.real == pytest.approx(1.0, rel=1e-10)
        assert defect < 1e-6

    def test_oblique_boost_is_invariant(self, packet):
        psi4 = embed(packet)

        defect, _, _ = invariance_defect(psi4, psi4, Boost(1.0, (0.6, 0.0, 0.8)))

        assert defect < 1e-6

    def test_ladder_converges_on_packet(self, packet, grid):
        """Test a tenfold drop per rung down to the configured grid."""
        steps = refinement_ladder(packet, packet, Boost(0.5), grid, levels=3)

        assert [step.grid["n_r"] for step in steps] == [16, 32, 64]
        assert ladder_converges(steps)
        assert steps[-1].defect < 1e-6

    def test_boosted_closure_composes(self, packet):
        """Test that boosting twice along z equals one boost by the summed rapidity."""
        psi4 = embed(packet)
        kvec = packet.grid.kvec[::97]

        twice = boost_state(boost_state(psi4, Boost(0.2)), Boost(0.3)).field(kvec)
        once = boost_state(psi4, Boost(0.5)).field(kvec)

        np.testing.assert_allclose(twice, once, atol=1e-12)

    def test_orthogonal_states_are_ill_conditioned(self):
        grid = build_spherical_grid(16, 8, 8, k_max=6.0)
        plus = GaussianAmplitude(k0=(0.0, 0.0, 1.0), helicity=1).build(grid)
        minus = GaussianAmplitude(k0=(0.0, 0.0, 1.0), helicity=-1).build(grid)

        with pytest.raises(IllConditionedComparisonError):
            invariance_defect(embed(plus), embed(minus), Boost(0.3))

    def test_measure_identity(self, grid):
        """Test that d^3k / omega is invariant for a smooth integrand."""

        def f(kvec):
            return np.exp(-np.sum((kvec - np.array([0.0, 0.0, 3.0])) ** 2, axis=1) / 2.25)

        assert measure_identity_defect(f, grid, Boost(0.5)) < 1e-6


class TestBoostState:
    """Test cases for boost_state on sampled fields."""

    def setup_method(self):
        self.grid = build_cartesian_grid(32, 8.0, centering="cell")
        self.packet = GaussianAmplitude(k0=(3.0, 0.0, 0.0), s=1.5)

    def test_sampled_field_needs_interpolation(self):
        sampled = make_wavefunction(self.grid, self.packet(self.grid.kvec), None)

        with pytest.raises(NeedsAnalyticStateError, match="interpolate=True"):
            boost_state(embed(sampled), Boost(0.2))

    def test_interpolation_tracks_analytic_boost(self):
        analytic = self.packet.build(self.grid)
        sampled = make_wavefunction(self.grid, analytic.c_plus, None)

        exact = boost_state(embed(analytic), Boost(0.2)).components
        approx = boost_state(embed(sampled), Boost(0.2), interpolate=True).components

        assert np.linalg.norm(approx - exact) < 0.15 * np.linalg.norm(exact)


class TestHelicity:
    """Test cases for helicity preservation and the Wigner phase."""

    def setup_method(self):
        self.grid = build_spherical_grid(8, 8, 8, k_max=6.0)
        self.psi = GaussianAmplitude(k0=(0.5, 0.0, 2.0), s=1.5, helicity=-1).build(self.grid)

    @pytest.mark.parametrize("direction", [(0.0, 0.0, 1.0), (1.0, 0.0, 0.0), (1.0, -2.0, 0.5)])
    def test_helicity_is_preserved(self, direction):
        assert helicity_invariance_check(self.psi, Boost(0.7, direction)) < 1e-10

    def test_transverse_magnitude(self):
        """Test |e_sigma* . T| = |c(L^-1 k')| sqrt(omega_rest)."""
        projection = helicity_projection(self.psi, Boost(0.4, (0.0, 1.0, 0.0)))

        assert projection.sigma == -1
        np.testing.assert_allclose(np.abs(projection.same), projection.expected, rtol=1e-10, atol=1e-14)

    def test_z_boost_has_no_wigner_rotation(self):
        phase = wigner_phase(self.psi, Boost(0.8))

        assert np.nanmax(np.abs(phase.phase)) < 1e-10
        assert np.max(phase.leakage) < 1e-10

    def test_mixed_helicity_rejected(self):
        linear = TwoHelicityAmplitude(s=1.0).build(self.grid)

        with pytest.raises(InvalidStateError, match="exactly one helicity"):
            helicity_invariance_check(linear, Boost(0.3))

    def test_sampled_state_rejected(self):
        sampled = make_wavefunction(self.grid, self.psi.c_plus, self.psi.c_minus)

        with pytest.raises(NeedsAnalyticStateError):
            wigner_phase(sampled, Boost(0.3))


class TestRefinementLadder:
    """Test cases for refinement_ladder and ladder_converges."""

    def test_rungs_end_at_configured_grid(self):
        grid = build_spherical_grid(16, 12, 16, k_max=10.0)
        psi = GaussianAmplitude(k0=(0.0, 0.0, 2.0), s=1.5).build(grid)

        steps = refinement_ladder(psi, psi, Boost(0.3), grid, levels=2)

        assert [step.level for step in steps] == [0, 1]
        assert steps[0].grid["n_r"] == 8
        assert steps[-1].grid == grid.descriptor()

    def test_cartesian_rungs(self):
        grid = build_cartesian_grid(16, 6.0, centering="cell")
        psi = GaussianAmplitude(k0=(2.0, 0.0, 0.0), s=1.5).build(grid)

        steps = refinement_ladder(psi, psi, Boost(0.1, (1.0, 0.0, 0.0)), grid, levels=2)

        assert [step.grid["n"] for step in steps] == [8, 16]
        assert steps[-1].boosted_grid["n"] == 32

    def test_levels_must_be_positive(self):
        grid = build_spherical_grid(8, 8, 8, k_max=4.0)
        psi = GaussianAmplitude().build(grid)

        with pytest.raises(InvalidArgumentError, match="at least one level"):
            refinement_ladder(psi, psi, Boost(0.1), grid, levels=0)

    @pytest.mark.parametrize(
        "defects, expected",
        [([1e-3, 1e-5, 1e-7], True), ([1e-3, 5e-4], False), ([1e-13, 1e-13], True), ([1e-4], True)],
    )
    def test_ladder_converges(self, defects, expected):
        steps = [RefinementStep(level=i, grid={}, boosted_grid={}, defect=d) for i, d in enumerate(defects)]

        assert ladder_converges(steps) is expected

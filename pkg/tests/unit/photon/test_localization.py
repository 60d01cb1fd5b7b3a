"""
Unit tests for localized states, the number amplitude and the tail fit.

Tests localization to a single r-node, the two evaluation paths, the
TM/TE decomposition, the radial falloff exponents and the Glauber
comparison.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.error_handling import InvalidArgumentError, InvalidStateError, WrongGridError
from src.photon.kgrid import build_cartesian_grid, build_spherical_grid
from src.photon.localization import (
    LocalizedState,
    NumberAmplitudePath,
    expected_tail_slope,
    extrapolate_to_zero,
    glauber_compare,
    linear_detection,
    localized_state,
    number_amplitude,
    number_density_moments,
    radial_tail_integral,
    radial_tail_oracle,
    tail_exponent,
    tail_field,
    tail_radii,
)
from src.photon.polarization import ChiSpec
from src.photon.scalarprod import apply_position_operator, sp_alpha_pair
from src.photon.states import GaussianAmplitude
from src.photon.wavefunction import (
    convert_alpha,
    evolve,
    make_wavefunction,
    normalize,
    synthesize_real_space,
)

amplitudes = st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False)


class TestLocalizedState:
    """Test cases for the localized detection state."""

    def setup_method(self):
        self.grid = build_cartesian_grid(64, np.pi, centering="cell")
        self.r0 = (2.0, 0.0, -3.0)

    def test_number_amplitude_is_a_single_node(self):
        """Test c(r, t0) = 1 at r0 and 0 at every other node of the dual grid."""
        wf = localized_state(self.grid, self.r0)

        amplitude = number_amplitude(wf)
        density = amplitude.density()
        peak = int(np.argmax(density))

        np.testing.assert_allclose(amplitude.r_points[peak], self.r0)
        assert density[peak] == pytest.approx(1.0, rel=1e-12)
        assert np.delete(density, peak).max() < 1e-20
        assert amplitude.total_probability() == pytest.approx(1.0, rel=1e-12)

    def test_spreads_away_from_t0(self):
        """Test that the amplitude spreads at t != t0 with the total probability kept."""
        amplitude = number_amplitude(localized_state(self.grid, self.r0), t=2.0)

        assert amplitude.density().max() < 0.5
        assert amplitude.total_probability() == pytest.approx(1.0, rel=1e-12)

    def test_minus_phi_gauge_localizes_too(self):
        wf = localized_state(self.grid, self.r0, sigma=-1, chi=ChiSpec.minus_phi())

        amplitude = number_amplitude(wf, chi=ChiSpec.minus_phi())

        assert amplitude.density().max() == pytest.approx(1.0, rel=1e-12)
        assert not np.any(amplitude.c_plus)

    def test_unit_modulus_amplitudes(self):
        wf = localized_state(build_spherical_grid(4, 4, 4, k_max=1.0), self.r0, t0=0.5)

        np.testing.assert_allclose(np.abs(wf.c_plus), (2.0 * np.pi) ** -1.5)

    def test_invalid(self):
        with pytest.raises(InvalidArgumentError, match="r0"):
            LocalizedState(r0=(0.0, 1.0))
        with pytest.raises(InvalidArgumentError, match="helicity"):
            LocalizedState(sigma=2)

    def test_describe(self):
        assert LocalizedState(r0=(1.0, 2.0, 3.0)).describe()["kind"] == "localized"


class TestLocalizedPairs:
    """Test cases for scalar products between localized states."""

    def setup_method(self):
        self.grid = build_cartesian_grid(32, 2.0 * np.pi, centering="cell")
        self.r0 = (1.0, 0.5, -1.5)

    def test_biorthonormal_pair(self):
        """Test <d^(-1/2)(r0)|d^(1/2)(r0)> = 1 / delta_r^3."""
        bra = localized_state(self.grid, self.r0, alpha=-0.5)
        ket = localized_state(self.grid, self.r0, alpha=0.5)

        assert self.grid.delta_r == pytest.approx(0.5)
        assert sp_alpha_pair(bra, ket, 0.5) == pytest.approx(1.0 / self.grid.delta_r ** 3, rel=1e-12)

    @pytest.mark.parametrize("offset", [(0.5, 0.0, 0.0), (0.0, 1.0, -0.5), (3.0, -2.5, 4.0)])
    def test_displaced_states_are_orthogonal(self, offset):
        displaced = tuple(np.add(self.r0, offset))
        bra = localized_state(self.grid, self.r0, alpha=-0.5)
        ket = localized_state(self.grid, displaced, alpha=0.5)

        assert abs(sp_alpha_pair(bra, ket, 0.5)) < 1e-12

    def test_opposite_helicities_are_orthogonal(self):
        bra = localized_state(self.grid, self.r0, sigma=1, alpha=-0.5)
        ket = localized_state(self.grid, self.r0, sigma=-1, alpha=0.5)

        assert abs(sp_alpha_pair(bra, ket, 0.5)) < 1e-12

    def test_position_eigenstate_at_t0(self):
        """Test r d(r0) = r0 d(r0) nodewise with spectral gradients."""
        wf = localized_state(self.grid, self.r0)

        for j, component in enumerate(apply_position_operator(wf)):
            np.testing.assert_allclose(component.c_plus, self.r0[j] * wf.c_plus, rtol=0, atol=1e-12)
            assert not np.any(component.c_minus)


class TestNumberAmplitude:
    """Test cases for number_amplitude."""

    def setup_method(self):
        self.grid = build_cartesian_grid(64, 8.0, centering="cell")
        self.packet = GaussianAmplitude(s=np.sqrt(2.0))
        self.psi = self.packet.build(self.grid)

    def test_fft_matches_closed_form(self):
        """Test the real-space Gaussian exp(-r^2/2) for s = sqrt(2)."""
        amplitude = number_amplitude(self.psi)

        np.testing.assert_allclose(amplitude.c_plus, self.packet.real_space_profile(amplitude.r_points), atol=1e-10)

    def test_quadrature_matches_fft(self):
        points = self.grid.r_points[::5003]

        direct = number_amplitude(self.psi, path="quadrature", r_points=points)
        full = number_amplitude(self.psi, path=NumberAmplitudePath.FFT)

        np.testing.assert_allclose(direct.c_plus, full.c_plus[::5003], atol=1e-11)
        assert direct.cell_volume is None

    def test_quadrature_on_spherical_grid(self):
        grid = build_spherical_grid(64, 24, 32, k_max=12.0)
        psi = self.packet.build(grid)
        points = np.array([[0.0, 0.0, 0.0], [1.0, -0.5, 0.25]])

        amplitude = number_amplitude(psi, path="direct", r_points=points)

        np.testing.assert_allclose(amplitude.c_plus, self.packet.real_space_profile(points), atol=1e-10)

    def test_normalized_state_has_unit_probability(self):
        psi = evolve(normalize(GaussianAmplitude(k0=(1.0, 0.0, 0.0), s=1.5).build(self.grid)), 1.5)

        assert number_amplitude(psi).total_probability() == pytest.approx(1.0, rel=1e-12)

    def test_first_moment_is_minus_shift(self):
        grid = build_cartesian_grid(64, 16.0, centering="cell")
        shift = np.array([1.0, -0.5, 0.25])
        psi = GaussianAmplitude(s=2.0, shift=tuple(shift)).build(grid)

        np.testing.assert_allclose(number_density_moments(number_amplitude(psi)), -shift, atol=1e-9)

    def test_fft_needs_cartesian_grid(self):
        psi = self.packet.build(build_spherical_grid(4, 4, 5, k_max=2.0))

        with pytest.raises(WrongGridError, match="quadrature"):
            number_amplitude(psi)
        with pytest.raises(InvalidArgumentError, match="needs r_points"):
            number_amplitude(psi, path="quadrature")

    def test_fft_rejects_points(self):
        with pytest.raises(InvalidArgumentError, match="drop r_points"):
            number_amplitude(self.psi, r_points=np.zeros((1, 3)))

    def test_partial_points_have_no_total(self):
        amplitude = number_amplitude(self.psi, path="quadrature", r_points=np.zeros((1, 3)))

        with pytest.raises(WrongGridError):
            amplitude.total_probability()
        with pytest.raises(WrongGridError):
            number_density_moments(amplitude)

    def test_zero_density_has_no_moments(self):
        empty = make_wavefunction(build_cartesian_grid(8, 1.0), None, None)

        with pytest.raises(InvalidStateError):
            number_density_moments(number_amplitude(empty))

    def test_columns(self):
        columns = number_amplitude(self.psi).columns()

        assert list(columns)[:3] == ["x", "y", "z"]
        assert "probability" in columns
        np.testing.assert_allclose(columns["density_r1"] + columns["density_r2"], columns["density"], atol=1e-15)

    def test_unknown_path(self):
        with pytest.raises(InvalidArgumentError, match="Unknown path"):
            NumberAmplitudePath.from_string("nufft")


class TestLinearDetection:
    """Test cases for linear_detection."""

    @settings(max_examples=100, deadline=None)
    @given(c_plus=amplitudes, c_minus=amplitudes, chi=st.floats(min_value=-np.pi, max_value=np.pi))
    def test_unitary(self, c_plus, c_minus, chi):
        """Test |c_R1|^2 + |c_R2|^2 = |c_+|^2 + |c_-|^2."""
        c_r1, c_r2 = linear_detection(c_plus, c_minus, chi)

        assert abs(c_r1) ** 2 + abs(c_r2) ** 2 == pytest.approx(
            abs(c_plus) ** 2 + abs(c_minus) ** 2, rel=1e-12, abs=1e-12
        )

    def test_linear_state(self):
        """Test that c_pm = exp(-+i chi') / sqrt(2) splits as cos^2 / sin^2 chi'."""
        c_r1, c_r2 = linear_detection(np.exp(-0.3j) / np.sqrt(2.0), np.exp(0.3j) / np.sqrt(2.0))

        assert abs(c_r1) ** 2 == pytest.approx(np.cos(0.3) ** 2)
        assert abs(c_r2) ** 2 == pytest.approx(np.sin(0.3) ** 2)

    def test_polarizer_aligned_with_state(self):
        c_r1, c_r2 = linear_detection(np.exp(-0.3j) / np.sqrt(2.0), np.exp(0.3j) / np.sqrt(2.0), chi=0.3)

        assert abs(c_r1) == pytest.approx(1.0)
        assert abs(c_r2) == pytest.approx(0.0, abs=1e-15)


class TestTailFit:
    """Test cases for the radial tail model."""

    def setup_method(self):
        self.radii = tail_radii(5.0, 50.0, 16)

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 0.5])
    def test_quadrature_matches_closed_form(self, alpha):
        quadrature = radial_tail_integral(self.radii, 0.05, alpha)
        oracle = radial_tail_oracle(self.radii, 0.05, alpha)

        np.testing.assert_allclose(quadrature, oracle, rtol=1e-10)

    @pytest.mark.parametrize("alpha, slope", [(0.5, -3.5), (-0.5, -2.5)])
    def test_power_law(self, alpha, slope):
        report = tail_exponent(self.radii, alpha=alpha, expected_slope=expected_tail_slope(alpha))

        assert not report.vanishing
        assert report.slope == pytest.approx(slope, abs=1e-3)
        assert report.within_tolerance
        assert report.oracle_max_error < 1e-10

    def test_landau_peierls_tail_vanishes(self):
        report = tail_exponent(self.radii, alpha=0.0)

        assert report.vanishing
        assert report.slope is None
        assert expected_tail_slope(0.0) is None

    def test_wrong_expectation_fails(self):
        report = tail_exponent(self.radii, alpha=-0.5, expected_slope=-3.5, slope_tolerance=0.1)

        assert not report.within_tolerance

    def test_regulated_field_converges(self):
        """Test that halving the regulator moves F toward the limit."""
        coarse = tail_field(self.radii, 0.1, 0.5)
        fine = tail_field(self.radii, 0.05, 0.5)
        limit = tail_exponent(self.radii, alpha=0.5).extrapolated

        assert np.all(np.abs(np.abs(fine) - limit) < np.abs(np.abs(coarse) - limit) + 1e-30)

    def test_extrapolate_polynomial(self):
        """Test that a cubic in epsilon is extrapolated exactly."""
        eps = [0.4, 0.2, 0.1, 0.05]
        values = [np.array([1.0 + 2.0 * e - e ** 3]) for e in eps]

        np.testing.assert_allclose(extrapolate_to_zero(eps, values), [1.0], atol=1e-12)

    @pytest.mark.parametrize(
        "radii, epsilons, match",
        [
            (np.geomspace(5.0, 20.0, 8), (0.1, 0.05), "decade"),
            (np.geomspace(2.0, 50.0, 8), (0.1, 0.05), "core"),
            (np.geomspace(5.0, 50.0, 8), (0.05, 0.1), "strictly decreasing"),
            (np.geomspace(5.0, 50.0, 8)[::-1], (0.1, 0.05), "increasing"),
        ],
    )
    def test_invalid_inputs(self, radii, epsilons, match):
        with pytest.raises(InvalidArgumentError, match=match):
            tail_exponent(radii, epsilons)

    def test_tail_radii_validation(self):
        with pytest.raises(InvalidArgumentError):
            tail_radii(10.0, 5.0, 8)


class TestGlauberCompare:
    """Test cases for glauber_compare."""

    def test_narrowband_beats_broadband(self):
        """Test that a narrowband packet has nearly equal number and field densities."""
        narrow_grid = build_cartesian_grid(32, 0.16, centering="cell", k_center=(2.0, 0.0, 0.0))
        narrow = GaussianAmplitude(k0=(2.0, 0.0, 0.0), s=0.02).build(narrow_grid)
        broad_grid = build_cartesian_grid(32, 8.0, centering="cell")
        broad = GaussianAmplitude(k0=(2.0, 0.0, 0.0), s=1.0).build(broad_grid)

        narrow_distance = glauber_compare(narrow)
        broad_distance = glauber_compare(broad)

        assert narrow_distance < 1e-3
        assert broad_distance >= 10.0 * narrow_distance

    def test_real_symmetric_state_has_parity_symmetric_densities(self):
        """Test n(-r) = n(r) and |E(-r)|^2 = |E(r)|^2 for real, even c_sigma at t = 0."""
        grid = build_cartesian_grid(16, 6.0, centering="cell")
        envelope = GaussianAmplitude(s=1.5)
        psi = make_wavefunction(grid, envelope, envelope)
        n = grid.n

        number = number_amplitude(psi).density().reshape(n, n, n)
        field = synthesize_real_space(convert_alpha(psi, 0.5), 0.0)
        electric = np.sum(np.abs(field.components) ** 2, axis=1).reshape(n, n, n)

        # r = 0 sits at index n / 2, so indices 1..n-1 pair up under r -> -r
        for density in (number, electric):
            inner = density[1:, 1:, 1:]
            np.testing.assert_allclose(inner[::-1, ::-1, ::-1], inner, rtol=0, atol=1e-12 * density.max())

    def test_needs_cartesian_grid(self):
        psi = GaussianAmplitude().build(build_spherical_grid(4, 4, 5, k_max=2.0))

        with pytest.raises(WrongGridError):
            glauber_compare(psi)

    def test_zero_state(self):
        with pytest.raises(InvalidStateError, match="zero norm"):
            glauber_compare(make_wavefunction(build_cartesian_grid(8, 1.0), None, None))

"""Unit tests for the k <-> r transforms."""

import numpy as np
import pytest

from src.core.error_handling import InvalidArgumentError
from src.photon.fourier import k_to_r, k_to_r_vector, r_to_k
from src.photon.kgrid import build_cartesian_grid


class TestKToR:
    """Test cases for k_to_r."""

    def setup_method(self):
        self.grid = build_cartesian_grid(32, 8.0, centering="cell")

    def test_gaussian_is_self_dual(self):
        """Test that exp(-k^2/2) synthesizes to exp(-r^2/2)."""
        samples = np.exp(-0.5 * self.grid.k ** 2)

        field = k_to_r(self.grid, samples)
        expected = np.exp(-0.5 * np.sum(self.grid.r_points ** 2, axis=1))

        np.testing.assert_allclose(field, expected, atol=1e-8)

    def test_shifted_gaussian_carries_plane_wave(self):
        """Test that a k_center shift shows up as exp(i k0.r)."""
        k0 = np.array([1.5, 0.0, -0.5])
        grid = build_cartesian_grid(32, 8.0, centering="cell", k_center=tuple(k0))
        samples = np.exp(-0.5 * np.sum((grid.kvec - k0) ** 2, axis=1))

        field = k_to_r(grid, samples)
        r = grid.r_points
        expected = np.exp(1j * r @ k0) * np.exp(-0.5 * np.sum(r ** 2, axis=1))

        np.testing.assert_allclose(field, expected, atol=1e-8)

    def test_cube_input(self):
        """Test that a (n, n, n) cube is accepted."""
        samples = np.exp(-0.5 * self.grid.k ** 2)

        np.testing.assert_allclose(
            k_to_r(self.grid, samples.reshape(self.grid.shape)), k_to_r(self.grid, samples)
        )

    def test_vector_transform(self):
        """Test the componentwise transform."""
        samples = np.exp(-0.5 * self.grid.k ** 2)
        vectors = np.stack([samples, 2.0 * samples, 1j * samples], axis=1)

        result = k_to_r_vector(self.grid, vectors)

        assert result.shape == (self.grid.node_count, 3)
        np.testing.assert_allclose(result[:, 1], 2.0 * result[:, 0])
        np.testing.assert_allclose(result[:, 2], 1j * result[:, 0])

    def test_wrong_shape(self):
        """Test that mismatched sample counts are rejected."""
        with pytest.raises(InvalidArgumentError):
            k_to_r(self.grid, np.ones(17))


class TestRToK:
    """Test cases for r_to_k."""

    @pytest.mark.parametrize("centering", ["node", "cell"])
    def test_inverse_of_synthesis(self, centering):
        """Test r_to_k(k_to_r(g)) == g for arbitrary samples."""
        grid = build_cartesian_grid(8, 2.0, centering=centering, k_center=(0.5, -1.0, 0.25))
        rng = np.random.default_rng(3)
        samples = rng.normal(size=grid.node_count) + 1j * rng.normal(size=grid.node_count)

        np.testing.assert_allclose(r_to_k(grid, k_to_r(grid, samples)), samples, atol=1e-12)

    def test_plancherel(self):
        """Test that the discrete L2 norm is preserved."""
        grid = build_cartesian_grid(16, 3.0, centering="node")
        rng = np.random.default_rng(11)
        samples = rng.normal(size=grid.node_count) + 1j * rng.normal(size=grid.node_count)

        field = k_to_r(grid, samples)

        assert np.sum(np.abs(field) ** 2) * grid.r_cell_volume == pytest.approx(
            np.sum(np.abs(samples) ** 2) * grid.k_cell_volume, rel=1e-12
        )

"""
Unit tests for core utilities.

Tests power-of-two checks, safe frequency powers, deterministic sums and
relative deviations.
"""

import numpy as np
import pytest

from src.core.utils import (
    deterministic_sum,
    ensure_directory,
    fft_workers,
    is_power_of_two,
    omega_power,
    relative_deviation,
)


class TestIsPowerOfTwo:
    """Test cases for is_power_of_two."""

    def test_powers(self):
        """Test that powers of two are accepted."""
        for n in (1, 2, 8, 64, 1024):
            assert is_power_of_two(n) is True

    def test_non_powers(self):
        """Test that other integers are rejected."""
        for n in (0, -4, 3, 48, 96):
            assert is_power_of_two(n) is False

    def test_non_integers(self):
        """Test that floats are rejected."""
        assert is_power_of_two(8.0) is False


class TestOmegaPower:
    """Test cases for omega_power."""

    def test_zero_frequency_maps_to_zero(self):
        """Test that omega = 0 gives 0 for any non-zero exponent."""
        omega = np.array([0.0, 4.0])

        np.testing.assert_allclose(omega_power(omega, -1.0), [0.0, 0.25])
        np.testing.assert_allclose(omega_power(omega, 0.5), [0.0, 2.0])

    def test_alpha_zero_is_one(self):
        """Test that omega**0 is one everywhere, including omega = 0."""
        np.testing.assert_array_equal(omega_power(np.array([0.0, 3.0]), 0.0), [1.0, 1.0])


class TestDeterministicSum:
    """Test cases for deterministic_sum."""

    def test_complex_input(self):
        """Test that complex input gives a complex sum."""
        total = deterministic_sum(np.array([1 + 1j, 2 - 3j]))

        assert isinstance(total, complex)
        assert total == 3 - 2j

    def test_real_input(self):
        """Test that real input gives a float."""
        total = deterministic_sum(np.arange(4.0).reshape(2, 2))

        assert isinstance(total, float)
        assert total == 6.0

    def test_repeatable(self):
        """Test that repeated sums are bit-identical."""
        values = np.random.default_rng(3).standard_normal(10_001)

        assert deterministic_sum(values) == deterministic_sum(values.copy())


class TestRelativeDeviation:
    """Test cases for relative_deviation."""

    def test_scaled(self):
        """Test deviation relative to a scale."""
        assert relative_deviation(1 + 0j, 1 + 1e-3j, 0.5) == pytest.approx(2e-3)

    def test_zero_scale_returns_absolute(self):
        """Test that a vanishing scale falls back to the absolute difference."""
        assert relative_deviation(1.0, 3.0, 0.0) == 2.0


class TestFileHelpers:
    """Test cases for directory and worker helpers."""

    def test_ensure_directory_creates_parents(self, tmp_path):
        """Test nested directory creation."""
        target = ensure_directory(tmp_path / "a" / "b")

        assert target.is_dir()

    def test_fft_workers_follows_settings(self, mocker):
        """Test that the worker count comes from settings."""
        mocker.patch("src.core.utils.settings.PHOTON_NUMERICS_THREADS", 4)

        assert fft_workers() == 4

"""
k-space gradients of per-node scalar fields.

CartesianGrid: spectral differentiation along each axis (FFT, multiply by
i * 2 pi * fftfreq, Nyquist mode dropped). Exact for samples of
exp(i k.a) with a on the dual r-grid.

KGrid: 4th-order finite differences. Radial and polar derivatives use
5-point stencils on the (non-uniform) axis nodes with weights from
Fornberg's recursion, switching to one-sided windows near the ends; the
azimuthal derivative is the periodic 4th-order central stencil. The
spherical components are recombined as

    grad f = df/dk k_hat + (1/k) df/dtheta theta_hat + (1/(k sin theta)) df/dphi phi_hat
"""

import logging

import numpy as np
import scipy.fft

from src.core.constants import STENCIL_WIDTH
from src.core.error_handling import InvalidArgumentError
from src.core.utils import fft_workers
from src.photon.kgrid import CartesianGrid, Grid, KGrid
from src.photon.polarization import spherical_unit_vectors

logger = logging.getLogger(__name__)


def finite_difference_weights(z: float, x: np.ndarray, m: int = 1) -> np.ndarray:
    """
    Weights of the m-th derivative at z from values at nodes x (Fornberg).

    Args:
        z: Evaluation point
        x: Distinct stencil nodes
        m: Derivative order

    Returns:
        Array of len(x) weights
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    c = np.zeros((n, m + 1))
    c1 = 1.0
    c4 = x[0] - z
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - z
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


def differentiation_matrix(nodes: np.ndarray, width: int = STENCIL_WIDTH) -> np.ndarray:
    """
    Dense first-derivative matrix on non-uniform nodes.

    Interior rows use the centered window; the first and last width // 2
    rows use one-sided windows of the same width.

    Args:
        nodes: Strictly monotone 1-D nodes
        width: Points per stencil

    Returns:
        (n, n) matrix D with (D @ f)_i ~ f'(nodes_i)
    """
    nodes = np.asarray(nodes, dtype=float)
    n = nodes.size
    width = min(width, n)
    half = width // 2
    matrix = np.zeros((n, n))
    for i in range(n):
        start = min(max(i - half, 0), n - width)
        window = slice(start, start + width)
        matrix[i, window] = finite_difference_weights(nodes[i], nodes[window], 1)
    return matrix


def _apply_along(matrix: np.ndarray, cube: np.ndarray, axis: int) -> np.ndarray:
    moved = np.moveaxis(cube, axis, 0)
    result = np.tensordot(matrix, moved, axes=(1, 0))
    return np.moveaxis(result, 0, axis)


def _periodic_derivative(cube: np.ndarray, spacing: float, axis: int) -> np.ndarray:
    if cube.shape[axis] < STENCIL_WIDTH:
        raise InvalidArgumentError(
            f"Periodic 4th-order stencil needs at least {STENCIL_WIDTH} nodes, got {cube.shape[axis]}"
        )
    return (
        -np.roll(cube, -2, axis=axis)
        + 8.0 * np.roll(cube, -1, axis=axis)
        - 8.0 * np.roll(cube, 1, axis=axis)
        + np.roll(cube, 2, axis=axis)
    ) / (12.0 * spacing)


def spherical_gradient(grid: KGrid, values: np.ndarray) -> np.ndarray:
    """
    Gradient of a scalar field sampled on a spherical grid.

    Args:
        grid: Spherical grid
        values: One complex value per node

    Returns:
        Complex array (N, 3) of Cartesian gradient components
    """
    cube = np.asarray(values).reshape(grid.shape)
    d_k = _apply_along(differentiation_matrix(grid.k_nodes), cube, 0)
    d_theta = _apply_along(differentiation_matrix(grid.theta_nodes), cube, 1)
    d_phi = _periodic_derivative(cube, 2.0 * np.pi / grid.n_phi, 2)

    theta_hat, phi_hat, k_hat = spherical_unit_vectors(grid.theta, grid.phi)
    k = grid.k
    radial = d_k.ravel()
    polar = d_theta.ravel() / k
    azimuthal = d_phi.ravel() / (k * np.sin(grid.theta))
    return radial[:, None] * k_hat + polar[:, None] * theta_hat + azimuthal[:, None] * phi_hat


def spectral_gradient(grid: CartesianGrid, values: np.ndarray) -> np.ndarray:
    """
    Spectral gradient of a scalar field sampled on a Cartesian grid.

    Args:
        grid: Cartesian grid
        values: One complex value per node

    Returns:
        Complex array (N, 3)
    """
    cube = np.asarray(values, dtype=complex).reshape(grid.shape)
    multiplier = 2.0 * np.pi * scipy.fft.fftfreq(grid.n, d=grid.delta_k)
    multiplier[grid.n // 2] = 0.0
    components = []
    for axis in range(3):
        shape = [1, 1, 1]
        shape[axis] = grid.n
        spectrum = scipy.fft.fft(cube, axis=axis, workers=fft_workers())
        spectrum *= 1j * multiplier.reshape(shape)
        components.append(scipy.fft.ifft(spectrum, axis=axis, workers=fft_workers()).ravel())
    return np.stack(components, axis=1)


def gradient(grid: Grid, values: np.ndarray) -> np.ndarray:
    """Dispatch to the spectral or finite-difference gradient for ``grid``."""
    if isinstance(grid, CartesianGrid):
        return spectral_gradient(grid, values)
    return spherical_gradient(grid, values)

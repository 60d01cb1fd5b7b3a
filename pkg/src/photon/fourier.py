"""
Discrete Fourier transforms between a CartesianGrid and its dual r-grid.

Conventions (fixed repo-wide):

    f(r) = (2 pi)^(-3/2) * delta_k^3 * sum_k exp(+i k.r) g(k)
    g(k) = (2 pi)^(-3/2) * delta_r^3 * sum_r exp(-i k.r) f(r)

With k_i = k_0 + i dk and r_j = r_0 + j dr (dk dr n = 2 pi) the kernel
factorises into exp(i k_0 r_j) * exp(i (k_i - k_0) r_0) * exp(2 pi i ij / n),
so each direction is a plain FFT wrapped in a pre-phase and a post-phase.
The pair is exactly inverse (discrete Plancherel) for any k_center and
either centering.
"""

import numpy as np
import scipy.fft

from src.core.error_handling import InvalidArgumentError
from src.core.utils import fft_workers
from src.photon.kgrid import CartesianGrid

_NORMALIZATION = (2.0 * np.pi) ** -1.5


def _phases(grid: CartesianGrid) -> tuple[list[np.ndarray], list[np.ndarray], float]:
    r_axis = grid.r_axis()
    r0 = r_axis[0]
    pre, post = [], []
    for axis in range(3):
        k_axis = grid.k_axis(axis)
        k0 = k_axis[0]
        pre.append(np.exp(1j * (k_axis - k0) * r0))
        post.append(np.exp(1j * k0 * r_axis))
    return pre, post, r0


def _outer(factors: list[np.ndarray]) -> np.ndarray:
    return factors[0][:, None, None] * factors[1][None, :, None] * factors[2][None, None, :]


def _as_cube(grid: CartesianGrid, values: np.ndarray) -> np.ndarray:
    values = np.asarray(values)
    if values.shape == grid.shape:
        return values
    if values.shape == (grid.node_count,):
        return values.reshape(grid.shape)
    raise InvalidArgumentError(
        f"Expected {grid.node_count} samples or a {grid.shape} cube, got {values.shape}"
    )


def k_to_r(grid: CartesianGrid, samples: np.ndarray) -> np.ndarray:
    """
    Synthesize a real-space scalar field from k-space samples.

    Args:
        grid: Cartesian grid the samples live on
        samples: One complex value per node (flat or cube)

    Returns:
        Flat array of field values on ``grid.r_points``
    """
    pre, post, _ = _phases(grid)
    cube = _as_cube(grid, samples) * _outer(pre)
    summed = scipy.fft.ifftn(cube, norm="forward", workers=fft_workers())
    field = summed * _outer(post) * (_NORMALIZATION * grid.k_cell_volume)
    return field.ravel()


def r_to_k(grid: CartesianGrid, field: np.ndarray) -> np.ndarray:
    """
    Analyse a real-space field back onto the k-grid (exact inverse of ``k_to_r``).

    Args:
        grid: Cartesian grid defining both lattices
        field: One complex value per r-node (flat or cube)

    Returns:
        Flat array of k-space samples
    """
    pre, post, _ = _phases(grid)
    cube = _as_cube(grid, field) * np.conj(_outer(post))
    summed = scipy.fft.fftn(cube, workers=fft_workers())
    samples = summed * np.conj(_outer(pre)) * (_NORMALIZATION * grid.r_cell_volume)
    return samples.ravel()


def k_to_r_vector(grid: CartesianGrid, vectors: np.ndarray) -> np.ndarray:
    """Componentwise ``k_to_r`` of an (N, m) array; returns (N, m)."""
    vectors = np.asarray(vectors)
    return np.stack([k_to_r(grid, vectors[:, c]) for c in range(vectors.shape[1])], axis=1)

"""
Core utility functions.

Small numeric helpers shared by the photon modules: power-of-two checks,
safe powers of the photon frequency, deterministic reductions, FFT worker
resolution and output-directory handling.

Example:
    from src.core.utils import omega_power, deterministic_sum

    weighted = omega_power(grid.omega, -0.5) * samples
    total = deterministic_sum(grid.weights * weighted)
"""

from pathlib import Path
from typing import Optional

import numpy as np

from src.core.config import settings


def is_power_of_two(n: int) -> bool:
    """
    Check whether an integer is a positive power of two.

    Args:
        n: Integer to test

    Returns:
        True for 1, 2, 4, 8, ...

    Example:
        >>> is_power_of_two(64)
        True
        >>> is_power_of_two(48)
        False
    """
    return isinstance(n, (int, np.integer)) and n > 0 and (n & (n - 1)) == 0


def omega_power(omega: np.ndarray, alpha: float) -> np.ndarray:
    """
    Evaluate omega**alpha nodewise with omega = 0 mapped to 0 for alpha != 0.

    Only node-centered Cartesian grids contain omega = 0; a photon carries
    no amplitude there, so every negative or positive power is set to zero
    instead of producing inf or nan.

    Args:
        omega: Photon frequencies |k| per node
        alpha: Exponent

    Returns:
        Array of the same shape as omega
    """
    omega = np.asarray(omega, dtype=float)
    if alpha == 0:
        return np.ones_like(omega)
    out = np.zeros_like(omega)
    positive = omega > 0
    out[positive] = omega[positive] ** alpha
    return out


def deterministic_sum(values: np.ndarray) -> complex:
    """
    Sum a flat array in a fixed pairwise order.

    numpy reduces contiguous 1-D arrays with pairwise summation, so the
    result depends only on the node order, never on thread count.

    Args:
        values: Real or complex samples

    Returns:
        Scalar sum (complex for complex input, float otherwise)
    """
    flat = np.ascontiguousarray(values).ravel()
    total = np.sum(flat)
    return complex(total) if np.iscomplexobj(flat) else float(total)


def fft_workers() -> Optional[int]:
    """
    Resolve the scipy.fft worker count from PHOTON_NUMERICS_THREADS.

    Returns:
        Configured worker count, or None for scipy's single-threaded default
    """
    return settings.PHOTON_NUMERICS_THREADS


def relative_deviation(a: complex, b: complex, scale: float) -> float:
    """
    Relative distance between two complex numbers against a reference scale.

    Args:
        a: First value
        b: Second value
        scale: Positive reference magnitude

    Returns:
        |a - b| / scale (or |a - b| when scale vanishes)
    """
    diff = abs(complex(a) - complex(b))
    return diff / scale if scale > 0 else diff


def ensure_directory(path: str | Path) -> Path:
    """
    Create a directory (and parents) if missing.

    Args:
        path: Directory path

    Returns:
        The directory as a Path
    """
    directory = Path(path)
    directory.mkdir(parents=True, exist_ok=True)
    return directory

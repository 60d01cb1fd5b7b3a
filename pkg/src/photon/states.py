"""
Bundled analytic test states.

Each amplitude class describes c_+(k) and c_-(k) in closed form and builds a
WaveFunctionK that keeps those closures, so the state can be re-evaluated
off-grid (boosts, refinement). ``random_state`` is the one sampled-only
state and carries no closure.

Example:
    from src.photon.states import GaussianAmplitude

    packet = GaussianAmplitude(k0=(0.0, 0.0, 3.0), s=1.5)
    wf = packet.build(grid, alpha=0.5)
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from src.core.error_handling import InvalidArgumentError
from src.photon.kgrid import Grid
from src.photon.wavefunction import AmplitudeFunction, WaveFunctionK, make_wavefunction

logger = logging.getLogger(__name__)


def _vector(value: Any, name: str) -> np.ndarray:
    array = np.asarray(value, dtype=float)
    if array.shape != (3,) or not np.all(np.isfinite(array)):
        raise InvalidArgumentError(f"{name} must be a finite 3-vector, got {value!r}")
    return array


def _check_helicity(sigma: int) -> int:
    if sigma not in (1, -1):
        raise InvalidArgumentError(f"helicity must be +1 or -1, got {sigma}")
    return int(sigma)


class AnalyticAmplitude(ABC):
    """Closed-form helicity amplitudes."""

    @abstractmethod
    def components(self) -> tuple[Optional[AmplitudeFunction], Optional[AmplitudeFunction]]:
        """Return the (c_+, c_-) closures; None means identically zero."""

    @abstractmethod
    def describe(self) -> dict[str, Any]:
        """Parameters for reports."""

    def build(self, grid: Grid, alpha: float = 0.0, t: float = 0.0, label: str = "state") -> WaveFunctionK:
        """
        Sample the amplitudes on ``grid``.

        Args:
            grid: Target grid
            alpha: Form exponent
            t: Time the closed form refers to
            label: State name

        Returns:
            WaveFunctionK carrying the analytic closures
        """
        c_plus, c_minus = self.components()
        return make_wavefunction(grid, c_plus, c_minus, alpha=alpha, t=t, label=label)


@dataclass(frozen=True)
class GaussianAmplitude(AnalyticAmplitude):
    """Single-helicity packet exp(-|k - k0|^2 / s^2) exp(i k.a).

    Attributes:
        k0: Packet center in k
        s: Width
        helicity: +1 or -1
        shift: Modulation vector a; the packet is then centered at r = -a
    """

    k0: tuple[float, float, float] = (0.0, 0.0, 0.0)
    s: float = 1.0
    helicity: int = 1
    shift: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "k0", tuple(_vector(self.k0, "k0")))
        object.__setattr__(self, "shift", tuple(_vector(self.shift, "shift")))
        object.__setattr__(self, "helicity", _check_helicity(self.helicity))
        if not self.s > 0:
            raise InvalidArgumentError(f"Gaussian width must be positive, got {self.s}")

    def __call__(self, kvec: np.ndarray) -> np.ndarray:
        kvec = np.asarray(kvec, dtype=float)
        q = kvec - np.asarray(self.k0)
        envelope = np.exp(-np.sum(q * q, axis=1) / self.s ** 2)
        return envelope * np.exp(1j * kvec @ np.asarray(self.shift))

    def components(self) -> tuple[Optional[AmplitudeFunction], Optional[AmplitudeFunction]]:
        return (self, None) if self.helicity == 1 else (None, self)

    def norm_squared(self) -> float:
        """Closed-form integral of |c|^2 over all k, (pi s^2 / 2)^(3/2)."""
        return float((np.pi * self.s ** 2 / 2.0) ** 1.5)

    def real_space_profile(self, r_points: np.ndarray) -> np.ndarray:
        """
        Closed-form (2 pi)^(-3/2) integral of exp(i k.r) c(k) d^3k at t = 0.

        Args:
            r_points: Positions (M, 3)

        Returns:
            Complex array (M,)
        """
        x = np.asarray(r_points, dtype=float) + np.asarray(self.shift)
        carrier = np.exp(1j * x @ np.asarray(self.k0))
        return carrier * (self.s ** 2 / 2.0) ** 1.5 * np.exp(-self.s ** 2 * np.sum(x * x, axis=1) / 4.0)

    def describe(self) -> dict[str, Any]:
        return {
            "kind": "gaussian",
            "k0": list(self.k0),
            "s": self.s,
            "helicity": self.helicity,
            "shift": list(self.shift),
        }


@dataclass(frozen=True)
class TwoHelicityAmplitude(AnalyticAmplitude):
    """c_sigma = exp(-i sigma chi') G(k) / sqrt(2) with a shared Gaussian G.

    Linearly polarized at angle chi' in the transverse plane.
    """

    k0: tuple[float, float, float] = (0.0, 0.0, 0.0)
    s: float = 1.0
    chi_prime: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "k0", tuple(_vector(self.k0, "k0")))
        if not self.s > 0:
            raise InvalidArgumentError(f"Gaussian width must be positive, got {self.s}")

    def _envelope(self, kvec: np.ndarray) -> np.ndarray:
        q = np.asarray(kvec, dtype=float) - np.asarray(self.k0)
        return np.exp(-np.sum(q * q, axis=1) / self.s ** 2)

    def components(self) -> tuple[Optional[AmplitudeFunction], Optional[AmplitudeFunction]]:
        def c_plus(kvec: np.ndarray) -> np.ndarray:
            return np.exp(-1j * self.chi_prime) * self._envelope(kvec) / np.sqrt(2.0)

        def c_minus(kvec: np.ndarray) -> np.ndarray:
            return np.exp(1j * self.chi_prime) * self._envelope(kvec) / np.sqrt(2.0)

        return c_plus, c_minus

    def describe(self) -> dict[str, Any]:
        return {"kind": "two_helicity", "k0": list(self.k0), "s": self.s, "chi_prime": self.chi_prime}


@dataclass(frozen=True)
class OscillatorAmplitude(AnalyticAmplitude):
    """Isotropic oscillator radial profiles.

    order 0: exp(-k^2/2); order 1: (3/2 - k^2) exp(-k^2/2). The two are
    orthogonal under d^3k.
    """

    order: int = 0
    helicity: int = 1

    def __post_init__(self) -> None:
        if self.order not in (0, 1):
            raise InvalidArgumentError(f"Oscillator order must be 0 or 1, got {self.order}")
        object.__setattr__(self, "helicity", _check_helicity(self.helicity))

    def __call__(self, kvec: np.ndarray) -> np.ndarray:
        k2 = np.sum(np.asarray(kvec, dtype=float) ** 2, axis=1)
        profile = np.exp(-k2 / 2.0)
        if self.order == 1:
            profile = (1.5 - k2) * profile
        return profile.astype(complex)

    def components(self) -> tuple[Optional[AmplitudeFunction], Optional[AmplitudeFunction]]:
        return (self, None) if self.helicity == 1 else (None, self)

    def describe(self) -> dict[str, Any]:
        return {"kind": "oscillator", "order": self.order, "helicity": self.helicity}


def random_state(
    grid: Grid,
    seed: int,
    alpha: float = 0.0,
    width: float = 2.0,
    label: str = "random",
) -> WaveFunctionK:
    """
    Seeded random amplitudes under a Gaussian envelope (sampled only).

    Args:
        grid: Target grid
        seed: Generator seed
        alpha: Form exponent
        width: Envelope width exp(-k^2 / width^2)
        label: State name

    Returns:
        WaveFunctionK without an analytic closure
    """
    rng = np.random.default_rng(seed)
    envelope = np.exp(-grid.k ** 2 / width ** 2)
    shape = (2, grid.node_count)
    coefficients = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    logger.debug(f"Drew random state '{label}' with seed {seed}")
    return make_wavefunction(
        grid,
        coefficients[0] * envelope,
        coefficients[1] * envelope,
        alpha=alpha,
        label=label,
    )

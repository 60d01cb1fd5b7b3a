"""
Spin-1 rotation algebra and polarization unit vectors.

Spherical conventions used by every module:

    theta_hat = (cos t cos p, cos t sin p, -sin t)
    phi_hat   = (-sin p, cos p, 0)
    k_hat     = (sin t cos p, sin t sin p, cos t)

Helicity vectors in the chi gauge are
``e_sigma = (theta_hat + i sigma phi_hat) exp(-i sigma chi) / sqrt(2)`` and the
rotation ``D = exp(-i S_k chi) exp(-i S_z phi) exp(-i S_y theta)`` carries
(x, y, z) onto (e_R1, e_R2, k_hat).

Example:
    from src.photon.polarization import polarization_vectors

    triad = polarization_vectors((0.3, 1.1), chi=0.7)
    triad.e_plus @ triad.e_plus.conj()   # 1
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy.linalg import expm

from src.core.error_handling import (
    InvalidArgumentError,
    PoleSingularityError,
    UnsupportedChiError,
)

_LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _l in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _LEVI_CIVITA[_i, _j, _l] = 1.0
    _LEVI_CIVITA[_i, _l, _j] = -1.0

HELICITIES = (1, -1)


def spin1_generators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Spin-1 generators in the vector representation, (S_i)_{jl} = -i eps_{ijl}.

    Returns:
        Tuple (S_x, S_y, S_z) of 3x3 complex matrices
    """
    generators = -1j * _LEVI_CIVITA
    return generators[0].copy(), generators[1].copy(), generators[2].copy()


def spherical_unit_vectors(
    theta: np.ndarray, phi: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Unit vectors (theta_hat, phi_hat, k_hat), each of shape (..., 3).

    Args:
        theta: Polar angles
        phi: Azimuths

    Returns:
        Tuple of real arrays
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    ct, st = np.cos(theta), np.sin(theta)
    cp, sp = np.cos(phi), np.sin(phi)
    theta_hat = np.stack([ct * cp, ct * sp, -st], axis=-1)
    phi_hat = np.stack([-sp, cp, np.zeros_like(ct)], axis=-1)
    k_hat = np.stack([st * cp, st * sp, ct], axis=-1)
    return theta_hat, phi_hat, k_hat


def helicity_vectors(
    theta: np.ndarray, phi: np.ndarray, sigma: int, chi: np.ndarray | float = 0.0
) -> np.ndarray:
    """
    Vectorized helicity unit vectors e_sigma^(chi) at many directions.

    No pole check is made; on the k_z axis the arctan2 branch of phi is used.

    Args:
        theta: Polar angles (N,)
        phi: Azimuths (N,)
        sigma: Helicity +1 or -1
        chi: Gauge angle, scalar or per node

    Returns:
        Complex array (N, 3)
    """
    theta_hat, phi_hat, _ = spherical_unit_vectors(theta, phi)
    phase = np.exp(-1j * sigma * np.asarray(chi, dtype=float))
    return (theta_hat + 1j * sigma * phi_hat) * (phase[..., None] if np.ndim(phase) else phase) / np.sqrt(2.0)


@dataclass(frozen=True)
class RotationMatrix:
    """Rotation D in the spin-1 vector representation with its Euler angles."""

    matrix: np.ndarray
    theta: float
    phi: float
    chi: float


def rotation_D(theta: float, phi: float, chi: float) -> RotationMatrix:
    """
    Compose D = exp(-i S_k chi) exp(-i S_z phi) exp(-i S_y theta).

    At chi = 0 the columns of D are (theta_hat, phi_hat, k_hat); a non-zero
    chi rotates the first two about k_hat. Pole angles are accepted here.

    Args:
        theta: Polar angle of k
        phi: Azimuth of k
        chi: Gauge angle

    Returns:
        RotationMatrix
    """
    s_x, s_y, s_z = spin1_generators()
    k_hat = spherical_unit_vectors(theta, phi)[2]
    s_k = k_hat[0] * s_x + k_hat[1] * s_y + k_hat[2] * s_z
    matrix = expm(-1j * s_k * chi) @ expm(-1j * s_z * phi) @ expm(-1j * s_y * theta)
    return RotationMatrix(matrix=matrix, theta=float(theta), phi=float(phi), chi=float(chi))


@dataclass(frozen=True)
class PolarizationTriad:
    """Helicity pair and longitudinal vector at one direction and gauge angle."""

    e_plus: np.ndarray
    e_minus: np.ndarray
    e_long: np.ndarray
    chi: float
    k_direction: tuple[float, float]

    def e(self, sigma: int) -> np.ndarray:
        return self.e_plus if sigma == 1 else self.e_minus


def _check_pole(theta: float) -> None:
    if not (0.0 < theta < np.pi):
        raise PoleSingularityError(
            f"theta = {theta} lies on a pole where theta_hat and phi_hat are undefined; "
            "use a grid that excludes the poles, or the 'minus_phi' chi convention "
            "whose vectors (x_hat + i sigma y_hat)/sqrt(2) stay regular on the +z axis"
        )


def polarization_vectors(k_direction: tuple[float, float], chi: float = 0.0) -> PolarizationTriad:
    """
    Helicity triad (e_+, e_-, k_hat) at direction (theta, phi) and gauge chi.

    Args:
        k_direction: (theta, phi) with theta strictly inside (0, pi)
        chi: Gauge angle

    Returns:
        PolarizationTriad

    Raises:
        PoleSingularityError: If theta is 0 or pi (or outside the open interval)

    Example:
        >>> t = polarization_vectors((np.pi / 2, 0.0))
        >>> t.e_plus   # ((0,0,-1) + i (0,1,0)) / sqrt(2)
    """
    theta, phi = float(k_direction[0]), float(k_direction[1])
    _check_pole(theta)
    _, _, k_hat = spherical_unit_vectors(theta, phi)
    return PolarizationTriad(
        e_plus=helicity_vectors(theta, phi, 1, chi),
        e_minus=helicity_vectors(theta, phi, -1, chi),
        e_long=k_hat,
        chi=float(chi),
        k_direction=(theta, phi),
    )


def linear_polarization_vectors(
    k_direction: tuple[float, float], chi: float = 0.0
) -> tuple[np.ndarray, np.ndarray]:
    """
    Real linear polarization vectors e_R1 = (e_+ + e_-)/sqrt(2), e_R2 = -i (e_+ - e_-)/sqrt(2).

    Closed form: e_R1 = theta_hat cos chi + phi_hat sin chi,
    e_R2 = -theta_hat sin chi + phi_hat cos chi.

    Args:
        k_direction: (theta, phi) with theta strictly inside (0, pi)
        chi: Gauge angle

    Returns:
        Tuple (e_R1, e_R2) of real 3-vectors

    Raises:
        PoleSingularityError: If theta is on a pole
    """
    triad = polarization_vectors(k_direction, chi)
    e_r1 = (triad.e_plus + triad.e_minus) / np.sqrt(2.0)
    e_r2 = -1j * (triad.e_plus - triad.e_minus) / np.sqrt(2.0)
    return e_r1.real, e_r2.real


class ChiConvention(Enum):
    """Per-node gauge angle conventions."""

    ZERO = "zero"
    MINUS_PHI = "minus_phi"
    CUSTOM = "custom"

    @classmethod
    def from_string(cls, value: str) -> "ChiConvention":
        value = value.lower().strip().replace("-", "_")
        aliases = {"0": cls.ZERO, "none": cls.ZERO, "paraxial": cls.MINUS_PHI, "table": cls.CUSTOM}
        if value in aliases:
            return aliases[value]
        for convention in cls:
            if convention.value == value:
                return convention
        raise InvalidArgumentError(
            f"Unknown chi convention: {value}. Valid options: {[c.value for c in cls]}"
        )


@dataclass(frozen=True, eq=False)
class ChiSpec:
    """Gauge angle chi(k) as a convention or a per-node table.

    A custom table is tied to the grid it was tabulated on and has no
    derivative, so operations that differentiate chi reject it.
    """

    convention: ChiConvention = ChiConvention.ZERO
    table: Optional[np.ndarray] = None

    @classmethod
    def zero(cls) -> "ChiSpec":
        return cls(ChiConvention.ZERO)

    @classmethod
    def minus_phi(cls) -> "ChiSpec":
        return cls(ChiConvention.MINUS_PHI)

    @classmethod
    def custom(cls, table: np.ndarray) -> "ChiSpec":
        return cls(ChiConvention.CUSTOM, np.asarray(table, dtype=float))

    @classmethod
    def from_string(cls, value: str) -> "ChiSpec":
        convention = ChiConvention.from_string(value)
        if convention is ChiConvention.CUSTOM:
            raise InvalidArgumentError("A custom chi convention needs a table, not a name")
        return cls(convention)

    def values_at(self, kvec: np.ndarray) -> np.ndarray:
        """chi at arbitrary momenta (custom tables only at their own nodes)."""
        kvec = np.asarray(kvec, dtype=float)
        if self.convention is ChiConvention.ZERO:
            return np.zeros(kvec.shape[0])
        if self.convention is ChiConvention.MINUS_PHI:
            return -np.arctan2(kvec[:, 1], kvec[:, 0])
        if self.table is None or self.table.shape != (kvec.shape[0],):
            raise InvalidArgumentError(
                f"Custom chi table has shape {None if self.table is None else self.table.shape}, "
                f"expected ({kvec.shape[0]},)"
            )
        return self.table

    def gradient_at(self, kvec: np.ndarray) -> np.ndarray:
        """
        grad_k chi at the given momenta, shape (N, 3).

        minus_phi gives -phi_hat / rho; nodes on the k_z axis get 0.

        Raises:
            UnsupportedChiError: For custom tables
        """
        kvec = np.asarray(kvec, dtype=float)
        if self.convention is ChiConvention.ZERO:
            return np.zeros_like(kvec)
        if self.convention is ChiConvention.MINUS_PHI:
            rho2 = kvec[:, 0] ** 2 + kvec[:, 1] ** 2
            grad = np.zeros_like(kvec)
            off_axis = rho2 > 0
            grad[off_axis, 0] = kvec[off_axis, 1] / rho2[off_axis]
            grad[off_axis, 1] = -kvec[off_axis, 0] / rho2[off_axis]
            return grad
        raise UnsupportedChiError(
            "A tabulated chi has no derivative; use the 'zero' or 'minus_phi' convention "
            "for operations that differentiate chi"
        )

    def describe(self) -> str:
        return self.convention.value

"""
Localized states, the number amplitude and the real-space analyses.

- ``LocalizedState``: equal-weight pure-phase momentum amplitude of a photon
  detected at (r0, t0) with polarization e_sigma^(chi),
  d_sigma'(k) = delta_sigma'sigma exp(-i sigma chi - i k.r0 + i omega t0) / (2 pi)^(3/2).
- ``number_amplitude``: c_sigma(r, t) = <d(r, t)|psi>, the inverse Fourier
  transform of c_sigma(k) exp(i sigma chi - i omega t), by FFT or by direct
  quadrature.
- ``linear_detection``: TM/TE amplitudes from the helicity amplitudes.
- ``tail_exponent``: radial falloff of the regulated localized-field model.
- ``glauber_compare``: number density against the electric-field density.

Exact localization holds only at t = t0; at other times the amplitude
spreads and only the total probability is conserved.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Sequence

import numpy as np
from scipy import stats
from scipy.special import gamma, roots_genlaguerre

from src.core.config import settings
from src.core.constants import (
    CORE_RADIUS_MULTIPLE,
    DEFAULT_EPSILON_FACTORS,
    TAIL_LAGUERRE_ORDER,
    TAIL_SLOPE_HALF_BAND,
    VANISHING_TAIL_RATIO,
)
from src.core.error_handling import InvalidArgumentError, InvalidStateError, WrongGridError
from src.core.utils import deterministic_sum
from src.models.report_models import TailFitReport
from src.photon.fourier import k_to_r
from src.photon.kgrid import CartesianGrid, Grid
from src.photon.polarization import HELICITIES, ChiSpec
from src.photon.states import AnalyticAmplitude
from src.photon.wavefunction import (
    AmplitudeFunction,
    WaveFunctionK,
    convert_alpha,
    qed_norm,
    synthesize_real_space,
)

logger = logging.getLogger(__name__)

_NORMALIZATION = (2.0 * np.pi) ** -1.5


@dataclass(frozen=True, eq=False)
class LocalizedState(AnalyticAmplitude):
    """Detection state of a photon at (r0, t0) with helicity sigma.

    Attributes:
        r0: Position
        t0: Time
        sigma: Helicity +1 or -1
        chi: Gauge convention of the polarization vector
    """

    r0: tuple[float, float, float] = (0.0, 0.0, 0.0)
    t0: float = 0.0
    sigma: int = 1
    chi: ChiSpec = field(default_factory=ChiSpec.zero)

    def __post_init__(self) -> None:
        r0 = np.asarray(self.r0, dtype=float)
        if r0.shape != (3,) or not np.all(np.isfinite(r0)):
            raise InvalidArgumentError(f"r0 must be a finite 3-vector, got {self.r0!r}")
        if self.sigma not in HELICITIES:
            raise InvalidArgumentError(f"helicity must be +1 or -1, got {self.sigma}")
        object.__setattr__(self, "r0", tuple(r0))

    def __call__(self, kvec: np.ndarray) -> np.ndarray:
        kvec = np.asarray(kvec, dtype=float)
        omega = np.linalg.norm(kvec, axis=1)
        chi = self.chi.values_at(kvec)
        phase = -self.sigma * chi - kvec @ np.asarray(self.r0) + omega * self.t0
        return _NORMALIZATION * np.exp(1j * phase)

    def components(self) -> tuple[Optional[AmplitudeFunction], Optional[AmplitudeFunction]]:
        return (self, None) if self.sigma == 1 else (None, self)

    def describe(self) -> dict[str, Any]:
        return {
            "kind": "localized",
            "r0": list(self.r0),
            "t0": self.t0,
            "helicity": self.sigma,
            "chi": self.chi.describe(),
        }


def localized_state(
    grid: Grid,
    r0: Sequence[float],
    t0: float = 0.0,
    sigma: int = 1,
    chi: Optional[ChiSpec] = None,
    alpha: float = 0.0,
) -> WaveFunctionK:
    """
    Sample the localized detection state on a grid.

    Returns:
        WaveFunctionK with |d_sigma| = (2 pi)^(-3/2) at every node
    """
    state = LocalizedState(tuple(r0), float(t0), sigma, chi or ChiSpec.zero())
    return state.build(grid, alpha=alpha, label=f"localized {list(state.r0)}")


class NumberAmplitudePath(Enum):
    """Evaluation paths for the number amplitude."""

    FFT = "fft"
    QUADRATURE = "quadrature"

    @classmethod
    def from_string(cls, value: str) -> "NumberAmplitudePath":
        value = value.lower().strip()
        aliases = {"direct": cls.QUADRATURE, "sum": cls.QUADRATURE, "quad": cls.QUADRATURE}
        if value in aliases:
            return aliases[value]
        for path in cls:
            if path.value == value:
                return path
        raise InvalidArgumentError(f"Unknown path: {value}. Valid options: {[p.value for p in cls]}")


@dataclass(frozen=True, eq=False)
class NumberAmplitudeR:
    """Number amplitudes c_sigma(r, t) at a set of points.

    Attributes:
        r_points: Positions (M, 3)
        c_plus: Helicity +1 amplitude per point
        c_minus: Helicity -1 amplitude per point
        t: Evaluation time
        chi: Gauge convention used
        cell_volume: delta_r^3 when the points are a full r-grid (fft path)
    """

    r_points: np.ndarray
    c_plus: np.ndarray
    c_minus: np.ndarray
    t: float
    chi: ChiSpec
    cell_volume: Optional[float] = None

    def c(self, sigma: int) -> np.ndarray:
        return self.c_plus if sigma == 1 else self.c_minus

    def density(self) -> np.ndarray:
        """Number density |c_+|^2 + |c_-|^2 per point."""
        return np.abs(self.c_plus) ** 2 + np.abs(self.c_minus) ** 2

    def total_probability(self) -> float:
        """
        sum_r density delta_r^3.

        Raises:
            WrongGridError: If the points are not a full r-grid
        """
        if self.cell_volume is None:
            raise WrongGridError("Total probability needs the full r-grid of the fft path")
        return float(deterministic_sum(self.density()) * self.cell_volume)

    def linear_components(self, chi: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
        """TM/TE amplitudes (c_R1, c_R2) per point."""
        return linear_detection(self.c_plus, self.c_minus, chi)

    def columns(self) -> dict[str, np.ndarray]:
        """Columns of the number-density CSV."""
        c_r1, c_r2 = self.linear_components()
        density = self.density()
        columns = {
            "x": self.r_points[:, 0],
            "y": self.r_points[:, 1],
            "z": self.r_points[:, 2],
            "abs_c_plus": np.abs(self.c_plus),
            "abs_c_minus": np.abs(self.c_minus),
            "density": density,
            "density_r1": np.abs(c_r1) ** 2,
            "density_r2": np.abs(c_r2) ** 2,
        }
        if self.cell_volume is not None:
            columns["probability"] = density * self.cell_volume
        return columns


def _phased_amplitudes(psi: WaveFunctionK, t: float, chi: ChiSpec) -> dict[int, np.ndarray]:
    grid = psi.grid
    chi_values = chi.values_at(grid.kvec)
    evolution = np.exp(-1j * grid.omega * (t - psi.t))
    return {
        sigma: psi.c(sigma) * np.exp(1j * sigma * chi_values) * evolution for sigma in HELICITIES
    }


def _quadrature_transform(grid: Grid, samples: np.ndarray, r_points: np.ndarray) -> np.ndarray:
    weighted = grid.weights * samples
    rows = max(1, settings.QUADRATURE_CHUNK_SIZE // grid.node_count)
    out = np.empty(r_points.shape[0], dtype=complex)
    for start in range(0, r_points.shape[0], rows):
        block = r_points[start:start + rows]
        out[start:start + rows] = np.exp(1j * block @ grid.kvec.T) @ weighted
    return _NORMALIZATION * out


def number_amplitude(
    psi: WaveFunctionK,
    t: Optional[float] = None,
    chi: Optional[ChiSpec] = None,
    path: NumberAmplitudePath | str = NumberAmplitudePath.FFT,
    r_points: Optional[np.ndarray] = None,
) -> NumberAmplitudeR:
    """
    Number amplitude c_sigma(r, t) of a state.

    Args:
        psi: State
        t: Evaluation time (default: the carried time)
        chi: Gauge convention (default zero)
        path: "fft" (CartesianGrid, full r-grid) or "quadrature" (any grid)
        r_points: Positions for the quadrature path (default: the Cartesian r-grid)

    Returns:
        NumberAmplitudeR

    Raises:
        WrongGridError: For the fft path on a spherical grid
        InvalidArgumentError: For the quadrature path without points on a spherical grid
    """
    if isinstance(path, str):
        path = NumberAmplitudePath.from_string(path)
    chi = chi or ChiSpec.zero()
    t = psi.t if t is None else float(t)
    grid = psi.grid
    phased = _phased_amplitudes(psi, t, chi)

    if path is NumberAmplitudePath.FFT:
        if not isinstance(grid, CartesianGrid):
            raise WrongGridError("The fft path needs a CartesianGrid; use path='quadrature'")
        if r_points is not None:
            raise InvalidArgumentError("The fft path evaluates the full r-grid; drop r_points")
        return NumberAmplitudeR(
            r_points=grid.r_points,
            c_plus=k_to_r(grid, phased[1]),
            c_minus=k_to_r(grid, phased[-1]),
            t=t,
            chi=chi,
            cell_volume=grid.r_cell_volume,
        )

    if r_points is None:
        if not isinstance(grid, CartesianGrid):
            raise InvalidArgumentError("The quadrature path on a spherical grid needs r_points")
        r_points = grid.r_points
    r_points = np.asarray(r_points, dtype=float).reshape(-1, 3)
    logger.debug(f"Quadrature number amplitude: {r_points.shape[0]} points x {grid.node_count} nodes")
    return NumberAmplitudeR(
        r_points=r_points,
        c_plus=_quadrature_transform(grid, phased[1], r_points),
        c_minus=_quadrature_transform(grid, phased[-1], r_points),
        t=t,
        chi=chi,
    )


def linear_detection(
    c_plus: np.ndarray, c_minus: np.ndarray, chi: float | np.ndarray = 0.0
) -> tuple[np.ndarray, np.ndarray]:
    """
    Linear-polarization (TM/TE) amplitudes.

    c_R1 = (c_+ e^{i chi} + c_- e^{-i chi}) / sqrt(2)
    c_R2 = i (c_+ e^{i chi} - c_- e^{-i chi}) / sqrt(2)

    Args:
        c_plus: Helicity +1 amplitudes
        c_minus: Helicity -1 amplitudes
        chi: Polarizer angle

    Returns:
        Tuple (c_R1, c_R2)

    Example:
        >>> c_r1, c_r2 = linear_detection(np.exp(-0.3j) / np.sqrt(2), np.exp(0.3j) / np.sqrt(2), 0.0)
        >>> abs(c_r1) ** 2   # cos(0.3) ** 2
    """
    plus = np.asarray(c_plus, dtype=complex) * np.exp(1j * np.asarray(chi))
    minus = np.asarray(c_minus, dtype=complex) * np.exp(-1j * np.asarray(chi))
    return (plus + minus) / np.sqrt(2.0), 1j * (plus - minus) / np.sqrt(2.0)


def number_density_moments(amplitude: NumberAmplitudeR) -> np.ndarray:
    """
    Mean position sum_r r density / sum_r density of a full-grid amplitude.

    Raises:
        WrongGridError: If the amplitude does not cover a full r-grid
        InvalidStateError: If the density vanishes
    """
    if amplitude.cell_volume is None:
        raise WrongGridError("Moments need the full r-grid of the fft path")
    density = amplitude.density()
    total = deterministic_sum(density)
    if not total > 0:
        raise InvalidStateError("Number density vanishes everywhere")
    return np.array(
        [deterministic_sum(amplitude.r_points[:, j] * density) for j in range(3)]
    ) / total


def radial_tail_integral(radii: np.ndarray, epsilon: float, alpha: float) -> np.ndarray:
    """
    integral_0^inf k^(1+alpha) exp(i k r - epsilon k) dk by Gauss-Laguerre quadrature.

    The contour is rotated to k = i x / r, where exp(i k r) = exp(-x), giving
    i^(nu+1) r^-(nu+1) sum_j w_j exp(-i epsilon x_j / r) with nu = 1 + alpha.
    The sine transform is the imaginary part.

    Args:
        radii: Positive radii
        epsilon: Regulator (> 0)
        alpha: Form exponent

    Returns:
        Complex integrals, one per radius
    """
    nu = 1.0 + alpha
    x, w = roots_genlaguerre(TAIL_LAGUERRE_ORDER, nu)
    radii = np.asarray(radii, dtype=float)
    sums = np.exp(-1j * epsilon * np.outer(1.0 / radii, x)) @ w
    return np.exp(0.5j * np.pi * (nu + 1.0)) * radii ** (-(nu + 1.0)) * sums


def radial_tail_oracle(radii: np.ndarray, epsilon: float, alpha: float) -> np.ndarray:
    """Closed form Gamma(nu + 1) / (epsilon - i r)^(nu + 1) of the same integral."""
    nu = 1.0 + alpha
    return gamma(nu + 1.0) / (epsilon - 1j * np.asarray(radii, dtype=float)) ** (nu + 1.0)


def tail_field(radii: np.ndarray, epsilon: float, alpha: float) -> np.ndarray:
    """Regulated radial model F(r, eps) = 4 pi / ((2 pi)^(3/2) r) Im[integral]."""
    radii = np.asarray(radii, dtype=float)
    return 4.0 * np.pi * _NORMALIZATION / radii * radial_tail_integral(radii, epsilon, alpha).imag


def extrapolate_to_zero(epsilons: Sequence[float], values: Sequence[np.ndarray]) -> np.ndarray:
    """
    Polynomial (Neville) extrapolation of values(eps) to eps = 0.

    For a halving ladder this is the Richardson tableau with unit order.

    Args:
        epsilons: Distinct regulators
        values: One array per regulator

    Returns:
        Extrapolated array
    """
    if len(epsilons) != len(values) or len(epsilons) < 2:
        raise InvalidArgumentError("Extrapolation needs at least two (epsilon, value) pairs")
    eps = [float(e) for e in epsilons]
    vals = [np.asarray(v, dtype=float) for v in values]
    n = len(vals)
    for j in range(1, n):
        for k in range(n - 1, j - 1, -1):
            vals[k] = (eps[k - j] * vals[k] - eps[k] * vals[k - 1]) / (eps[k - j] - eps[k])
    return vals[-1]


def tail_radii(start: float, stop: float, count: int) -> np.ndarray:
    """Logarithmically spaced radii."""
    if not (0 < start < stop) or count < 2:
        raise InvalidArgumentError(f"Need 0 < start < stop and count >= 2, got ({start}, {stop}, {count})")
    return np.geomspace(start, stop, count)


def _check_tail_inputs(radii: np.ndarray, epsilons: np.ndarray, core_radius: float) -> None:
    if radii.ndim != 1 or radii.size < 2 or np.any(radii <= 0) or np.any(np.diff(radii) <= 0):
        raise InvalidArgumentError("Radii must be positive, strictly increasing and at least two")
    if radii[-1] / radii[0] < 10.0:
        raise InvalidArgumentError(
            f"Radii must span at least one decade, got {radii[0]:g}..{radii[-1]:g}"
        )
    if radii[0] < CORE_RADIUS_MULTIPLE * core_radius:
        raise InvalidArgumentError(
            f"Smallest radius {radii[0]:g} lies inside the core "
            f"(needs >= {CORE_RADIUS_MULTIPLE:g} x core radius {core_radius:g})"
        )
    if epsilons.size < 2 or np.any(epsilons <= 0) or np.any(np.diff(epsilons) >= 0):
        raise InvalidArgumentError(
            f"Regulator ladder must be positive and strictly decreasing, got {epsilons.tolist()}"
        )


def tail_exponent(
    radii: Sequence[float],
    epsilons: Sequence[float] = DEFAULT_EPSILON_FACTORS,
    alpha: float = 0.5,
    core_radius: float = 1.0,
    expected_slope: Optional[float] = None,
    slope_tolerance: float = TAIL_SLOPE_HALF_BAND,
) -> TailFitReport:
    """
    Fit the log-log slope of the epsilon -> 0 limit of the radial model.

    Args:
        radii: Radii, increasing, spanning a decade, outside the core
        epsilons: Regulators in units of 1 / core_radius, strictly decreasing
        alpha: Form exponent (1/2: electric field, -1/2: vector potential, 0: LP)
        core_radius: Size of the localization core
        expected_slope: Slope to check against, if any
        slope_tolerance: Allowed |slope - expected|

    Returns:
        TailFitReport; a tail that vanishes in the limit reports slope None

    Raises:
        InvalidArgumentError: For bad radii or a non-monotone ladder
    """
    radii_arr = np.asarray(radii, dtype=float)
    eps = np.asarray(epsilons, dtype=float) / core_radius
    _check_tail_inputs(radii_arr, eps, core_radius)

    regulated = []
    oracle_error = 0.0
    for epsilon in eps:
        quadrature = radial_tail_integral(radii_arr, epsilon, alpha)
        oracle = radial_tail_oracle(radii_arr, epsilon, alpha)
        oracle_error = max(oracle_error, float(np.max(np.abs(quadrature - oracle) / np.abs(oracle))))
        regulated.append(4.0 * np.pi * _NORMALIZATION / radii_arr * quadrature.imag)

    limit = extrapolate_to_zero(eps, regulated)
    magnitude = np.abs(limit)
    reference = float(np.max(np.abs(regulated[0])))
    vanishing = bool(np.max(magnitude) <= VANISHING_TAIL_RATIO * reference)

    slope = half_width = intercept = None
    if not vanishing:
        fit = stats.linregress(np.log(radii_arr), np.log(magnitude))
        slope, intercept = float(fit.slope), float(fit.intercept)
        half_width = float(2.0 * fit.stderr)
    logger.debug(
        f"Tail fit alpha={alpha}: slope={slope}, oracle error={oracle_error:.2e}, vanishing={vanishing}"
    )
    return TailFitReport(
        alpha=alpha,
        radii=radii_arr.tolist(),
        epsilons=eps.tolist(),
        extrapolated=magnitude.tolist(),
        oracle_max_error=oracle_error,
        vanishing=vanishing,
        slope=slope,
        slope_half_width=half_width,
        intercept=intercept,
        expected_slope=expected_slope,
        slope_tolerance=slope_tolerance if expected_slope is not None else None,
    )


def expected_tail_slope(alpha: float) -> Optional[float]:
    """Power law of the limit model: -(3 + alpha), or None where it vanishes."""
    if alpha == 0:
        return None
    return -(3.0 + alpha)


def glauber_compare(psi: WaveFunctionK, t: Optional[float] = None) -> float:
    """
    Relative L2 distance between the number density and |E^(+)|^2.

    Both densities are normalized to unit integral on the r-grid first.

    Args:
        psi: State on a CartesianGrid
        t: Evaluation time (default: carried time)

    Returns:
        ||n - e|| / ||n||

    Raises:
        WrongGridError: For spherical grids
        InvalidStateError: For a zero-norm state
    """
    if not isinstance(psi.grid, CartesianGrid):
        raise WrongGridError("The Glauber comparison needs a CartesianGrid")
    if not qed_norm(psi) > 0:
        raise InvalidStateError(f"State '{psi.label}' has zero norm")
    number = number_amplitude(psi, t).density()
    field = synthesize_real_space(convert_alpha(psi, 0.5), psi.t if t is None else t)
    electric = np.sum(np.abs(field.components) ** 2, axis=1)
    number = number / deterministic_sum(number)
    electric = electric / deterministic_sum(electric)
    distance = math.sqrt(deterministic_sum((number - electric) ** 2)) / math.sqrt(deterministic_sum(number ** 2))
    logger.debug(f"Glauber distance for '{psi.label}': {distance:.3e}")
    return distance

"""
4-vector embedding, Lorentz boosts and the invariance checks.

A boost with rapidity eta along the unit vector n acts on (omega, k) as

    L = [[cosh eta,         -sinh eta n^T             ],
         [-sinh eta n,      I + (cosh eta - 1) n n^T  ]]

so a z-boost maps omega to omega (cosh eta - cos theta sinh eta). The
alpha = 1/2 field is a 4-vector under the invariant measure d^3k / omega and
transforms as Psi'(k') = L Psi(L^-1 k'). Boosted states are evaluated from
the analytic amplitudes at the mapped momenta; the interpolating variant
is opt-in.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from src.core.constants import ILL_CONDITIONED_THRESHOLD, MAX_SUPPORTED_RAPIDITY
from src.core.error_handling import (
    IllConditionedComparisonError,
    InvalidArgumentError,
    InvalidStateError,
    NeedsAnalyticStateError,
)
from src.core.utils import is_power_of_two, omega_power
from src.models.report_models import RefinementStep
from src.photon.kgrid import CartesianGrid, Grid, KGrid, build_spherical_grid, integrate
from src.photon.polarization import helicity_vectors
from src.photon.scalarprod import MINKOWSKI_METRIC, minkowski_integral
from src.photon.wavefunction import WaveFunctionK, convert_alpha, four_vector_samples, resample

logger = logging.getLogger(__name__)

FieldFunction = Callable[[np.ndarray], np.ndarray]
"""Maps momenta (N, 3) to 4-vector field values (N, 4)."""


def _angles(kvec: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    rho = np.hypot(kvec[:, 0], kvec[:, 1])
    return np.arctan2(rho, kvec[:, 2]), np.arctan2(kvec[:, 1], kvec[:, 0])


@dataclass(frozen=True)
class Boost:
    """Pure Lorentz boost.

    Attributes:
        rapidity: eta
        direction: Unit 3-vector n (normalized on construction)
    """

    rapidity: float
    direction: tuple[float, float, float] = (0.0, 0.0, 1.0)

    def __post_init__(self) -> None:
        direction = np.asarray(self.direction, dtype=float)
        length = float(np.linalg.norm(direction)) if direction.shape == (3,) else 0.0
        if not (np.isfinite(self.rapidity) and length > 0 and np.isfinite(length)):
            raise InvalidArgumentError(
                f"Boost needs a finite rapidity and a non-zero direction, got "
                f"eta={self.rapidity}, n={self.direction}"
            )
        object.__setattr__(self, "rapidity", float(self.rapidity))
        object.__setattr__(self, "direction", tuple(float(c) for c in direction / length))
        if abs(self.rapidity) > MAX_SUPPORTED_RAPIDITY:
            logger.warning(
                f"Rapidity {self.rapidity} exceeds {MAX_SUPPORTED_RAPIDITY}; boosted grids grow as "
                f"exp(|eta|) and default resolutions no longer meet the documented tolerances"
            )

    @property
    def matrix(self) -> np.ndarray:
        n = np.asarray(self.direction)
        ch, sh = math.cosh(self.rapidity), math.sinh(self.rapidity)
        lam = np.empty((4, 4))
        lam[0, 0] = ch
        lam[0, 1:] = -sh * n
        lam[1:, 0] = -sh * n
        lam[1:, 1:] = np.eye(3) + (ch - 1.0) * np.outer(n, n)
        return lam

    def inverse(self) -> "Boost":
        return Boost(-self.rapidity, self.direction)

    def map_momenta(self, kvec: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """
        Boost on-shell momenta.

        Args:
            kvec: Momenta (N, 3), omega = |k|

        Returns:
            Tuple (omega', k') of shapes (N,) and (N, 3)
        """
        kvec = np.asarray(kvec, dtype=float)
        four = np.concatenate([np.linalg.norm(kvec, axis=1)[:, None], kvec], axis=1)
        mapped = four @ self.matrix.T
        return mapped[:, 0], mapped[:, 1:]

    def metric_defect(self) -> float:
        """max |L^T g L - g|."""
        g = np.diag(MINKOWSKI_METRIC)
        return float(np.max(np.abs(self.matrix.T @ g @ self.matrix - g)))


@dataclass(frozen=True, eq=False)
class FourVectorWF:
    """alpha = 1/2 field as per-node 4-vectors.

    Attributes:
        grid: Grid of the samples
        components: Complex array (N, 4), index 0 is the time component
        field: Optional closure giving the field at arbitrary momenta
        label: Name for logs
    """

    grid: Grid
    components: np.ndarray
    field: Optional[FieldFunction] = None
    label: str = "state"
    alpha: float = 0.5

    @property
    def time_component(self) -> np.ndarray:
        return self.components[:, 0]

    @property
    def spatial(self) -> np.ndarray:
        return self.components[:, 1:]


def _analytic_field(psi: WaveFunctionK) -> Optional[FieldFunction]:
    if psi.amplitude is None:
        return None

    def field(kvec: np.ndarray) -> np.ndarray:
        kvec = np.asarray(kvec, dtype=float)
        theta, phi = _angles(kvec)
        weight = omega_power(np.linalg.norm(kvec, axis=1), 0.5)
        spatial = np.zeros((kvec.shape[0], 3), dtype=complex)
        for sigma in (1, -1):
            spatial += psi.amplitude_at(kvec, sigma)[:, None] * helicity_vectors(theta, phi, sigma)
        spatial *= weight[:, None]
        return np.concatenate([np.zeros((kvec.shape[0], 1), dtype=complex), spatial], axis=1)

    return field


def embed(psi: WaveFunctionK) -> FourVectorWF:
    """
    Embed a transverse state as (0, Psi^(1/2)).

    The analytic closure is carried along when the state has one.
    """
    return FourVectorWF(
        grid=psi.grid,
        components=four_vector_samples(convert_alpha(psi, 0.5)),
        field=_analytic_field(psi),
        label=psi.label,
    )


def _interpolated_field(psi4: FourVectorWF) -> FieldFunction:
    grid = psi4.grid
    if isinstance(grid, CartesianGrid):
        axes = tuple(grid.k_axis(a) for a in range(3))
        cube = psi4.components.reshape(grid.shape + (4,))
        fill: Optional[float] = 0.0
    else:
        order = np.argsort(grid.theta_nodes)
        axes = (grid.k_nodes, grid.theta_nodes[order], grid.phi_nodes)
        cube = psi4.components.reshape(grid.shape + (4,))[:, order, :, :]
        fill = None

    interpolators = [
        (
            RegularGridInterpolator(axes, cube[..., mu].real, bounds_error=False, fill_value=fill),
            RegularGridInterpolator(axes, cube[..., mu].imag, bounds_error=False, fill_value=fill),
        )
        for mu in range(4)
    ]

    def field(kvec: np.ndarray) -> np.ndarray:
        kvec = np.asarray(kvec, dtype=float)
        if isinstance(grid, CartesianGrid):
            points = kvec
        else:
            theta, phi = _angles(kvec)
            points = np.stack([np.linalg.norm(kvec, axis=1), theta, np.mod(phi, 2.0 * np.pi)], axis=1)
        return np.stack([re(points) + 1j * im(points) for re, im in interpolators], axis=1)

    return field


def boost_state(
    psi4: FourVectorWF,
    boost: Boost,
    grid: Optional[Grid] = None,
    interpolate: bool = False,
) -> FourVectorWF:
    """
    Boosted field Psi'(k') = L Psi(L^-1 k') sampled on ``grid``.

    Args:
        psi4: Rest-frame field
        boost: Boost L
        grid: Target grid (default: the field's own grid)
        interpolate: Allow linear interpolation of sampled-only fields

    Returns:
        FourVectorWF whose closure composes with further boosts

    Raises:
        NeedsAnalyticStateError: For sampled-only fields unless interpolate is set
    """
    source = psi4.field
    if source is None:
        if not interpolate:
            raise NeedsAnalyticStateError(
                f"Field '{psi4.label}' has no analytic closure; pass interpolate=True "
                "to boost by linear interpolation of the samples"
            )
        source = _interpolated_field(psi4)
        logger.debug(f"Boosting '{psi4.label}' through linear interpolation")

    lam = boost.matrix
    back = boost.inverse()

    def boosted(kvec: np.ndarray) -> np.ndarray:
        _, k_rest = back.map_momenta(kvec)
        return source(k_rest) @ lam.T

    target = grid if grid is not None else psi4.grid
    return FourVectorWF(grid=target, components=boosted(target.kvec), field=boosted, label=psi4.label)


def boosted_grid(grid: Grid, rapidity: float) -> Grid:
    """
    Grid for the boosted frame with k_max inflated by exp(|eta|).

    Spherical grids keep the radial rule and angular counts and get
    ceil(n_r exp(|eta|)) radial nodes. Cartesian grids get the next power of
    two at or above n exp(|eta|).
    """
    factor = math.exp(abs(rapidity))
    if isinstance(grid, KGrid):
        return build_spherical_grid(
            int(math.ceil(grid.n_r * factor - 1e-9)),
            grid.n_theta,
            grid.n_phi,
            grid.k_max * factor,
            grid.radial_rule,
        )
    n = grid.n
    while n < grid.n * factor - 1e-9:
        n *= 2
    return CartesianGrid(n, grid.k_max * factor, grid.centering, grid.k_center)


def invariance_defect(
    phi4: FourVectorWF,
    psi4: FourVectorWF,
    boost: Boost,
    target: Optional[Grid] = None,
) -> tuple[float, complex, complex]:
    """
    Relative change of the invariant scalar product under a boost.

    Args:
        phi4: Rest-frame bra field
        psi4: Rest-frame ket field
        boost: Boost
        target: Boosted-frame grid (default ``boosted_grid``)

    Returns:
        Tuple (defect, sp_rest, sp_boosted)

    Raises:
        IllConditionedComparisonError: If |sp_rest| < 1e-13
        NeedsAnalyticStateError: For fields without a closure
    """
    sp_rest = minkowski_integral(psi4.grid, phi4.components, psi4.components, -1.0)
    if abs(sp_rest) < ILL_CONDITIONED_THRESHOLD:
        raise IllConditionedComparisonError(
            f"Rest-frame scalar product {abs(sp_rest):.3e} is below {ILL_CONDITIONED_THRESHOLD}; "
            "a relative defect is meaningless for (near-)orthogonal states"
        )
    target = target if target is not None else boosted_grid(psi4.grid, boost.rapidity)
    phi_b = boost_state(phi4, boost, target)
    psi_b = boost_state(psi4, boost, target)
    sp_boosted = minkowski_integral(target, phi_b.components, psi_b.components, -1.0)
    defect = abs(sp_boosted - sp_rest) / abs(sp_rest)
    logger.debug(
        f"Invariance defect {defect:.3e} at eta={boost.rapidity} on {target.descriptor()}"
    )
    return float(defect), complex(sp_rest), complex(sp_boosted)


def measure_identity_defect(
    f: Callable[[np.ndarray], np.ndarray],
    grid: Grid,
    boost: Boost,
    target: Optional[Grid] = None,
) -> float:
    """
    |integral' d^3k'/omega' f(L^-1 k') - integral d^3k/omega f(k)| / |integral d^3k/omega f(k)|.

    Args:
        f: Scalar function of momenta (N, 3)
        grid: Rest-frame grid
        boost: Boost
        target: Boosted-frame grid (default ``boosted_grid``)
    """
    rest = integrate(grid, omega_power(grid.omega, -1.0) * f(grid.kvec))
    target = target if target is not None else boosted_grid(grid, boost.rapidity)
    _, k_rest = boost.inverse().map_momenta(target.kvec)
    moved = integrate(target, omega_power(target.omega, -1.0) * f(k_rest))
    return float(abs(moved - rest) / abs(rest)) if rest != 0 else float(abs(moved))


def _single_helicity(psi: WaveFunctionK) -> int:
    if psi.amplitude is None:
        raise NeedsAnalyticStateError(f"State '{psi.label}' has no analytic closure")
    has_plus, has_minus = bool(np.any(psi.c_plus)), bool(np.any(psi.c_minus))
    if has_plus == has_minus:
        raise InvalidStateError(
            f"State '{psi.label}' must carry exactly one helicity for this check"
        )
    return 1 if has_plus else -1


@dataclass(frozen=True)
class HelicityProjection:
    """Nodewise decomposition of a boosted single-helicity field.

    Attributes:
        sigma: Helicity of the rest-frame state
        same: e_sigma^(0)(k')* . T
        opposite: e_-sigma^(0)(k')* . T
        longitudinal: k_hat' . T
        gauge: Removed time component Psi'^0
        expected: |c(L^-1 k')| sqrt(omega) predicted by the 4-vector transform
        rest_amplitude: c(L^-1 k') sqrt(omega)
    """

    sigma: int
    same: np.ndarray
    opposite: np.ndarray
    longitudinal: np.ndarray
    gauge: np.ndarray
    expected: np.ndarray
    rest_amplitude: np.ndarray

    @property
    def leakage(self) -> float:
        scale = float(np.max(np.abs(self.same))) if self.same.size else 0.0
        residual = np.abs(self.opposite) + np.abs(self.longitudinal)
        return float(np.max(residual) / scale) if scale > 0 else float(np.max(residual, initial=0.0))


def helicity_projection(psi: WaveFunctionK, boost: Boost, kvec: Optional[np.ndarray] = None) -> HelicityProjection:
    """
    Boost a single-helicity state and project it onto the boosted helicity basis.

    The gauge part proportional to k' is removed first:
    T = Psi'_s - (Psi'^0 / omega') k'.

    Args:
        psi: Single-helicity analytic state
        boost: Boost
        kvec: Boosted-frame momenta (default: the state's grid nodes)

    Raises:
        NeedsAnalyticStateError: Without an analytic closure
        InvalidStateError: If both helicities are present
    """
    sigma = _single_helicity(psi)
    kvec = psi.grid.kvec if kvec is None else np.asarray(kvec, dtype=float)
    boosted = boost_state(embed(psi), boost, grid=None).field(kvec)
    omega = np.linalg.norm(kvec, axis=1)
    gauge = boosted[:, 0]
    transverse = boosted[:, 1:] - (gauge / omega)[:, None] * kvec
    theta, phi = _angles(kvec)
    e_same = helicity_vectors(theta, phi, sigma)
    e_opposite = helicity_vectors(theta, phi, -sigma)
    k_hat = kvec / omega[:, None]

    omega_rest, k_rest = boost.inverse().map_momenta(kvec)
    rest_amplitude = psi.amplitude_at(k_rest, sigma) * np.sqrt(omega_rest)
    return HelicityProjection(
        sigma=sigma,
        same=np.sum(np.conj(e_same) * transverse, axis=1),
        opposite=np.sum(np.conj(e_opposite) * transverse, axis=1),
        longitudinal=np.sum(k_hat * transverse, axis=1),
        gauge=gauge,
        expected=np.abs(rest_amplitude),
        rest_amplitude=rest_amplitude,
    )


def helicity_invariance_check(psi: WaveFunctionK, boost: Boost, kvec: Optional[np.ndarray] = None) -> float:
    """
    Wrong-helicity plus longitudinal leakage of a boosted single-helicity state.

    Returns:
        max over nodes of (|e_-sigma* . T| + |k_hat' . T|) / max |e_sigma* . T|
    """
    return helicity_projection(psi, boost, kvec).leakage


@dataclass(frozen=True)
class WignerPhase:
    """Per-node polarization rotation induced by a boost.

    Attributes:
        phase: delta chi per node (nan where the amplitude vanishes)
        gauge_residual: |Psi'^0| removed before projecting
        leakage: |e_-sigma* . T| + |k_hat' . T| per node
    """

    phase: np.ndarray
    gauge_residual: np.ndarray
    leakage: np.ndarray


def wigner_phase(psi: WaveFunctionK, boost: Boost, kvec: Optional[np.ndarray] = None) -> WignerPhase:
    """
    Measure the chi shift a boost applies to a single-helicity state.

    delta chi = -sigma arg(e_sigma^(0)(k')* . T / (c(L^-1 k') sqrt(omega))),
    so T = |c| sqrt(omega) e_sigma^(delta chi)(k') up to the gauge term.
    """
    projection = helicity_projection(psi, boost, kvec)
    significant = projection.expected > 1e-12 * max(float(np.max(projection.expected, initial=0.0)), 1e-300)
    ratio = np.full(projection.same.shape, np.nan + 0j)
    ratio[significant] = projection.same[significant] / projection.rest_amplitude[significant]
    return WignerPhase(
        phase=-projection.sigma * np.angle(ratio),
        gauge_residual=np.abs(projection.gauge),
        leakage=np.abs(projection.opposite) + np.abs(projection.longitudinal),
    )


def refinement_ladder(
    phi: WaveFunctionK,
    psi: WaveFunctionK,
    boost: Boost,
    grid: Grid,
    levels: int = 3,
) -> list[RefinementStep]:
    """
    Invariance defect on a ladder of grids ending at ``grid``.

    Rung j uses every node count scaled by 2^(j - (levels - 1)).

    Args:
        phi: Analytic bra state
        psi: Analytic ket state
        boost: Boost
        grid: Finest (configured) grid
        levels: Number of rungs (>= 1)

    Returns:
        Steps from coarsest to finest
    """
    if levels < 1:
        raise InvalidArgumentError(f"Refinement ladder needs at least one level, got {levels}")
    steps = []
    for level in range(levels):
        factor = 2.0 ** (level - (levels - 1))
        if isinstance(grid, CartesianGrid):
            n = max(8, int(round(grid.n * factor)))
            if not is_power_of_two(n):
                raise InvalidArgumentError(f"Cartesian ladder size {n} is not a power of two")
            rung = CartesianGrid(n, grid.k_max, grid.centering, grid.k_center)
        else:
            rung = grid.scaled(factor)
        target = boosted_grid(rung, boost.rapidity)
        defect, _, _ = invariance_defect(embed(resample(phi, rung)), embed(resample(psi, rung)), boost, target)
        logger.debug(f"Refinement level {level}: {rung.descriptor()} -> defect {defect:.3e}")
        steps.append(
            RefinementStep(level=level, grid=rung.descriptor(), boosted_grid=target.descriptor(), defect=defect)
        )
    return steps


def ladder_converges(steps: list[RefinementStep], ratio: float = 10.0, floor: float = 1e-12) -> bool:
    """True when every rung improves on the previous by ``ratio`` (or sits below ``floor``)."""
    return all(
        fine.defect <= max(coarse.defect / ratio, floor) for coarse, fine in zip(steps, steps[1:])
    )

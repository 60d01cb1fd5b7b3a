"""
The alpha-parametrized single-photon wave-function family.

A state is stored as its two helicity amplitudes c_sigma(k) per grid node.
The vector samples of the alpha form are a derived view,

    Psi_sigma^(alpha)(k) = c_sigma(k) e_sigma^(0)(k) omega_k^alpha,

so transversality holds by construction and changing alpha is a metadata
change. alpha = 0 is the Landau-Peierls form; alpha = -1/2 and +1/2 are the
vector-potential and electric-field (4-vector) forms.

Example:
    from src.photon.kgrid import build_spherical_grid
    from src.photon.wavefunction import make_wavefunction, normalize

    grid = build_spherical_grid(64, 32, 64, k_max=12.0)
    wf = normalize(make_wavefunction(grid, lambda k: np.exp(-(k ** 2).sum(1)), None, alpha=0.0))
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Union

import numpy as np

from src.core.error_handling import (
    InvalidArgumentError,
    InvalidStateError,
    NeedsAnalyticStateError,
    WrongGridError,
)
from src.core.utils import omega_power
from src.photon.fourier import k_to_r_vector
from src.photon.kgrid import CartesianGrid, Grid, integrate
from src.photon.polarization import HELICITIES, helicity_vectors

logger = logging.getLogger(__name__)

ALLOWED_ALPHAS = (-0.5, 0.0, 0.5)

AmplitudeFunction = Callable[[np.ndarray], np.ndarray]
"""Maps momenta of shape (N, 3) to N complex amplitudes."""

AmplitudeSource = Union[AmplitudeFunction, np.ndarray, None]


@dataclass(frozen=True)
class HelicityPairAmplitude:
    """Analytic closures for (c_+, c_-), evaluable at arbitrary momenta."""

    c_plus: Optional[AmplitudeFunction] = None
    c_minus: Optional[AmplitudeFunction] = None

    def __call__(self, kvec: np.ndarray, sigma: int) -> np.ndarray:
        kvec = np.asarray(kvec, dtype=float)
        function = self.c_plus if sigma == 1 else self.c_minus
        if function is None:
            return np.zeros(kvec.shape[0], dtype=complex)
        return np.asarray(function(kvec), dtype=complex).reshape(kvec.shape[0])


def _frozen(values: np.ndarray) -> np.ndarray:
    array = np.array(values, dtype=complex, copy=True)
    array.flags.writeable = False
    return array


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if alpha not in ALLOWED_ALPHAS:
        raise InvalidArgumentError(f"alpha must be one of {ALLOWED_ALPHAS}, got {alpha}")
    return alpha


@dataclass(frozen=True, eq=False)
class WaveFunctionK:
    """Momentum-space single-photon state on a grid.

    Attributes:
        grid: Spherical or Cartesian grid
        c_plus: Helicity +1 amplitude per node at time t
        c_minus: Helicity -1 amplitude per node at time t
        alpha: Form exponent in {-1/2, 0, 1/2}
        t: Time of the carried phase exp(-i omega t)
        amplitude: Optional analytic closure reproducing the amplitudes
        amplitude_scale: Factor applied to the closure (set by normalize)
        amplitude_time: Time at which the closure holds
    """

    grid: Grid
    c_plus: np.ndarray
    c_minus: np.ndarray
    alpha: float = 0.0
    t: float = 0.0
    amplitude: Optional[HelicityPairAmplitude] = None
    amplitude_scale: complex = 1.0 + 0.0j
    amplitude_time: float = 0.0
    label: str = field(default="state")

    def __post_init__(self) -> None:
        object.__setattr__(self, "c_plus", _frozen(self.c_plus))
        object.__setattr__(self, "c_minus", _frozen(self.c_minus))
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))
        for name in ("c_plus", "c_minus"):
            if getattr(self, name).shape != (self.grid.node_count,):
                raise InvalidArgumentError(
                    f"{name} has shape {getattr(self, name).shape}, "
                    f"expected ({self.grid.node_count},)"
                )

    def c(self, sigma: int) -> np.ndarray:
        """Amplitude of helicity ``sigma``."""
        return self.c_plus if sigma == 1 else self.c_minus

    @property
    def has_analytic_amplitude(self) -> bool:
        return self.amplitude is not None

    def amplitude_at(self, kvec: np.ndarray, sigma: int) -> np.ndarray:
        """
        Evaluate c_sigma at arbitrary momenta and the carried time.

        Raises:
            NeedsAnalyticStateError: If the state was built from sampled arrays only
        """
        if self.amplitude is None:
            raise NeedsAnalyticStateError(f"State '{self.label}' has no analytic amplitude closure")
        kvec = np.asarray(kvec, dtype=float)
        omega = np.linalg.norm(kvec, axis=1)
        phase = np.exp(-1j * omega * (self.t - self.amplitude_time))
        return self.amplitude_scale * self.amplitude(kvec, sigma) * phase

    def snapshot_columns(self) -> dict[str, np.ndarray]:
        """Columns of the state-export CSV, one row per node."""
        kvec = self.grid.kvec
        count = self.grid.node_count
        return {
            "kx": kvec[:, 0],
            "ky": kvec[:, 1],
            "kz": kvec[:, 2],
            "re_c_plus": self.c_plus.real,
            "im_c_plus": self.c_plus.imag,
            "re_c_minus": self.c_minus.real,
            "im_c_minus": self.c_minus.imag,
            "alpha": np.full(count, self.alpha),
            "t": np.full(count, self.t),
        }


@dataclass(frozen=True, eq=False)
class WaveFunctionR:
    """Real-space field on the dual r-grid of a CartesianGrid.

    Attributes:
        grid: Cartesian grid whose r-lattice carries the field
        components: Complex array (N, 3)
        alpha: Form exponent of the synthesized state
        t: Evaluation time
    """

    grid: CartesianGrid
    components: np.ndarray
    alpha: float
    t: float

    @property
    def r_points(self) -> np.ndarray:
        return self.grid.r_points

    def norm_squared(self) -> float:
        """sum_r |Psi(r)|^2 delta_r^3."""
        return float(np.sum(np.abs(self.components) ** 2) * self.grid.r_cell_volume)


def _sample(grid: Grid, source: AmplitudeSource, name: str) -> np.ndarray:
    if source is None:
        return np.zeros(grid.node_count, dtype=complex)
    if callable(source):
        values = np.asarray(source(grid.kvec), dtype=complex)
    else:
        values = np.asarray(source, dtype=complex)
    if values.shape != (grid.node_count,):
        raise InvalidArgumentError(
            f"{name} produced shape {values.shape}, expected ({grid.node_count},)"
        )
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise InvalidStateError(
            f"{name} is not finite at node {int(bad[0])} "
            f"(k = {grid.kvec[bad[0]].tolist()}, {bad.size} bad nodes)"
        )
    return values


def make_wavefunction(
    grid: Grid,
    c_plus: AmplitudeSource,
    c_minus: AmplitudeSource,
    alpha: float = 0.0,
    t: float = 0.0,
    label: str = "state",
) -> WaveFunctionK:
    """
    Sample helicity amplitudes on a grid.

    Callables receive the node momenta (N, 3) and are kept as the state's
    analytic closure, valid at time ``t``. Arrays are taken as samples.

    Args:
        grid: Target grid
        c_plus: Helicity +1 amplitude (callable, array or None for zero)
        c_minus: Helicity -1 amplitude (callable, array or None for zero)
        alpha: Form exponent in {-1/2, 0, 1/2}
        t: Time the amplitudes refer to
        label: Name used in logs and reports

    Returns:
        WaveFunctionK

    Raises:
        InvalidStateError: If any sample is non-finite (message names the node)
        InvalidArgumentError: For a bad alpha or sample count
    """
    plus = _sample(grid, c_plus, "c_plus")
    minus = _sample(grid, c_minus, "c_minus")
    closure = None
    if (c_plus is None or callable(c_plus)) and (c_minus is None or callable(c_minus)):
        closure = HelicityPairAmplitude(c_plus, c_minus)
    logger.debug(f"Sampled state '{label}' on {grid.node_count} nodes (alpha={alpha})")
    return WaveFunctionK(
        grid=grid,
        c_plus=plus,
        c_minus=minus,
        alpha=alpha,
        t=float(t),
        amplitude=closure,
        amplitude_time=float(t),
        label=label,
    )


def convert_alpha(wf: WaveFunctionK, alpha: float) -> WaveFunctionK:
    """Reinterpret the state in another form; the amplitudes are unchanged."""
    return replace(wf, alpha=_check_alpha(alpha))


def evolve(wf: WaveFunctionK, dt: float) -> WaveFunctionK:
    """
    Free evolution by dt: c_sigma(k) -> c_sigma(k) exp(-i omega_k dt).

    Args:
        wf: State
        dt: Time step (any sign)

    Returns:
        State carrying time t + dt
    """
    if dt == 0:
        return wf
    phase = np.exp(-1j * wf.grid.omega * dt)
    return replace(wf, c_plus=wf.c_plus * phase, c_minus=wf.c_minus * phase, t=wf.t + dt)


def evolve_to(wf: WaveFunctionK, t: float) -> WaveFunctionK:
    """Evolve the state to absolute time ``t``."""
    return evolve(wf, float(t) - wf.t)


def helicity_norm(wf: WaveFunctionK, sigma: int) -> float:
    """Integral of |c_sigma|^2 over the grid."""
    return integrate(wf.grid, np.abs(wf.c(sigma)) ** 2).real


def qed_norm(wf: WaveFunctionK) -> float:
    """sum_sigma integral |c_sigma|^2 d^3k."""
    return sum(helicity_norm(wf, sigma) for sigma in HELICITIES)


def normalize(wf: WaveFunctionK) -> WaveFunctionK:
    """
    Scale the state to unit QED norm.

    Raises:
        InvalidStateError: If the norm vanishes
    """
    norm = qed_norm(wf)
    if not norm > 0:
        raise InvalidStateError(f"State '{wf.label}' has zero norm and cannot be normalized")
    scale = 1.0 / np.sqrt(norm)
    return replace(
        wf,
        c_plus=wf.c_plus * scale,
        c_minus=wf.c_minus * scale,
        amplitude_scale=wf.amplitude_scale * scale,
    )


def vector_samples(wf: WaveFunctionK, sigma: Optional[int] = None) -> np.ndarray:
    """
    Vector samples of the alpha form, shape (N, 3).

    Args:
        wf: State
        sigma: Restrict to one helicity (default: sum over both)

    Returns:
        sum_sigma c_sigma e_sigma^(0) omega^alpha
    """
    grid = wf.grid
    helicities = HELICITIES if sigma is None else (sigma,)
    total = np.zeros((grid.node_count, 3), dtype=complex)
    for s in helicities:
        total += wf.c(s)[:, None] * helicity_vectors(grid.theta, grid.phi, s)
    return total * omega_power(grid.omega, wf.alpha)[:, None]


def four_vector_samples(wf: WaveFunctionK) -> np.ndarray:
    """Transverse embedding (0, Psi) of the vector samples, shape (N, 4)."""
    spatial = vector_samples(wf)
    return np.concatenate([np.zeros((spatial.shape[0], 1), dtype=complex), spatial], axis=1)


def synthesize_real_space(wf: WaveFunctionK, t: Optional[float] = None) -> WaveFunctionR:
    """
    Real-space field Psi^(alpha)(r, t) on the dual r-grid.

    Args:
        wf: State on a CartesianGrid
        t: Evaluation time (default: the carried time)

    Returns:
        WaveFunctionR

    Raises:
        WrongGridError: For spherical grids
    """
    if not isinstance(wf.grid, CartesianGrid):
        raise WrongGridError(
            "Real-space synthesis needs a CartesianGrid; "
            "use localization.number_amplitude(path='quadrature') on spherical grids"
        )
    state = wf if t is None else evolve_to(wf, t)
    components = k_to_r_vector(state.grid, vector_samples(state))
    return WaveFunctionR(grid=state.grid, components=components, alpha=state.alpha, t=state.t)


def resample(wf: WaveFunctionK, grid: Grid) -> WaveFunctionK:
    """
    Re-evaluate an analytic state on another grid at the same time.

    Raises:
        NeedsAnalyticStateError: If the state has no closure
    """
    if wf.amplitude is None:
        raise NeedsAnalyticStateError(
            f"State '{wf.label}' was built from samples and cannot be re-evaluated off its grid"
        )
    return make_wavefunction(
        grid,
        lambda kvec: wf.amplitude_at(kvec, 1),
        lambda kvec: wf.amplitude_at(kvec, -1),
        alpha=wf.alpha,
        t=wf.t,
        label=wf.label,
    )

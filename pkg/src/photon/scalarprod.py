"""
Scalar products, the position operator and the form-equivalence checks.

Five forms of <phi|psi> are evaluated:

    invariant   integral d^3k / omega  g_mn Phi^(1/2)m* Psi^(1/2)n     (metric -,+,+,+)
    alpha_pair  integral d^3k  g_mn Phi^(-alpha)m* Psi^(alpha)n
    transverse  integral d^3k  Phi^(-alpha)* . Psi^(alpha)             (3-vectors)
    qed         sum_sigma integral d^3k  d_sigma* c_sigma
    rspace      sum_r Phi^(-alpha)*(r) . Psi^(alpha)(r) delta_r^3     (Cartesian only)

All of them reduce to the qed form on a given grid; their spread measures
round-off and, for the real-space form, the discrete Plancherel identity.

The position operator acts on helicity amplitudes as

    (r_j c)_sigma = i d_j c_sigma + (tau - t) k_hat_j c_sigma - sigma c_sigma d_j chi

which is i grad[c_sigma(k, tau) exp(i sigma chi)] exp(-i sigma chi) carried
back to the state's time t. tau defaults to t.
"""

import logging
from dataclasses import replace
from itertools import combinations
from typing import Optional

import numpy as np

from src.core.error_handling import (
    FormPairingError,
    IncompatibleGridsError,
    InvalidArgumentError,
    InvalidStateError,
    UnsupportedChiError,
)
from src.core.utils import deterministic_sum, omega_power, relative_deviation
from src.models.report_models import ComplexValue, ScalarProductReport
from src.photon.gradients import gradient
from src.photon.kgrid import CartesianGrid, Grid, integrate
from src.photon.polarization import HELICITIES, ChiConvention, ChiSpec
from src.photon.wavefunction import (
    WaveFunctionK,
    WaveFunctionR,
    convert_alpha,
    evolve_to,
    four_vector_samples,
    make_wavefunction,
    qed_norm,
    synthesize_real_space,
    vector_samples,
)

logger = logging.getLogger(__name__)

MINKOWSKI_METRIC = np.array([-1.0, 1.0, 1.0, 1.0])
"""Diagonal of g with g_00 = -1."""

FORM_NAMES = ("invariant", "alpha_pair", "transverse", "qed", "rspace")


def _check_grids(phi: WaveFunctionK, psi: WaveFunctionK) -> Grid:
    if not phi.grid.is_compatible(psi.grid):
        raise IncompatibleGridsError(
            f"States live on different grids: {phi.grid.descriptor()} vs {psi.grid.descriptor()}"
        )
    return psi.grid


def minkowski_integral(
    grid: Grid, a4: np.ndarray, b4: np.ndarray, measure_power: float = -1.0
) -> complex:
    """
    integral d^3k omega^p g_mn a^m* b^n for per-node 4-vectors.

    Args:
        grid: Grid carrying the samples
        a4: Complex array (N, 4), conjugated
        b4: Complex array (N, 4)
        measure_power: Power p of omega in the measure (-1 for d^3k / omega)

    Returns:
        Complex integral
    """
    contracted = np.sum(np.conj(a4) * b4 * MINKOWSKI_METRIC, axis=1)
    return integrate(grid, omega_power(grid.omega, measure_power) * contracted)


def sp_invariant(phi: WaveFunctionK, psi: WaveFunctionK) -> complex:
    """
    Lorentz-invariant form with the d^3k / omega measure.

    Both states are taken in the alpha = 1/2 form and embedded with a
    zero time component.

    Raises:
        IncompatibleGridsError: If the grids differ
    """
    grid = _check_grids(phi, psi)
    a4 = four_vector_samples(convert_alpha(phi, 0.5))
    b4 = four_vector_samples(convert_alpha(psi, 0.5))
    return minkowski_integral(grid, a4, b4, -1.0)


def sp_alpha_pair(phi: WaveFunctionK, psi: WaveFunctionK, alpha: float) -> complex:
    """
    Paired form integral d^3k Phi^(-alpha)* Psi^(alpha) contracted with g.

    Args:
        phi: Bra state (used in the -alpha form)
        psi: Ket state (used in the alpha form)
        alpha: Form exponent of the ket

    Raises:
        IncompatibleGridsError: If the grids differ
    """
    grid = _check_grids(phi, psi)
    a4 = four_vector_samples(convert_alpha(phi, -alpha))
    b4 = four_vector_samples(convert_alpha(psi, alpha))
    return minkowski_integral(grid, a4, b4, 0.0)


def sp_transverse(phi: WaveFunctionK, psi: WaveFunctionK, alpha: float) -> complex:
    """Transverse-gauge form integral d^3k Phi^(-alpha)* . Psi^(alpha)."""
    grid = _check_grids(phi, psi)
    a = vector_samples(convert_alpha(phi, -alpha))
    b = vector_samples(convert_alpha(psi, alpha))
    return integrate(grid, np.sum(np.conj(a) * b, axis=1))


def sp_qed(phi: WaveFunctionK, psi: WaveFunctionK, chi: Optional[ChiSpec] = None) -> complex:
    """
    Helicity-diagonal form sum_sigma integral d_sigma* c_sigma.

    Args:
        phi: Bra state
        psi: Ket state
        chi: When given, both amplitudes are first moved to the chi basis,
            c_sigma -> c_sigma exp(i sigma chi)

    Raises:
        IncompatibleGridsError: If the grids differ
    """
    grid = _check_grids(phi, psi)
    chi_values = None if chi is None else chi.values_at(grid.kvec)
    total = 0j
    for sigma in HELICITIES:
        d, c = phi.c(sigma), psi.c(sigma)
        if chi_values is not None:
            rotation = np.exp(1j * sigma * chi_values)
            d, c = d * rotation, c * rotation
        total += integrate(grid, np.conj(d) * c)
    return total


def sp_rspace(phi_r: WaveFunctionR, psi_r: WaveFunctionR) -> complex:
    """
    Local real-space form sum_r Phi^(-alpha)*(r) . Psi^(alpha)(r) delta_r^3.

    Raises:
        FormPairingError: If the forms are not conjugate (alpha, -alpha) or the times differ
        IncompatibleGridsError: If the r-grids differ
    """
    if not phi_r.grid.is_compatible(psi_r.grid):
        raise IncompatibleGridsError("Real-space fields live on different r-grids")
    if phi_r.alpha != -psi_r.alpha:
        raise FormPairingError(
            f"Real-space product pairs alpha={phi_r.alpha} with alpha={psi_r.alpha}; "
            "the bra must carry -alpha for an invariant product"
        )
    if phi_r.t != psi_r.t:
        raise FormPairingError(f"Fields synthesized at different times: {phi_r.t} vs {psi_r.t}")
    integrand = np.sum(np.conj(phi_r.components) * psi_r.components, axis=1)
    return complex(deterministic_sum(integrand) * phi_r.grid.r_cell_volume)


def _with_amplitudes(wf: WaveFunctionK, c_plus: np.ndarray, c_minus: np.ndarray, label: str) -> WaveFunctionK:
    return replace(wf, c_plus=c_plus, c_minus=c_minus, amplitude=None, label=label)


def apply_position_operator(
    psi: WaveFunctionK,
    chi: Optional[ChiSpec] = None,
    at_time: Optional[float] = None,
) -> tuple[WaveFunctionK, WaveFunctionK, WaveFunctionK]:
    """
    Apply the three components of the position operator.

    Gradients are spectral on Cartesian grids and 4th-order finite
    differences on spherical grids.

    Args:
        psi: State (any alpha; the amplitude-level action is alpha independent)
        chi: Gauge convention, 'zero' or 'minus_phi' (default zero)
        at_time: Time tau at which the operator acts (default: carried t)

    Returns:
        Tuple (r_x psi, r_y psi, r_z psi), each at the carried time

    Raises:
        UnsupportedChiError: For a tabulated chi
    """
    chi = chi or ChiSpec.zero()
    grid = psi.grid
    chi_gradient = chi.gradient_at(grid.kvec)
    drift = 0.0 if at_time is None else float(at_time) - psi.t

    components: dict[int, np.ndarray] = {}
    for sigma in HELICITIES:
        c = psi.c(sigma)
        if not np.any(c):
            components[sigma] = np.zeros((grid.node_count, 3), dtype=complex)
            continue
        result = 1j * gradient(grid, c) - sigma * c[:, None] * chi_gradient
        if drift:
            result += drift * grid.k_hat * c[:, None]
        components[sigma] = result

    return tuple(
        _with_amplitudes(psi, components[1][:, j], components[-1][:, j], f"r{'xyz'[j]} {psi.label}")
        for j in range(3)
    )


def hermiticity_defect(
    phi: WaveFunctionK,
    psi: WaveFunctionK,
    alpha: float,
    chi: Optional[ChiSpec] = None,
) -> float:
    """
    max_j |<r_j^(-alpha) phi | psi^(alpha)> - <phi^(-alpha) | r_j^(alpha) psi>|.

    Args:
        phi: Bra state
        psi: Ket state
        alpha: Form exponent of the ket
        chi: Gauge convention

    Returns:
        Largest component defect
    """
    _check_grids(phi, psi)
    r_phi = apply_position_operator(phi, chi)
    r_psi = apply_position_operator(psi, chi)
    defects = [
        abs(sp_alpha_pair(r_phi[j], psi, alpha) - sp_alpha_pair(phi, r_psi[j], alpha))
        for j in range(3)
    ]
    logger.debug(f"Hermiticity defects per component: {defects}")
    return float(max(defects))


def _require_norm(psi: WaveFunctionK) -> float:
    norm = qed_norm(psi)
    if not norm > 0:
        raise InvalidStateError(f"State '{psi.label}' has zero norm")
    return norm


def expectation_position(
    psi: WaveFunctionK,
    chi: Optional[ChiSpec] = None,
    at_time: Optional[float] = None,
) -> np.ndarray:
    """
    <r> = <psi|r psi> / <psi|psi>, complex per component.

    The imaginary parts vanish up to gradient-scheme error.
    """
    norm = _require_norm(psi)
    return np.array([sp_qed(psi, component) for component in apply_position_operator(psi, chi, at_time)]) / norm


def expectation_momentum(psi: WaveFunctionK) -> np.ndarray:
    """<k> = sum_sigma integral k |c_sigma|^2 / norm (hbar = 1)."""
    norm = _require_norm(psi)
    density = sum(np.abs(psi.c(sigma)) ** 2 for sigma in HELICITIES)
    return np.array([integrate(psi.grid, psi.grid.kvec[:, j] * density).real for j in range(3)]) / norm


def expectation_energy(psi: WaveFunctionK) -> float:
    """<omega> = sum_sigma integral omega |c_sigma|^2 / norm."""
    norm = _require_norm(psi)
    density = sum(np.abs(psi.c(sigma)) ** 2 for sigma in HELICITIES)
    return integrate(psi.grid, psi.grid.omega * density).real / norm


def commutator_norm(psi: WaveFunctionK, i: int, j: int, chi: Optional[ChiSpec] = None) -> float:
    """
    || (r_i r_j - r_j r_i) psi || in the qed norm.

    The chi term of r is -sigma c grad(chi), a pure gradient, so it drops out
    of the commutator wherever chi is smooth. A named convention is therefore
    evaluated with chi = 0; the minus-phi gradient is singular on the k_z axis
    and a spectral derivative of c grad(chi) would only measure that kink.

    Raises:
        InvalidArgumentError: For component indices outside 0..2
        UnsupportedChiError: For a custom chi table
    """
    if i not in (0, 1, 2) or j not in (0, 1, 2):
        raise InvalidArgumentError(f"Component indices must be 0, 1 or 2, got ({i}, {j})")
    if chi is not None and chi.convention is ChiConvention.CUSTOM:
        raise UnsupportedChiError("The commutator needs a named chi convention, not a custom table")
    r_i_r_j = apply_position_operator(apply_position_operator(psi)[j])[i]
    r_j_r_i = apply_position_operator(apply_position_operator(psi)[i])[j]
    difference = _with_amplitudes(
        psi,
        r_i_r_j.c_plus - r_j_r_i.c_plus,
        r_i_r_j.c_minus - r_j_r_i.c_minus,
        "commutator",
    )
    return float(np.sqrt(qed_norm(difference)))


def momentum_eigenstate(grid: Grid, node: int, sigma: int, chi: float = 0.0) -> WaveFunctionK:
    """
    Discrete delta at one k node with polarization e_sigma^(chi).

    d_sigma = exp(-i sigma chi) / w_node at ``node`` and zero elsewhere, so
    sp_qed(d, psi) = c_sigma(k_node) exp(i sigma chi).

    Raises:
        InvalidArgumentError: For an out-of-range node or helicity
    """
    if not 0 <= node < grid.node_count:
        raise InvalidArgumentError(f"Node {node} outside 0..{grid.node_count - 1}")
    if sigma not in HELICITIES:
        raise InvalidArgumentError(f"helicity must be +1 or -1, got {sigma}")
    samples = np.zeros(grid.node_count, dtype=complex)
    samples[node] = np.exp(-1j * sigma * chi) / grid.weights[node]
    zero = np.zeros(grid.node_count, dtype=complex)
    plus, minus = (samples, zero) if sigma == 1 else (zero, samples)
    return make_wavefunction(grid, plus, minus, label=f"momentum node {node}")


def compare_forms(phi: WaveFunctionK, psi: WaveFunctionK, alpha: float = 0.5) -> ScalarProductReport:
    """
    Evaluate every available form and their pairwise relative deviations.

    phi is evolved to psi's time first. Deviations are measured against the
    Cauchy-Schwarz scale ||phi|| ||psi||. The real-space form is included
    only on Cartesian grids.

    Args:
        phi: Bra state
        psi: Ket state
        alpha: Exponent for the paired forms

    Returns:
        ScalarProductReport
    """
    grid = _check_grids(phi, psi)
    phi = evolve_to(phi, psi.t)
    values: dict[str, complex] = {
        "invariant": sp_invariant(phi, psi),
        "alpha_pair": sp_alpha_pair(phi, psi, alpha),
        "transverse": sp_transverse(phi, psi, alpha),
        "qed": sp_qed(phi, psi),
    }
    if isinstance(grid, CartesianGrid):
        phi_r = synthesize_real_space(convert_alpha(phi, -alpha))
        psi_r = synthesize_real_space(convert_alpha(psi, alpha))
        values["rspace"] = sp_rspace(phi_r, psi_r)

    scale = float(np.sqrt(qed_norm(phi) * qed_norm(psi)))
    deviations = {
        f"{a}|{b}": relative_deviation(values[a], values[b], scale)
        for a, b in combinations(values, 2)
    }
    max_deviation = max(deviations.values()) if deviations else 0.0
    logger.debug(f"Form comparison '{phi.label}'|'{psi.label}': max deviation {max_deviation:.3e}")
    return ScalarProductReport(
        values={name: ComplexValue.from_complex(value) for name, value in values.items()},
        deviations=deviations,
        max_deviation=max_deviation,
        scale=scale,
        alpha=alpha,
        grids=[grid.descriptor()],
    )

"""
k-space quadrature grids.

Two grid families carry every momentum-space integral in the package:

- ``KGrid``: spherical product rule (radial Gauss-Legendre or tanh-sinh,
  Gauss-Legendre in cos(theta), midpoint in phi). Weights carry the full
  d^3k = k^2 sin(theta) dk dtheta dphi measure. No node sits at k = 0 or on
  the poles.
- ``CartesianGrid``: uniform n^3 lattice paired with its FFT dual r-grid,
  enumerated row-major with axis order (x, y, z).

Natural units hbar = c = 1 hold throughout, so omega_k = |k|.

Example:
    from src.photon.kgrid import build_spherical_grid, integrate

    grid = build_spherical_grid(64, 16, 32, k_max=12.0)
    value = integrate(grid, np.exp(-grid.k ** 2))   # ~ pi ** 1.5
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, Union

import numpy as np
from scipy.special import expit

from src.core.constants import (
    CENTERING_CELL,
    CENTERING_NODE,
    MIN_AXIS_COUNT,
    MIN_FFT_N,
    TANH_SINH_WINDOW,
)
from src.core.error_handling import InvalidArgumentError
from src.core.utils import deterministic_sum, is_power_of_two

logger = logging.getLogger(__name__)


class RadialRule(Enum):
    """Radial quadrature rules on [0, k_max]."""

    GAUSS_LEGENDRE = "gauss-legendre"
    TANH_SINH = "tanh-sinh"

    @classmethod
    def from_string(cls, rule_str: str) -> "RadialRule":
        """Convert string to RadialRule enum.

        Args:
            rule_str: Rule name or alias ("gl", "legendre", "ts", "de", ...)

        Returns:
            RadialRule enum value

        Raises:
            InvalidArgumentError: If the rule is not recognized
        """
        rule_str = rule_str.lower().strip().replace("_", "-")

        alias_map = {
            "gl": cls.GAUSS_LEGENDRE,
            "gauss": cls.GAUSS_LEGENDRE,
            "legendre": cls.GAUSS_LEGENDRE,
            "ts": cls.TANH_SINH,
            "de": cls.TANH_SINH,
            "double-exponential": cls.TANH_SINH,
        }
        if rule_str in alias_map:
            return alias_map[rule_str]

        for rule in cls:
            if rule.value == rule_str:
                return rule

        raise InvalidArgumentError(
            f"Unknown radial rule: {rule_str}. Valid options: {[r.value for r in cls]}"
        )

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, eq=False)
class KGrid:
    """Spherical product quadrature grid.

    Node arrays are flattened in C order from shape (n_r, n_theta, n_phi).

    Attributes:
        k: Wavenumber per node (> 0)
        theta: Polar angle per node, strictly inside (0, pi)
        phi: Azimuth per node
        weights: Positive weights including k^2 sin(theta) and the angular measure
        k_max: Radial truncation
        radial_rule: Radial rule used
        n_r, n_theta, n_phi: Node counts per axis
        k_nodes, theta_nodes, phi_nodes: 1-D axis nodes
    """

    k: np.ndarray
    theta: np.ndarray
    phi: np.ndarray
    weights: np.ndarray
    k_max: float
    radial_rule: RadialRule
    n_r: int
    n_theta: int
    n_phi: int
    k_nodes: np.ndarray
    theta_nodes: np.ndarray
    phi_nodes: np.ndarray

    @property
    def node_count(self) -> int:
        return self.k.size

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.n_r, self.n_theta, self.n_phi)

    @cached_property
    def kvec(self) -> np.ndarray:
        sin_t = np.sin(self.theta)
        return np.stack(
            [
                self.k * sin_t * np.cos(self.phi),
                self.k * sin_t * np.sin(self.phi),
                self.k * np.cos(self.theta),
            ],
            axis=1,
        )

    @property
    def omega(self) -> np.ndarray:
        return self.k

    @cached_property
    def k_hat(self) -> np.ndarray:
        return self.kvec / self.k[:, None]

    def descriptor(self) -> dict[str, Any]:
        """Serializable description of the grid (embedded in reports)."""
        return {
            "family": "spherical",
            "radial_rule": self.radial_rule.value,
            "n_r": self.n_r,
            "n_theta": self.n_theta,
            "n_phi": self.n_phi,
            "k_max": float(self.k_max),
            "nodes": self.node_count,
        }

    def is_compatible(self, other: object) -> bool:
        """True when ``other`` is the same spherical grid."""
        if other is self:
            return True
        return isinstance(other, KGrid) and self.descriptor() == other.descriptor()

    def scaled(self, factor: float, k_max: float | None = None) -> "KGrid":
        """Rebuild with every node count multiplied by ``factor`` (at least 2 per axis)."""
        return build_spherical_grid(
            max(MIN_AXIS_COUNT, int(math.ceil(self.n_r * factor - 1e-9))),
            max(MIN_AXIS_COUNT, int(math.ceil(self.n_theta * factor - 1e-9))),
            max(MIN_AXIS_COUNT, int(math.ceil(self.n_phi * factor - 1e-9))),
            self.k_max if k_max is None else k_max,
            self.radial_rule,
        )


@dataclass(frozen=True, eq=False)
class CartesianGrid:
    """Uniform Cartesian k-grid and its dual r-grid.

    The k-axis along direction a is ``k_center[a] + (i - offset) * delta_k``
    with offset n/2 for node centering and (n-1)/2 for cell centering. The
    r-axis is ``(j - n/2) * delta_r`` on every axis, so r = 0 is a node.
    Node (i, j, l) has flat index ``(i * n + j) * n + l``.

    Attributes:
        n: Nodes per axis (power of two, >= 8)
        k_max: Half-width of the k-box per axis
        centering: "node" or "cell"
        k_center: Center of the k-box
    """

    n: int
    k_max: float
    centering: str = CENTERING_NODE
    k_center: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self) -> None:
        if not is_power_of_two(self.n) or self.n < MIN_FFT_N:
            raise InvalidArgumentError(
                f"Cartesian n must be a power of two >= {MIN_FFT_N}, got {self.n}"
            )
        if not (np.isfinite(self.k_max) and self.k_max > 0):
            raise InvalidArgumentError(f"k_max must be positive, got {self.k_max}")
        if self.centering not in (CENTERING_NODE, CENTERING_CELL):
            raise InvalidArgumentError(
                f"Unknown centering: {self.centering}. "
                f"Valid options: {[CENTERING_NODE, CENTERING_CELL]}"
            )
        if len(self.k_center) != 3:
            raise InvalidArgumentError("k_center must have three components")
        object.__setattr__(self, "k_center", tuple(float(c) for c in self.k_center))

    @property
    def delta_k(self) -> float:
        return 2.0 * self.k_max / self.n

    @property
    def delta_r(self) -> float:
        return 2.0 * np.pi / (self.n * self.delta_k)

    @property
    def offset(self) -> float:
        return self.n / 2 if self.centering == CENTERING_NODE else (self.n - 1) / 2

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.n, self.n, self.n)

    @property
    def node_count(self) -> int:
        return self.n ** 3

    @property
    def k_cell_volume(self) -> float:
        return self.delta_k ** 3

    @property
    def r_cell_volume(self) -> float:
        return self.delta_r ** 3

    def k_axis(self, axis: int) -> np.ndarray:
        """1-D k nodes along ``axis`` (0 = x, 1 = y, 2 = z)."""
        return self.k_center[axis] + (np.arange(self.n) - self.offset) * self.delta_k

    def r_axis(self) -> np.ndarray:
        """1-D r nodes (identical on every axis)."""
        return (np.arange(self.n) - self.n / 2) * self.delta_r

    @cached_property
    def kvec(self) -> np.ndarray:
        mesh = np.meshgrid(self.k_axis(0), self.k_axis(1), self.k_axis(2), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    @cached_property
    def r_points(self) -> np.ndarray:
        axis = self.r_axis()
        mesh = np.meshgrid(axis, axis, axis, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    @cached_property
    def k(self) -> np.ndarray:
        return np.linalg.norm(self.kvec, axis=1)

    @property
    def omega(self) -> np.ndarray:
        return self.k

    @cached_property
    def theta(self) -> np.ndarray:
        rho = np.hypot(self.kvec[:, 0], self.kvec[:, 1])
        return np.arctan2(rho, self.kvec[:, 2])

    @cached_property
    def phi(self) -> np.ndarray:
        return np.arctan2(self.kvec[:, 1], self.kvec[:, 0])

    @cached_property
    def k_hat(self) -> np.ndarray:
        k_hat = np.zeros_like(self.kvec)
        nonzero = self.k > 0
        k_hat[nonzero] = self.kvec[nonzero] / self.k[nonzero, None]
        k_hat[~nonzero] = (0.0, 0.0, 1.0)
        return k_hat

    @cached_property
    def weights(self) -> np.ndarray:
        return np.full(self.node_count, self.k_cell_volume)

    def descriptor(self) -> dict[str, Any]:
        """Serializable description of the grid (embedded in reports)."""
        return {
            "family": "cartesian",
            "n": self.n,
            "k_max": float(self.k_max),
            "centering": self.centering,
            "k_center": list(self.k_center),
            "delta_k": self.delta_k,
            "delta_r": self.delta_r,
            "nodes": self.node_count,
        }

    def is_compatible(self, other: object) -> bool:
        """True when ``other`` is the same Cartesian grid."""
        if other is self:
            return True
        return isinstance(other, CartesianGrid) and self.descriptor() == other.descriptor()

    def scaled(self, factor: int) -> "CartesianGrid":
        """Same box with ``factor`` times the nodes per axis."""
        return CartesianGrid(self.n * int(factor), self.k_max, self.centering, self.k_center)


Grid = Union[KGrid, CartesianGrid]


def _validate_count(name: str, value: int) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < MIN_AXIS_COUNT:
        raise InvalidArgumentError(f"{name} must be an integer >= {MIN_AXIS_COUNT}, got {value!r}")


def radial_nodes(n_r: int, k_max: float, rule: RadialRule) -> tuple[np.ndarray, np.ndarray]:
    """
    Radial nodes and weights on [0, k_max] (without the k^2 factor).

    Args:
        n_r: Number of nodes
        k_max: Upper limit
        rule: Radial rule

    Returns:
        Tuple (nodes, weights), nodes strictly positive and ascending
    """
    if rule is RadialRule.GAUSS_LEGENDRE:
        x, w = np.polynomial.legendre.leggauss(n_r)
        return 0.5 * k_max * (x + 1.0), 0.5 * k_max * w

    # tanh-sinh: k = k_max * (1 + tanh(u)) / 2 with u = (pi/2) sinh(t)
    t = np.linspace(-TANH_SINH_WINDOW, TANH_SINH_WINDOW, n_r)
    h = 2.0 * TANH_SINH_WINDOW / (n_r - 1)
    u = 0.5 * np.pi * np.sinh(t)
    nodes = k_max * expit(2.0 * u)
    weights = 0.5 * k_max * h * (0.5 * np.pi * np.cosh(t)) / np.cosh(u) ** 2
    return nodes, weights


def build_spherical_grid(
    n_r: int,
    n_theta: int,
    n_phi: int,
    k_max: float,
    radial_rule: RadialRule | str = RadialRule.GAUSS_LEGENDRE,
) -> KGrid:
    """
    Build a spherical product quadrature grid.

    Args:
        n_r: Radial node count (>= 2)
        n_theta: Polar node count, Gauss-Legendre in cos(theta) (>= 2)
        n_phi: Azimuthal midpoint node count (>= 2)
        k_max: Radial truncation (> 0)
        radial_rule: "gauss-legendre" or "tanh-sinh"

    Returns:
        KGrid whose weights integrate 1 to 4 pi k_max^3 / 3

    Raises:
        InvalidArgumentError: For counts below 2 or non-positive k_max

    Example:
        >>> grid = build_spherical_grid(32, 16, 32, k_max=5.0)
        >>> integrate(grid, np.ones(grid.node_count)).real   # 4 pi 125 / 3
        523.598...
    """
    _validate_count("n_r", n_r)
    _validate_count("n_theta", n_theta)
    _validate_count("n_phi", n_phi)
    if not (np.isfinite(k_max) and k_max > 0):
        raise InvalidArgumentError(f"k_max must be positive, got {k_max}")
    if isinstance(radial_rule, str):
        radial_rule = RadialRule.from_string(radial_rule)

    k_nodes, w_r = radial_nodes(n_r, float(k_max), radial_rule)
    mu, w_mu = np.polynomial.legendre.leggauss(n_theta)
    theta_nodes = np.arccos(mu)
    phi_nodes = (np.arange(n_phi) + 0.5) * (2.0 * np.pi / n_phi)
    w_phi = np.full(n_phi, 2.0 * np.pi / n_phi)

    kk, tt, pp = np.meshgrid(k_nodes, theta_nodes, phi_nodes, indexing="ij")
    weights = (
        (w_r * k_nodes ** 2)[:, None, None] * w_mu[None, :, None] * w_phi[None, None, :]
    )

    grid = KGrid(
        k=kk.ravel(),
        theta=tt.ravel(),
        phi=pp.ravel(),
        weights=weights.ravel(),
        k_max=float(k_max),
        radial_rule=radial_rule,
        n_r=int(n_r),
        n_theta=int(n_theta),
        n_phi=int(n_phi),
        k_nodes=k_nodes,
        theta_nodes=theta_nodes,
        phi_nodes=phi_nodes,
    )
    logger.debug(f"Built spherical grid {grid.descriptor()}")
    return grid


def build_cartesian_grid(
    n: int,
    k_max: float,
    centering: str = CENTERING_NODE,
    k_center: tuple[float, float, float] = (0.0, 0.0, 0.0),
) -> CartesianGrid:
    """
    Build a Cartesian k-grid covering [k_center - k_max, k_center + k_max)^3.

    Args:
        n: Nodes per axis (power of two, >= 8)
        k_max: Half-width of the box
        centering: "node" (axis starts at -k_max) or "cell" (no node at k_center)
        k_center: Box center

    Returns:
        CartesianGrid with delta_k = 2 k_max / n and delta_r = 2 pi / (n delta_k)

    Raises:
        InvalidArgumentError: If n is not a power of two >= 8 or k_max <= 0

    Example:
        >>> g = build_cartesian_grid(8, np.pi)
        >>> g.delta_k, g.delta_r
        (0.785..., 1.0)
    """
    grid = CartesianGrid(int(n) if isinstance(n, (int, np.integer)) else n, float(k_max), centering, k_center)
    logger.debug(f"Built Cartesian grid {grid.descriptor()}")
    return grid


def integrate(grid: Grid, samples: np.ndarray) -> complex:
    """
    Quadrature sum of per-node samples.

    Args:
        grid: Spherical or Cartesian grid
        samples: One real or complex value per node

    Returns:
        sum_i weight_i * sample_i, reduced pairwise in node order

    Raises:
        InvalidArgumentError: If the sample count differs from the node count
    """
    samples = np.asarray(samples)
    if samples.shape != (grid.node_count,):
        raise InvalidArgumentError(
            f"Expected {grid.node_count} samples, got array of shape {samples.shape}"
        )
    return complex(deterministic_sum(grid.weights * samples))

"""
Experiment configuration models.

This module defines the Pydantic schema of the TOML experiment files the
CLI reads. Unknown keys are rejected everywhere, so a typo fails the run
with exit code 1 instead of being silently ignored.

Example:
    from src.models.experiment_config import ExperimentConfig

    config = ExperimentConfig.model_validate({
        "grids": {"spherical": {"n_r": 64, "n_theta": 32, "n_phi": 64, "k_max": 12.0}},
        "states": [{"name": "g1", "kind": "gaussian", "k0": [0.0, 0.0, 3.0], "s": 1.5}],
    })
"""

from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from src.core.constants import (
    BOOST_CHECK_TOLERANCE,
    CENTERING_CELL,
    CHECK_FORMS_TOLERANCE,
    DEFAULT_EPSILON_FACTORS,
    DEFAULT_FFT_N,
    DEFAULT_K_MAX,
    DEFAULT_N_PHI,
    DEFAULT_N_R,
    DEFAULT_N_THETA,
    HELICITY_LEAKAGE_TOLERANCE,
    PROBABILITY_TOLERANCE,
    TAIL_SLOPE_HALF_BAND,
)

Vector3 = List[float]


def _check_vector(value: Optional[List[float]]) -> Optional[List[float]]:
    if value is not None and len(value) != 3:
        raise ValueError(f"expected three components, got {len(value)}")
    return value


class SphericalGridConfig(BaseModel):
    """Spherical product grid."""

    n_r: int = Field(DEFAULT_N_R, ge=2, description="Radial nodes")
    n_theta: int = Field(DEFAULT_N_THETA, ge=2, description="Polar nodes")
    n_phi: int = Field(DEFAULT_N_PHI, ge=5, description="Azimuthal nodes")
    k_max: float = Field(DEFAULT_K_MAX, gt=0, description="Radial truncation")
    radial_rule: Literal["gauss-legendre", "tanh-sinh"] = Field(
        "gauss-legendre", description="Radial quadrature rule"
    )

    class Config:
        extra = "forbid"


class CartesianGridConfig(BaseModel):
    """Uniform Cartesian k-grid with its FFT dual."""

    n: int = Field(DEFAULT_FFT_N, ge=8, description="Nodes per axis (power of two)")
    k_max: float = Field(DEFAULT_K_MAX, gt=0, description="Half-width of the k-box")
    centering: Literal["node", "cell"] = Field(CENTERING_CELL, description="Axis centering")
    k_center: Vector3 = Field(default_factory=lambda: [0.0, 0.0, 0.0], description="Box center")

    check_vector = field_validator("k_center")(_check_vector)

    @field_validator("n")
    @classmethod
    def check_power_of_two(cls, value: int) -> int:
        if value & (value - 1):
            raise ValueError(f"n must be a power of two, got {value}")
        return value

    class Config:
        extra = "forbid"


class GridsConfig(BaseModel):
    """Grid definitions; at least one family must be present."""

    spherical: Optional[SphericalGridConfig] = Field(None, description="Spherical grid")
    cartesian: Optional[CartesianGridConfig] = Field(None, description="Cartesian grid")

    @model_validator(mode="after")
    def check_at_least_one(self) -> "GridsConfig":
        if self.spherical is None and self.cartesian is None:
            raise ValueError("define [grids.spherical] and/or [grids.cartesian]")
        return self

    def families(self) -> List[str]:
        return [name for name in ("spherical", "cartesian") if getattr(self, name) is not None]

    class Config:
        extra = "forbid"


class StateConfig(BaseModel):
    """A named bundled state.

    Only the parameters of the chosen kind are read; the rest keep their
    defaults.
    """

    name: str = Field(..., min_length=1, description="Unique state name")
    kind: Literal["gaussian", "two_helicity", "oscillator", "localized", "random"] = Field(
        ..., description="State family"
    )
    alpha: float = Field(0.0, description="Form exponent of the state")
    k0: Vector3 = Field(default_factory=lambda: [0.0, 0.0, 0.0], description="Packet center")
    s: float = Field(1.0, gt=0, description="Packet width")
    helicity: Literal[1, -1] = Field(1, description="Helicity for single-helicity kinds")
    shift: Vector3 = Field(default_factory=lambda: [0.0, 0.0, 0.0], description="exp(i k.a) modulation")
    chi_prime: float = Field(0.0, description="Polarization angle of two_helicity states")
    order: Literal[0, 1] = Field(0, description="Oscillator order")
    r0: Vector3 = Field(default_factory=lambda: [0.0, 0.0, 0.0], description="Localized position")
    t0: float = Field(0.0, description="Localized time")
    chi: Literal["zero", "minus_phi"] = Field("zero", description="Chi convention of localized states")
    seed: Optional[int] = Field(None, ge=0, description="Seed of random states (default: run seed)")
    normalize: bool = Field(True, description="Scale to unit norm (localized states never are)")

    check_vectors = field_validator("k0", "shift", "r0")(_check_vector)

    @field_validator("alpha")
    @classmethod
    def check_alpha(cls, value: float) -> float:
        if value not in (-0.5, 0.0, 0.5):
            raise ValueError(f"alpha must be -0.5, 0 or 0.5, got {value}")
        return value

    class Config:
        extra = "forbid"


class CheckFormsConfig(BaseModel):
    """Parameters of check-forms."""

    pairs: Optional[List[List[str]]] = Field(
        None, description="State-name pairs [bra, ket]; default: every pair incl. self pairs"
    )
    alpha: float = Field(0.5, description="Exponent for the paired forms")
    tolerance: float = Field(CHECK_FORMS_TOLERANCE, gt=0, description="Max relative deviation")
    grids: Optional[List[Literal["spherical", "cartesian"]]] = Field(
        None, description="Grid families to run on (default: all defined)"
    )

    @field_validator("pairs")
    @classmethod
    def check_pair_shape(cls, value: Optional[List[List[str]]]) -> Optional[List[List[str]]]:
        if value is not None and any(len(pair) != 2 for pair in value):
            raise ValueError("every pair must name exactly two states")
        return value

    class Config:
        extra = "forbid"


class BoostCheckConfig(BaseModel):
    """Parameters of boost-check."""

    state: str = Field(..., description="Ket state")
    partner: Optional[str] = Field(None, description="Bra state (default: the ket)")
    rapidities: List[float] = Field(default_factory=lambda: [0.5], min_length=1, description="Rapidities")
    direction: Vector3 = Field(default_factory=lambda: [0.0, 0.0, 1.0], description="Boost direction")
    tolerance: float = Field(BOOST_CHECK_TOLERANCE, gt=0, description="Max invariance defect")
    helicity_tolerance: float = Field(
        HELICITY_LEAKAGE_TOLERANCE, gt=0, description="Max wrong-helicity leakage"
    )
    ladder_levels: int = Field(3, ge=0, description="Refinement rungs (0 disables the ladder)")
    require_ladder_convergence: bool = Field(
        True, description="Fail when a refinement rung does not improve the defect tenfold"
    )
    grid: Literal["spherical", "cartesian"] = Field("spherical", description="Rest-frame grid family")

    check_vector = field_validator("direction")(_check_vector)

    class Config:
        extra = "forbid"


class NumberDensityConfig(BaseModel):
    """Parameters of number-density."""

    state: str = Field(..., description="State to evaluate")
    t: float = Field(0.0, description="Evaluation time")
    chi: Literal["zero", "minus_phi"] = Field("zero", description="Chi convention")
    path: Literal["fft", "quadrature"] = Field("fft", description="Evaluation path")
    grid: Literal["spherical", "cartesian"] = Field("cartesian", description="Grid family")
    points: Optional[List[Vector3]] = Field(None, description="r points for the quadrature path")
    tolerance: float = Field(PROBABILITY_TOLERANCE, gt=0, description="Max |total probability - 1|")
    glauber: bool = Field(True, description="Also report the Glauber density distance")

    @field_validator("points")
    @classmethod
    def check_point_shape(cls, value: Optional[List[List[float]]]) -> Optional[List[List[float]]]:
        if value is not None:
            for point in value:
                _check_vector(point)
        return value

    class Config:
        extra = "forbid"


class RadiiConfig(BaseModel):
    """Logarithmic radius ladder."""

    start: float = Field(5.0, gt=0, description="Smallest radius")
    stop: float = Field(50.0, gt=0, description="Largest radius")
    count: int = Field(16, ge=2, description="Number of radii")

    class Config:
        extra = "forbid"


class TailFitConfig(BaseModel):
    """Parameters of tail-fit."""

    alpha: float = Field(0.5, description="Form exponent of the radial model")
    radii: RadiiConfig = Field(default_factory=RadiiConfig, description="Radii")
    epsilon_factors: List[float] = Field(
        default_factory=lambda: list(DEFAULT_EPSILON_FACTORS), min_length=2, description="Regulator ladder"
    )
    core_radius: float = Field(1.0, gt=0, description="Localization core size")
    expected_slope: Optional[float] = Field(None, description="Default: -(3 + alpha)")
    slope_tolerance: float = Field(TAIL_SLOPE_HALF_BAND, gt=0, description="Allowed slope error")
    controls: List[float] = Field(
        default_factory=lambda: [0.0, -0.5], description="Extra alphas reported for comparison"
    )

    class Config:
        extra = "forbid"


class OutputConfig(BaseModel):
    """Where and what to write."""

    directory: Optional[str] = Field(None, description="Report directory (default: OUTPUT_DIR)")
    export_states: bool = Field(False, description="Write state snapshots as CSV")

    class Config:
        extra = "forbid"


class ExperimentConfig(BaseModel):
    """Top-level experiment file."""

    seed: int = Field(0, ge=0, description="Seed for random states")
    grids: GridsConfig = Field(..., description="Grid definitions")
    states: List[StateConfig] = Field(default_factory=list, description="Named states")
    check_forms: CheckFormsConfig = Field(default_factory=CheckFormsConfig, description="check-forms")
    boost_check: Optional[BoostCheckConfig] = Field(None, description="boost-check")
    number_density: Optional[NumberDensityConfig] = Field(None, description="number-density")
    tail_fit: TailFitConfig = Field(default_factory=TailFitConfig, description="tail-fit")
    output: OutputConfig = Field(default_factory=OutputConfig, description="Output options")

    @model_validator(mode="after")
    def check_unique_names(self) -> "ExperimentConfig":
        names = [state.name for state in self.states]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise ValueError(f"duplicate state names: {duplicates}")
        return self

    def state(self, name: str) -> Optional[StateConfig]:
        return next((state for state in self.states if state.name == name), None)

    class Config:
        extra = "forbid"
        json_schema_extra = {
            "example": {
                "seed": 7,
                "grids": {
                    "spherical": {"n_r": 64, "n_theta": 48, "n_phi": 64, "k_max": 12.0},
                    "cartesian": {"n": 64, "k_max": 8.0, "centering": "cell"},
                },
                "states": [
                    {"name": "g1", "kind": "gaussian", "k0": [0.0, 0.0, 3.0], "s": 1.5},
                    {"name": "g2", "kind": "gaussian", "k0": [0.5, 0.0, 3.0], "s": 1.5},
                ],
                "check_forms": {"tolerance": 1e-9},
                "boost_check": {"state": "g1", "rapidities": [0.25, 0.5, 1.0]},
                "tail_fit": {"alpha": 0.5},
            }
        }

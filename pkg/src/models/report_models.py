"""
Report data models.

Pydantic models for the results of the numerical checks and for the JSON
envelope every CLI command writes.

Example:
    from src.models.report_models import ComplexValue, ScalarProductReport

    report = ScalarProductReport(
        values={"qed": ComplexValue.from_complex(1 + 0j)},
        deviations={},
        max_deviation=0.0,
        scale=1.0,
    )
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class ComplexValue(BaseModel):
    """A complex number split into real and imaginary parts for JSON."""

    re: float = Field(..., description="Real part")
    im: float = Field(..., description="Imaginary part")

    @classmethod
    def from_complex(cls, value: complex) -> "ComplexValue":
        value = complex(value)
        return cls(re=value.real, im=value.imag)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return abs(self.value)


class ScalarProductReport(BaseModel):
    """Scalar product of one state pair evaluated in every available form."""

    values: Dict[str, ComplexValue] = Field(..., description="Value per form name")
    deviations: Dict[str, float] = Field(
        default_factory=dict, description="Relative deviation per form pair 'a|b'"
    )
    max_deviation: float = Field(..., ge=0.0, description="Largest pairwise deviation")
    scale: float = Field(..., description="Cauchy-Schwarz reference scale sqrt(|phi||psi|)")
    alpha: float = Field(0.5, description="Form exponent used for the alpha-pair form")
    grids: List[Dict[str, Any]] = Field(default_factory=list, description="Grid descriptors")

    class Config:
        json_schema_extra = {
            "example": {
                "values": {
                    "invariant": {"re": 1.0, "im": 0.0},
                    "alpha_pair": {"re": 1.0, "im": 0.0},
                    "transverse": {"re": 1.0, "im": 0.0},
                    "qed": {"re": 1.0, "im": 0.0},
                },
                "deviations": {"invariant|qed": 2.1e-15},
                "max_deviation": 2.1e-15,
                "scale": 1.0,
                "alpha": 0.5,
                "grids": [{"family": "spherical", "n_r": 64}],
            }
        }


class RefinementStep(BaseModel):
    """One rung of a grid-refinement ladder."""

    level: int = Field(..., description="Rung index, 0 is the coarsest")
    grid: Dict[str, Any] = Field(..., description="Rest-frame grid descriptor")
    boosted_grid: Dict[str, Any] = Field(..., description="Boosted-frame grid descriptor")
    defect: float = Field(..., description="Invariance defect on this rung")


class BoostReport(BaseModel):
    """Invariance check of the scalar product under one boost."""

    rapidity: float = Field(..., description="Boost rapidity eta")
    direction: List[float] = Field(..., description="Unit boost direction")
    defect: float = Field(..., description="|SP_boosted - SP_rest| / |SP_rest|")
    sp_rest: ComplexValue = Field(..., description="Invariant scalar product in the rest frame")
    sp_boosted: ComplexValue = Field(..., description="Invariant scalar product in the boosted frame")
    grid: Dict[str, Any] = Field(..., description="Rest-frame grid descriptor")
    boosted_grid: Dict[str, Any] = Field(..., description="Boosted-frame grid descriptor")
    refinement: List[RefinementStep] = Field(default_factory=list, description="Refinement ladder")
    refinement_converges: Optional[bool] = Field(
        None, description="Whether each rung improves on the previous one by at least 10x"
    )
    helicity_leakage: Optional[float] = Field(None, description="Wrong-helicity leakage")

    class Config:
        json_schema_extra = {
            "example": {
                "rapidity": 0.5,
                "direction": [0.0, 0.0, 1.0],
                "defect": 3.2e-9,
                "sp_rest": {"re": 1.0, "im": 0.0},
                "sp_boosted": {"re": 1.0000000032, "im": 0.0},
                "grid": {"family": "spherical", "n_r": 64},
                "boosted_grid": {"family": "spherical", "n_r": 106},
                "refinement": [],
                "refinement_converges": None,
                "helicity_leakage": 1.4e-16,
            }
        }


class TailFitReport(BaseModel):
    """Radial falloff fit of the regulated localized-field model."""

    alpha: float = Field(..., description="Form exponent of the radial model")
    radii: List[float] = Field(..., description="Sampled radii")
    epsilons: List[float] = Field(..., description="Regulator ladder, strictly decreasing")
    extrapolated: List[float] = Field(..., description="|F(r)| after epsilon -> 0 extrapolation")
    oracle_max_error: float = Field(
        ..., description="Largest relative quadrature error against the closed form"
    )
    vanishing: bool = Field(False, description="True when the extrapolated tail vanishes")
    slope: Optional[float] = Field(None, description="Fitted log-log slope")
    slope_half_width: Optional[float] = Field(None, description="Confidence half-width of the slope")
    intercept: Optional[float] = Field(None, description="Fitted log-log intercept")
    expected_slope: Optional[float] = Field(None, description="Slope the fit is checked against")
    slope_tolerance: Optional[float] = Field(None, description="Allowed |slope - expected|")

    @property
    def within_tolerance(self) -> bool:
        if self.expected_slope is None:
            return True
        if self.slope is None or self.slope_tolerance is None:
            return False
        return abs(self.slope - self.expected_slope) <= self.slope_tolerance

    class Config:
        json_schema_extra = {
            "example": {
                "alpha": 0.5,
                "radii": [5.0, 50.0],
                "epsilons": [0.1, 0.05, 0.025, 0.0125],
                "extrapolated": [1.2e-3, 3.8e-7],
                "oracle_max_error": 2.0e-15,
                "vanishing": False,
                "slope": -3.5,
                "slope_half_width": 1.0e-12,
                "intercept": -1.06,
                "expected_slope": -3.5,
                "slope_tolerance": 0.1,
            }
        }


class NumberDensityReport(BaseModel):
    """Summary of a number-amplitude evaluation."""

    state: str = Field(..., description="State name")
    t: float = Field(..., description="Evaluation time")
    chi: str = Field(..., description="Chi convention")
    path: str = Field(..., description="Evaluation path (fft or quadrature)")
    points: int = Field(..., description="Number of r points")
    total_probability: Optional[float] = Field(None, description="sum |c|^2 delta_r^3 (fft path)")
    max_density: float = Field(..., description="Largest number density")
    argmax: List[float] = Field(..., description="Position of the largest density")
    first_moment: Optional[List[float]] = Field(None, description="Mean position of the density")
    glauber_distance: Optional[float] = Field(
        None, description="Relative L2 distance to the electric-field density"
    )


class RunMetadata(BaseModel):
    """Timestamps kept out of the deterministic report."""

    command: str = Field(..., description="Command name")
    started_at: str = Field(..., description="UTC start time, ISO 8601")
    finished_at: str = Field(..., description="UTC finish time, ISO 8601")
    duration_seconds: float = Field(..., description="Wall-clock duration")


class CommandReport(BaseModel):
    """JSON envelope written by every CLI command."""

    command: str = Field(..., description="Command name")
    tool: str = Field(..., description="Tool name")
    version: str = Field(..., description="Tool version")
    passed: bool = Field(..., description="Whether every check passed")
    exit_code: int = Field(..., description="Process exit code")
    tolerance: Optional[float] = Field(None, description="Tolerance applied")
    config: Dict[str, Any] = Field(..., description="Resolved experiment configuration")
    grids: List[Dict[str, Any]] = Field(default_factory=list, description="Grid descriptors")
    result: Dict[str, Any] = Field(default_factory=dict, description="Command-specific result")

    class Config:
        json_schema_extra = {
            "example": {
                "command": "check-forms",
                "tool": "photon-numerics",
                "version": "1.0.0",
                "passed": True,
                "exit_code": 0,
                "tolerance": 1e-9,
                "config": {"states": []},
                "grids": [{"family": "spherical"}],
                "result": {"pairs": []},
            }
        }


class CommandResult(BaseModel):
    """What a command handler hands back to the orchestrator."""

    passed: bool = Field(..., description="Whether every check passed")
    tolerance: Optional[float] = Field(None, description="Tolerance applied")
    grids: List[Dict[str, Any]] = Field(default_factory=list, description="Grid descriptors")
    result: Dict[str, Any] = Field(default_factory=dict, description="Command-specific result")
    tables: Dict[str, Dict[str, Any]] = Field(
        default_factory=dict, description="CSV tables by file stem, as column -> values"
    )
    failures: List[str] = Field(default_factory=list, description="Human-readable failed checks")

    class Config:
        arbitrary_types_allowed = True

"""
Core application constants.

This module defines repository-wide constants: default grid sizes,
per-command tolerances, the CLI exit-code contract and the regulator
ladder used by the field-tail analysis.

Example:
    from src.core.constants import DEFAULT_N_R, EXIT_TOLERANCE_BREACH

    grid = build_spherical_grid(DEFAULT_N_R, DEFAULT_N_THETA, DEFAULT_N_PHI, 12.0)
    if deviation > tolerance:
        return EXIT_TOLERANCE_BREACH
"""

# Tool identity
TOOL_NAME = "photon-numerics"
"""Name embedded in every report envelope."""

TOOL_VERSION = "1.0.0"
"""Version embedded in every report envelope."""

# Spherical grid defaults
DEFAULT_N_R = 64
"""Default number of radial nodes for smooth states."""

DEFAULT_N_THETA = 32
"""Default number of polar (Gauss-Legendre in cos theta) nodes."""

DEFAULT_N_PHI = 64
"""Default number of azimuthal midpoint nodes."""

DEFAULT_K_MAX = 12.0
"""Default radial truncation for the bundled Gaussian-decaying states."""

MIN_AXIS_COUNT = 2
"""Smallest node count accepted on any spherical axis."""

TANH_SINH_WINDOW = 3.2
"""Half-width of the tanh-sinh abscissa window in the t variable."""

# Cartesian grid defaults
DEFAULT_FFT_N = 64
"""Default number of Cartesian nodes per axis."""

MIN_FFT_N = 8
"""Smallest power-of-two FFT size accepted."""

CENTERING_NODE = "node"
"""Cartesian centering with a node at k_center (axis starts at k_center - k_max)."""

CENTERING_CELL = "cell"
"""Cartesian centering with k_center at a cell midpoint (no node at k_center)."""

# Command tolerances
CHECK_FORMS_TOLERANCE = 1e-9
"""Default maximum relative deviation between scalar-product forms."""

BOOST_CHECK_TOLERANCE = 1e-6
"""Default maximum Lorentz invariance defect."""

HELICITY_LEAKAGE_TOLERANCE = 1e-10
"""Default maximum wrong-helicity leakage after a boost."""

PROBABILITY_TOLERANCE = 1e-12
"""Default tolerance on total probability for number-density runs."""

TAIL_SLOPE_HALF_BAND = 0.1
"""Accepted half-width around the expected tail slope."""

ILL_CONDITIONED_THRESHOLD = 1e-13
"""Reference scalar products below this magnitude cannot anchor a relative defect."""

MAX_SUPPORTED_RAPIDITY = 2.0
"""Largest |rapidity| supported at default grid resolution."""

# Tail model
DEFAULT_EPSILON_FACTORS = (0.1, 0.05, 0.025, 0.0125)
"""Regulator ladder in units of 1/core_radius."""

CORE_RADIUS_MULTIPLE = 5.0
"""Radii must lie at least this many core radii away from the origin."""

TAIL_LAGUERRE_ORDER = 64
"""Number of generalized Gauss-Laguerre nodes on the rotated contour."""

VANISHING_TAIL_RATIO = 1e-8
"""Extrapolated tails below this fraction of their natural scale count as zero."""

TAIL_ORACLE_TOLERANCE = 1e-10
"""Largest relative error of the tail quadrature against its closed form."""

# Finite differences
STENCIL_WIDTH = 5
"""Points per stencil for the 4th-order spherical gradient."""

# Exit codes
EXIT_OK = 0
"""All checks passed."""

EXIT_CONFIG_ERROR = 1
"""Usage, configuration or precondition error."""

EXIT_TOLERANCE_BREACH = 2
"""A check ran but exceeded its tolerance."""

# Output files
REPORT_SUFFIX = ".json"
"""Suffix of the machine-readable report of a command."""

SIDECAR_SUFFIX = ".meta.json"
"""Suffix of the timestamp sidecar written next to every report."""

CSV_FLOAT_FORMAT = "%.17g"
"""Float format for CSV data files (round-trips doubles exactly)."""

# Logging
DEFAULT_LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
"""Default log message format."""

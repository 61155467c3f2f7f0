# Configuration for the bag-and-whisker plot

import os

# Multiple testing defaults (level q per error criterion)
DEFAULT_LEVELS = {
    "fwer": 0.1,
    "fdr": 0.01,
    "pfer": 0.5,
}
CLASSIC_FACTOR = 3.0

# Depth
DEFAULT_DIRECTIONS = 360
EXACT_DEPTH_LIMIT = 5000  # exact sweep up to this many points, directional above
DEPTH_MEDIAN_RULE = "mean"  # "mean" (centre of gravity) or "coordinatewise"
ANGLE_TOL = 1e-12

# Minimum Covariance Determinant search
DEFAULT_SEED = 20240601
MCD_EXHAUSTIVE_LIMIT = 200_000
MCD_N_STARTS = 500
MCD_INITIAL_CSTEPS = 2
MCD_N_BEST = 10
MCD_CONVERGENCE_TOL = 1e-12
MCD_MAX_CSTEPS = 100
MCD_TIE_TOL = 1e-12
SINGULAR_TOL = 1e-12
REWEIGHT_QUANTILE = 0.975

# Geometry
CONTAINMENT_TOL = 1e-9
DEGENERATE_BAG_EPS = 1e-9
BAG_WIDEN_T = 0.05  # first widening step towards the next shallower depth hull
MIN_POINTS = 4

# SVG styling
CANVAS_WIDTH = 800
CANVAS_HEIGHT = 600
CANVAS_MARGIN = 0.08
BAG_COLOR = "#4f81bd"
BAG_OPACITY = 0.6
FENCE_COLOR = "#1f3a5f"
LOOP_COLOR = "#333333"
WHISKER_COLOR = "#1f3a5f"
WHISKER_ALPHA = (0.05, 0.9)
POINT_COLOR = "#222222"
POINT_RADIUS = 3.0
OUTLIER_COLOR = "#c0392b"
MEDIAN_COLOR = "#d62728"
COORD_DIGITS = 6

# JSON document
SCHEMA_VERSION = "1.0"

# Environment
SEED_ENV_VAR = "BAGWHISKER_SEED"


def get_seed(cli_seed=None):
    """
    Resolve the MCD random seed.

    The BAGWHISKER_SEED environment variable wins, then the command-line
    value, then DEFAULT_SEED.

    Args:
        cli_seed: Seed given on the command line, or None

    Returns:
        int: The seed to use
    """
    env_value = os.environ.get(SEED_ENV_VAR)
    if env_value is not None and env_value.strip():
        try:
            return int(env_value.strip())
        except ValueError:
            from .errors import InputError
            raise InputError(
                f"{SEED_ENV_VAR} must be an integer, got {env_value!r}",
                module="cli",
                context={"env": SEED_ENV_VAR},
            )

    if cli_seed is not None:
        return int(cli_seed)

    return DEFAULT_SEED

"""Data models for the bag-and-whisker plot."""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from .. import config
from ..errors import DomainError


class Point2(NamedTuple):
    """A single bivariate observation in data units."""
    x: float
    y: float


def _frozen_array(values, dtype=float) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Dataset:
    """Validated bivariate observations. Row i keeps index i through the pipeline."""
    points: np.ndarray

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float).reshape(-1, 2)
        object.__setattr__(self, "points", _frozen_array(points))

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    def point(self, index: int) -> Point2:
        x, y = self.points[index]
        return Point2(float(x), float(y))

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """
    Convex polygon with counterclockwise vertices.

    Fewer than three vertices stand for the degenerate forms: a single
    point or a segment.
    """
    vertices: np.ndarray

    def __post_init__(self):
        vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 2)
        object.__setattr__(self, "vertices", _frozen_array(vertices))

    @property
    def degenerate(self) -> bool:
        return len(self.vertices) < 3

    @property
    def kind(self) -> str:
        return {1: "point", 2: "segment"}.get(len(self.vertices), "polygon")

    @property
    def diameter(self) -> float:
        if len(self.vertices) < 2:
            return 0.0
        diffs = self.vertices[:, None, :] - self.vertices[None, :, :]
        return float(np.sqrt((diffs ** 2).sum(axis=2)).max())

    @property
    def area(self) -> float:
        if self.degenerate:
            return 0.0
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return float(0.5 * (np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y)))

    @property
    def centroid(self) -> Point2:
        if self.degenerate:
            x, y = self.vertices.mean(axis=0)
            return Point2(float(x), float(y))
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        x1, y1 = np.roll(x, -1), np.roll(y, -1)
        cross = x * y1 - x1 * y
        area = cross.sum() / 2.0
        cx = ((x + x1) * cross).sum() / (6.0 * area)
        cy = ((y + y1) * cross).sum() / (6.0 * area)
        return Point2(float(cx), float(cy))


class Containment(Enum):
    INSIDE = "inside"
    ON_BOUNDARY = "on_boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class DepthMode:
    """Exact angular sweep, or the directional approximation with K directions."""
    kind: str = "exact"
    directions: int = config.DEFAULT_DIRECTIONS

    @classmethod
    def exact(cls) -> "DepthMode":
        return cls("exact")

    @classmethod
    def approx(cls, directions: int = config.DEFAULT_DIRECTIONS) -> "DepthMode":
        return cls("approx", int(directions))

    @classmethod
    def auto(cls, n: int, directions: int = config.DEFAULT_DIRECTIONS) -> "DepthMode":
        if n <= config.EXACT_DEPTH_LIMIT:
            return cls.exact()
        return cls.approx(directions)

    @property
    def label(self) -> str:
        if self.kind == "exact":
            return "exact"
        return f"approx:{self.directions}"


@dataclass(frozen=True, eq=False)
class DepthProfile:
    """Halfspace depth of every data point, the maximum depth and the depth median."""
    depths: np.ndarray
    max_depth: int
    deepest_set: Tuple[int, ...]
    median: Point2
    mode: DepthMode = field(default_factory=DepthMode.exact)
    median_rule: str = config.DEPTH_MEDIAN_RULE


@dataclass(frozen=True)
class Bag:
    """
    The central bag and how it was obtained.

    center is the ray origin of the radial interpolation, None for a plain
    depth hull. widened_to is the depth level whose hull the bag was grown
    towards to get the depth median strictly inside, None when not needed.
    """
    polygon: ConvexPolygon
    inner_k: int
    interpolation_t: Optional[float]
    contained_count: int
    degenerate: bool = False
    center: Optional[Point2] = None
    widened_to: Optional[int] = None


@dataclass(frozen=True)
class McdConfig:
    """Search parameters for the MCD subset search."""
    exhaustive_limit: int = config.MCD_EXHAUSTIVE_LIMIT
    n_starts: int = config.MCD_N_STARTS
    initial_csteps: int = config.MCD_INITIAL_CSTEPS
    n_best: int = config.MCD_N_BEST
    tol: float = config.MCD_CONVERGENCE_TOL
    max_csteps: int = config.MCD_MAX_CSTEPS
    seed: int = config.DEFAULT_SEED


@dataclass(frozen=True, eq=False)
class McdRaw:
    """Raw MCD: the minimum-determinant h-subset with its mean and covariance."""
    subset: Tuple[int, ...]
    mean: np.ndarray
    covariance: np.ndarray
    determinant: float
    exhaustive: bool


@dataclass(frozen=True, eq=False)
class RobustEstimate:
    """Robust location (depth median) and reweighted MCD scatter."""
    location: Point2
    scatter: np.ndarray
    h: int
    raw_subset: Tuple[int, ...]
    raw_determinant: float
    reweighted_count: int
    raw_location: Optional[np.ndarray] = None
    raw_scatter: Optional[np.ndarray] = None
    consistency: float = 1.0
    weights: Optional[np.ndarray] = None


class Method(Enum):
    FWER_HOLM = "fwer"
    FDR_BH = "fdr"
    PFER_BONFERRONI = "pfer"

    @property
    def default_level(self) -> float:
        return config.DEFAULT_LEVELS[self.value]


@dataclass(frozen=True, eq=False)
class TestOutcome:
    """Per-point distances and p-values with the adjusted threshold and rejections."""
    __test__ = False  # not a pytest class

    d2: np.ndarray
    pvalues: np.ndarray
    method: Method
    q: float
    t_adj: float
    d2_adj: float
    rejected: Tuple[int, ...]


class PointClass(Enum):
    IN_BAG = "in_bag"
    OUTER = "outer"
    OUTLIER = "outlier"


class Whisker(NamedTuple):
    """Segment from the bag boundary (start) to an outer point (end)."""
    index: int
    start: Point2
    end: Point2


@dataclass(frozen=True, eq=False)
class BagplotModel:
    """Everything the bag-and-whisker plot is built from."""
    data: Dataset
    profile: DepthProfile
    bag: Bag
    estimate: RobustEstimate
    outcome: TestOutcome
    lambda_stat: float
    lambda_data: float
    lambda_: float
    fence: ConvexPolygon
    classification: Tuple[PointClass, ...]
    whiskers: Tuple[Whisker, ...]

    @property
    def outliers(self) -> List[int]:
        return [i for i, c in enumerate(self.classification) if c is PointClass.OUTLIER]

    @property
    def label(self) -> str:
        return self.outcome.method.value


@dataclass(frozen=True, eq=False)
class ClassicModel:
    """Fixed-factor bagplot with the convex-hull loop."""
    data: Dataset
    profile: DepthProfile
    bag: Bag
    loop_hull: ConvexPolygon
    fence3: ConvexPolygon
    outliers: Tuple[int, ...]
    factor: float = config.CLASSIC_FACTOR

    @property
    def label(self) -> str:
        return "classic"


@dataclass(frozen=True, eq=False)
class PlotScene:
    """
    Exactly what the SVG figure draws, in data coordinates.

    boundary is the fence for adaptive models and the loop hull for
    classic ones; boundary_kind says which.
    """
    label: str
    points: np.ndarray
    median: Point2
    bag: np.ndarray
    boundary: np.ndarray
    boundary_kind: str
    classification: Tuple[PointClass, ...]
    whiskers: Tuple[Whisker, ...] = ()

    def __post_init__(self):
        for name in ("points", "bag", "boundary"):
            object.__setattr__(self, name,
                               _frozen_array(np.asarray(getattr(self, name), dtype=float).reshape(-1, 2)))

    @property
    def outliers(self) -> List[int]:
        return [i for i, c in enumerate(self.classification) if c is PointClass.OUTLIER]


@dataclass(frozen=True)
class RenderStyle:
    """Visual settings for the SVG figure."""
    width: int = config.CANVAS_WIDTH
    height: int = config.CANVAS_HEIGHT
    margin: float = config.CANVAS_MARGIN
    bag_color: str = config.BAG_COLOR
    bag_opacity: float = config.BAG_OPACITY
    fence_color: str = config.FENCE_COLOR
    fence_dash: str = "6 4"
    loop_color: str = config.LOOP_COLOR
    whisker_color: str = config.WHISKER_COLOR
    whisker_alpha: Tuple[float, float] = config.WHISKER_ALPHA
    point_color: str = config.POINT_COLOR
    point_radius: float = config.POINT_RADIUS
    outlier_color: str = config.OUTLIER_COLOR
    median_color: str = config.MEDIAN_COLOR
    title: str = "Bag-and-whisker plot"

    def __post_init__(self):
        start, end = self.whisker_alpha
        if not 0.0 <= start < end <= 1.0 or not 0.0 <= self.bag_opacity <= 1.0:
            raise DomainError("opacities must lie in [0, 1] with the whisker ramp increasing",
                              module="render",
                              context={"whisker_alpha": list(self.whisker_alpha),
                                       "bag_opacity": self.bag_opacity})


@dataclass(frozen=True)
class MixtureSpec:
    """Two-component bivariate normal mixture with unit variances."""
    n: int
    contamination: float = 0.05
    mu0: Tuple[float, float] = (100.0, 300.0)
    mu1: Tuple[float, float] = (103.0, 298.0)
    rho: float = 0.0
    seed: int = config.DEFAULT_SEED


@dataclass(frozen=True, eq=False)
class SimSample:
    """Simulated dataset with its latent component labels."""
    dataset: Dataset
    labels: np.ndarray


@dataclass
class RunConfig:
    """One command-line run."""
    input_path: str
    x_column: object = 0
    y_column: object = 1
    method: str = "fwer"
    level: Optional[float] = None
    depth_mode: str = "auto"
    directions: int = config.DEFAULT_DIRECTIONS
    seed: int = config.DEFAULT_SEED
    output_format: str = "svg"
    output_path: Optional[str] = None
    compare: bool = False

    @property
    def resolved_level(self) -> Optional[float]:
        if self.method == "classic":
            return None
        if self.level is not None:
            return self.level
        return config.DEFAULT_LEVELS[self.method]

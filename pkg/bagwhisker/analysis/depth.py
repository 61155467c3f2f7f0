"""Halfspace (Tukey) depth: exact angular sweep, directional approximation, depth median."""

import logging
import math
from typing import Optional

import numpy as np

from .. import config
from ..data.models import ConvexPolygon, Dataset, DepthMode, DepthProfile, Point2
from ..errors import BadDirectionCount, DomainError, EmptyRegion
from .geometry import convex_hull

logger = logging.getLogger(__name__)

MEDIAN_RULES = ("mean", "coordinatewise")


def _sweep_depth(theta: np.ndarray, points: np.ndarray) -> int:
    """
    Exact closed-halfplane depth of theta by sorting directions around it.

    The depth equals the coincident count plus the other points minus the
    largest number of them inside an open half-circle of directions.
    Directions within ANGLE_TOL of each other count as the same direction.
    """
    diffs = points - theta
    coincident = np.all(diffs == 0.0, axis=1)
    n_coincident = int(coincident.sum())
    others = diffs[~coincident]
    m = len(others)
    if m == 0:
        return n_coincident

    # + 0.0 folds -0.0 so that the angle of (-x, 0) is always +pi
    angles = np.sort(np.arctan2(others[:, 1] + 0.0, others[:, 0] + 0.0))
    extended = np.concatenate((angles, angles + 2.0 * math.pi))
    tol = config.ANGLE_TOL
    lo = np.searchsorted(extended, angles - tol, side="left")
    hi = np.searchsorted(extended, angles + math.pi - tol, side="left")
    best_open = int((hi - lo).max())
    return n_coincident + m - best_open


def _directional_depths(points: np.ndarray, queries: np.ndarray, directions: int) -> np.ndarray:
    """
    Directional depth of every query point against the data.

    For each direction u_k the data projections are sorted once and both
    closed sides are counted with binary searches. Projections are formed
    elementwise so a query equal to a data point projects bit-identically.
    """
    n = len(points)
    depth = np.full(len(queries), n, dtype=np.int64)
    for k in range(directions):
        angle = math.pi * k / directions
        c, s = math.cos(angle), math.sin(angle)
        projected = np.sort(points[:, 0] * c + points[:, 1] * s)
        q = queries[:, 0] * c + queries[:, 1] * s
        at_least = n - np.searchsorted(projected, q, side="left")
        at_most = np.searchsorted(projected, q, side="right")
        np.minimum(depth, np.minimum(at_least, at_most), out=depth)
    return depth


def halfspace_depth_exact(theta, data: Dataset) -> int:
    """
    Exact halfspace depth of theta.

    Args:
        theta: Query point
        data: Dataset

    Returns:
        Minimum number of data points in a closed halfplane whose boundary
        passes through theta
    """
    return _sweep_depth(np.asarray(theta, dtype=float), data.points)


def halfspace_depth_approx(theta, data: Dataset, directions: int = config.DEFAULT_DIRECTIONS) -> int:
    """
    Halfspace depth over K equispaced directions (an upper bound of the exact depth).

    Args:
        theta: Query point
        data: Dataset
        directions: Number of directions K >= 2

    Returns:
        The directional depth
    """
    _check_directions(directions)
    query = np.asarray(theta, dtype=float).reshape(1, 2)
    return int(_directional_depths(data.points, query, directions)[0])


def _check_directions(directions: int):
    if int(directions) < 2:
        raise BadDirectionCount(f"need at least 2 directions, got {directions}",
                                module="depth", context={"directions": directions})


def depth_profile(data: Dataset, mode: Optional[DepthMode] = None,
                  median_rule: str = config.DEPTH_MEDIAN_RULE) -> DepthProfile:
    """
    Depth of every data point at itself, the maximum depth and the depth median.

    Args:
        data: Dataset
        mode: DepthMode; chosen from the dataset size when None
        median_rule: "mean" for the centre of gravity of the deepest points,
            "coordinatewise" for their coordinate-wise median

    Returns:
        DepthProfile
    """
    if mode is None:
        mode = DepthMode.auto(data.n)
    if median_rule not in MEDIAN_RULES:
        raise DomainError(f"unknown depth median rule {median_rule!r}", module="depth",
                          context={"median_rule": median_rule})

    points = data.points
    if mode.kind == "exact":
        depths = np.array([_sweep_depth(p, points) for p in points], dtype=np.int64)
    else:
        _check_directions(mode.directions)
        depths = _directional_depths(points, points, mode.directions)

    max_depth = int(depths.max())
    deepest = np.flatnonzero(depths == max_depth)
    deepest_points = points[deepest]

    if median_rule == "mean":
        mx, my = deepest_points.mean(axis=0)
    else:
        if len(deepest) >= 3:
            logger.warning("Depth median uses the coordinate-wise rule over %d deepest points",
                           len(deepest))
        mx, my = np.median(deepest_points, axis=0)

    depths.setflags(write=False)
    logger.debug("Depth profile (%s): max depth %d attained by %d points",
                 mode.label, max_depth, len(deepest))
    return DepthProfile(
        depths=depths,
        max_depth=max_depth,
        deepest_set=tuple(int(i) for i in deepest),
        median=Point2(float(mx), float(my)),
        mode=mode,
        median_rule=median_rule,
    )


def depth_region(data: Dataset, profile: DepthProfile, k: int) -> ConvexPolygon:
    """
    Convex hull of the data points with depth >= k.

    Args:
        data: Dataset
        profile: Its DepthProfile
        k: Depth level >= 1

    Returns:
        ConvexPolygon (possibly degenerate)
    """
    members = data.points[np.asarray(profile.depths) >= k]
    if len(members) == 0:
        raise EmptyRegion(f"no data point has depth >= {k}", module="depth",
                          context={"k": k, "max_depth": profile.max_depth})
    return convex_hull(members)

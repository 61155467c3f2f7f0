"""Adaptive inflation factor, fence, point classification and the classic fixed-factor model."""

import logging
import math
from typing import Iterable, List

import numpy as np

from .. import config
from ..data.models import (Bag, BagplotModel, ClassicModel, Containment, ConvexPolygon, Dataset,
                           DepthProfile, Point2, PointClass, RobustEstimate, TestOutcome, Whisker)
from ..errors import CenterNotInterior, ZeroMedian
from .geometry import containment, convex_hull, exit_parameter, scale_polygon, strictly_inside

logger = logging.getLogger(__name__)


def lambda_stat(d2_adj: float, d2) -> float:
    """
    Statistical inflation factor sqrt(d2_adj / median(d2)).

    Args:
        d2_adj: Critical squared distance
        d2: Squared distances of all points

    Returns:
        lambda_stat
    """
    median = float(np.median(np.asarray(d2, dtype=float)))
    if not median > 0.0:
        raise ZeroMedian("median squared distance is zero; more than half the points sit on the centre",
                         module="fence", context={"median": median})
    return math.sqrt(d2_adj / median)


def _ray_ratio(z: np.ndarray, mu: np.ndarray, polygon: ConvexPolygon) -> float:
    """||z - mu|| / ||b - mu|| with b where the ray mu -> z leaves polygon."""
    u = z - mu
    if not np.any(u):
        return 0.0
    return 1.0 / exit_parameter(mu, u, polygon)


def _boundary_point(z: np.ndarray, mu: np.ndarray, polygon: ConvexPolygon) -> Point2:
    s = exit_parameter(mu, z - mu, polygon)
    x, y = mu + s * (z - mu)
    return Point2(float(x), float(y))


def lambda_data(data: Dataset, non_rejected: Iterable[int], bag: Bag, mu) -> float:
    """
    Smallest magnification of the bag about mu that encloses every non-rejected point.

    Args:
        data: Dataset
        non_rejected: Indices of the points that were not rejected
        bag: Bag
        mu: Robust centre, strictly inside the bag

    Returns:
        max ||z_i - mu|| / ||b_i - mu|| over the non-rejected points, 0 when there are none
    """
    mu = np.asarray(mu, dtype=float)
    if not strictly_inside(mu, bag.polygon):
        raise CenterNotInterior("robust centre is not strictly inside the bag", module="fence",
                                context={"center": mu.tolist()})
    ratios = [_ray_ratio(data.points[i], mu, bag.polygon) for i in non_rejected]
    return max(ratios, default=0.0)


def _classify(data: Dataset, bag: ConvexPolygon, fence: ConvexPolygon) -> List[PointClass]:
    classes = []
    for z in data.points:
        if containment(z, bag) is not Containment.OUTSIDE:
            classes.append(PointClass.IN_BAG)
        elif containment(z, fence) is Containment.OUTSIDE:
            classes.append(PointClass.OUTLIER)
        else:
            classes.append(PointClass.OUTER)
    return classes


def build_model(data: Dataset, profile: DepthProfile, bag: Bag, estimate: RobustEstimate,
                outcome: TestOutcome) -> BagplotModel:
    """
    Assemble the bag-and-whisker model.

    lambda = max(lambda_stat, lambda_data, 1) and the fence is the bag
    scaled by lambda about the robust centre. A point is an outlier when it
    lies outside the fence, an outer point when it lies between bag and
    fence, and in the bag otherwise.

    Args:
        data: Dataset
        profile: DepthProfile
        bag: Bag
        estimate: RobustEstimate
        outcome: TestOutcome

    Returns:
        BagplotModel
    """
    mu = np.asarray(estimate.location, dtype=float)
    rejected = set(outcome.rejected)
    non_rejected = [i for i in range(data.n) if i not in rejected]

    l_stat = lambda_stat(outcome.d2_adj, outcome.d2)
    l_data = lambda_data(data, non_rejected, bag, mu)
    lam = max(l_stat, l_data, 1.0)
    fence = scale_polygon(bag.polygon, mu, lam)

    classification = _classify(data, bag.polygon, fence)
    for i in non_rejected:
        assert classification[i] is not PointClass.OUTLIER, \
            f"non-rejected point {i} falls outside the fence"

    whiskers = tuple(
        Whisker(i, _boundary_point(data.points[i], mu, bag.polygon), data.point(i))
        for i, c in enumerate(classification) if c is PointClass.OUTER
    )
    logger.debug("lambda_stat=%.6g lambda_data=%.6g lambda=%.6g", l_stat, l_data, lam)
    return BagplotModel(
        data=data,
        profile=profile,
        bag=bag,
        estimate=estimate,
        outcome=outcome,
        lambda_stat=l_stat,
        lambda_data=l_data,
        lambda_=lam,
        fence=fence,
        classification=tuple(classification),
        whiskers=whiskers,
    )


def classic_model(data: Dataset, profile: DepthProfile, bag: Bag,
                  factor: float = config.CLASSIC_FACTOR) -> ClassicModel:
    """
    Classic bagplot: the bag inflated by a fixed factor, and the loop hull of the rest.

    Args:
        data: Dataset
        profile: DepthProfile
        bag: Bag
        factor: Inflation factor, 3 by default

    Returns:
        ClassicModel
    """
    fence3 = scale_polygon(bag.polygon, profile.median, factor)
    outliers = tuple(i for i, z in enumerate(data.points)
                     if containment(z, fence3) is Containment.OUTSIDE)
    excluded = set(outliers)
    keep = [i for i in range(data.n) if i not in excluded]
    loop_hull = convex_hull(data.points[keep]) if keep else bag.polygon
    return ClassicModel(data=data, profile=profile, bag=bag, loop_hull=loop_hull, fence3=fence3,
                        outliers=outliers, factor=factor)

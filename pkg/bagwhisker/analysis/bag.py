"""Construction of the central bag."""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from .. import config
from ..data.models import Bag, Containment, ConvexPolygon, Dataset, DepthProfile, Point2
from ..errors import DegenerateBag
from .depth import depth_region
from .geometry import (containment, convex_hull, radial_interpolate, scale_polygon,
                       strictly_inside)

logger = logging.getLogger(__name__)


def construct_bag(data: Dataset, profile: DepthProfile) -> Bag:
    """
    Build the bag holding about half of the observations, deepest first.

    With target = ceil(n/2) and k* the largest depth level whose region
    D_k* still holds target points, the bag is hull(D_k*) when that count
    is exact or no deeper level exists. Otherwise it is interpolated
    between hull(D_k*+1) and hull(D_k*) in proportion to the count deficit.

    The depth median must end up strictly inside the bag. When it sits on
    the boundary (a deepest point that is a hull vertex, or the midpoint of
    tied deepest points on a hull edge) the bag is widened towards the
    shallower depth hulls; see _widen.

    Args:
        data: Dataset
        profile: DepthProfile computed on data

    Returns:
        Bag
    """
    depths = np.asarray(profile.depths)
    target = math.ceil(data.n / 2)
    sizes = {k: int((depths >= k).sum()) for k in range(1, profile.max_depth + 1)}
    k_star = max(k for k, size in sizes.items() if size >= target)
    median = np.asarray(profile.median, dtype=float)

    outer = depth_region(data, profile, k_star)
    if outer.degenerate:
        polygon = _thicken(outer, data)
        logger.warning("Bag region at depth %d is a %s; thickened to a sliver polygon",
                       k_star, outer.kind)
        return _finish(data, profile, polygon, k_star, None, None, widen_from=k_star - 1,
                       degenerate=True)

    inner_size = sizes.get(k_star + 1, 0)
    if sizes[k_star] == target or inner_size == 0:
        logger.debug("Bag is the depth-%d hull (%d points, target %d)", k_star, sizes[k_star], target)
        return _finish(data, profile, outer, k_star, None, None, widen_from=k_star - 1)

    inner = depth_region(data, profile, k_star + 1)
    t = (target - inner_size) / (sizes[k_star] - inner_size)

    center = median
    if not inner.degenerate and not strictly_inside(center, inner):
        center = np.asarray(inner.centroid, dtype=float)
        logger.warning("Depth median lies on the inner depth contour; interpolating about "
                       "its centroid (%.6g, %.6g)", center[0], center[1])
    if not strictly_inside(center, outer):
        logger.warning("Interpolation centre is not interior to the depth-%d hull; "
                       "starting from the hull itself", k_star)
        return _finish(data, profile, outer, k_star, None, None, widen_from=k_star - 1)

    polygon = radial_interpolate(inner, outer, t, center)
    logger.debug("Bag interpolated between depth %d (%d pts) and %d (%d pts), t=%.6g",
                 k_star + 1, inner_size, k_star, sizes[k_star], t)
    return _finish(data, profile, polygon, k_star, t, Point2(float(center[0]), float(center[1])),
                   widen_from=k_star)


def _widen(data: Dataset, profile: DepthProfile, polygon: ConvexPolygon,
           k_from: int) -> Tuple[ConvexPolygon, Optional[int]]:
    """
    Grow the bag until the depth median is strictly inside it.

    For k = k_from, k_from - 1, ..., 1 the bag is first pushed a fraction
    BAG_WIDEN_T of the way towards hull(D_k) about its own centroid, then
    replaced by hull(D_k) itself. The result always contains the starting
    polygon. If even hull(D_1) leaves the median on its boundary, that hull
    is scaled by 1 + DEGENERATE_BAG_EPS about its centroid.

    Returns:
        (polygon, depth level widened to, or None when nothing changed)
    """
    median = profile.median
    if strictly_inside(median, polygon):
        return polygon, None

    for k in range(k_from, 0, -1):
        wider = depth_region(data, profile, k)
        if wider.degenerate:
            continue
        candidate = radial_interpolate(polygon, wider, config.BAG_WIDEN_T, polygon.centroid)
        if strictly_inside(median, candidate):
            return candidate, k
        polygon = wider
        if strictly_inside(median, polygon):
            return polygon, k

    logger.warning("Depth median lies on the hull of all observations; bag scaled out by %g",
                   config.DEGENERATE_BAG_EPS)
    return scale_polygon(polygon, polygon.centroid, 1.0 + config.DEGENERATE_BAG_EPS), 1


def _finish(data: Dataset, profile: DepthProfile, polygon: ConvexPolygon, k_star: int,
            t: Optional[float], center: Optional[Point2], widen_from: int,
            degenerate: bool = False) -> Bag:
    polygon, widened_to = _widen(data, profile, polygon, widen_from)
    if widened_to is not None:
        logger.warning("Depth median was on the bag boundary; bag widened towards the "
                       "depth-%d hull", widened_to)
    contained = sum(1 for p in data.points if containment(p, polygon) is not Containment.OUTSIDE)
    return Bag(
        polygon=polygon,
        inner_k=k_star,
        interpolation_t=t,
        contained_count=contained,
        degenerate=degenerate,
        center=center,
        widened_to=widened_to,
    )


def _thicken(region: ConvexPolygon, data: Dataset) -> ConvexPolygon:
    """Sliver polygon around a degenerate region, eps = DEGENERATE_BAG_EPS * data diameter."""
    diameter = convex_hull(data.points).diameter
    if diameter == 0.0:
        raise DegenerateBag("all observations coincide; no bag can be drawn", module="bag",
                            context={"n": data.n})
    eps = config.DEGENERATE_BAG_EPS * diameter

    if region.kind == "point":
        x, y = region.vertices[0]
        return ConvexPolygon(np.array([
            [x - eps, y - eps], [x + eps, y - eps], [x + eps, y + eps], [x - eps, y + eps],
        ]))

    a, b = region.vertices
    d = b - a
    along = d / np.hypot(*d)
    normal = np.array([-along[1], along[0]])
    # extended past both ends so the segment endpoints are interior too
    a, b = a - eps * along, b + eps * along
    return ConvexPolygon(np.array([a - eps * normal, b - eps * normal,
                                   b + eps * normal, a + eps * normal]))

"""Convex polygon primitives for the bag, fence, whiskers and loop."""

import logging
from typing import Iterable

import numpy as np

from .. import config
from ..data.models import Containment, ConvexPolygon, Point2
from ..errors import (CenterNotInterior, DegeneratePolygon, DomainError, EmptyInput,
                      NonPositiveFactor, NotNested, ZeroDirection)

logger = logging.getLogger(__name__)

COLLINEAR_TOL = 1e-12


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _turns_left(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> bool:
    """True when o -> a -> b is a strict left turn beyond the collinearity tolerance."""
    cross = _cross(o, a, b)
    scale = np.hypot(*(a - o)) * np.hypot(*(b - o))
    return cross > COLLINEAR_TOL * scale


def convex_hull(points: Iterable) -> ConvexPolygon:
    """
    Convex hull by Andrew's monotone chain.

    Points are sorted lexicographically by (x, y). Collinear points on hull
    edges are dropped. All-collinear input gives a segment, a single
    location gives a point.

    Args:
        points: Iterable of (x, y) pairs

    Returns:
        ConvexPolygon with counterclockwise vertices
    """
    pts = np.asarray(list(points) if not isinstance(points, np.ndarray) else points,
                     dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise EmptyInput("convex hull of an empty point set", module="geometry")

    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]
    keep = np.ones(len(pts), dtype=bool)
    keep[1:] = np.any(pts[1:] != pts[:-1], axis=1)
    pts = pts[keep]

    if len(pts) == 1:
        return ConvexPolygon(pts)

    lower = []
    for p in pts:
        while len(lower) >= 2 and not _turns_left(lower[-2], lower[-1], p):
            lower.pop()
        lower.append(p)

    upper = []
    for p in pts[::-1]:
        while len(upper) >= 2 and not _turns_left(upper[-2], upper[-1], p):
            upper.pop()
        upper.append(p)

    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        # all collinear: keep the two extremes
        return ConvexPolygon(np.array([pts[0], pts[-1]]))
    return ConvexPolygon(np.array(hull))


def _edges(poly: ConvexPolygon):
    a = poly.vertices
    d = np.roll(a, -1, axis=0) - a
    return a, d


def _inside_distances(p: np.ndarray, poly: ConvexPolygon) -> np.ndarray:
    """Signed distance of p to every edge line, positive on the inner side."""
    a, d = _edges(poly)
    lengths = np.hypot(d[:, 0], d[:, 1])
    cross = d[:, 0] * (p[1] - a[:, 1]) - d[:, 1] * (p[0] - a[:, 0])
    return cross / lengths


def _segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    d = b - a
    denom = float(np.dot(d, d))
    if denom == 0.0:
        return float(np.hypot(*(p - a)))
    s = min(max(float(np.dot(p - a, d)) / denom, 0.0), 1.0)
    return float(np.hypot(*(p - (a + s * d))))


def _boundary_distance(p: np.ndarray, poly: ConvexPolygon) -> float:
    a = poly.vertices
    b = np.roll(a, -1, axis=0)
    return min(_segment_distance(p, a[i], b[i]) for i in range(len(a)))


def strictly_inside(p, poly: ConvexPolygon) -> bool:
    """Exact interior test without tolerance."""
    if poly.degenerate:
        return False
    return bool(np.all(_inside_distances(np.asarray(p, dtype=float), poly) > 0.0))


def containment(p, poly: ConvexPolygon, tol: float = config.CONTAINMENT_TOL) -> Containment:
    """
    Classify a point against a convex polygon.

    Points within tol * diameter of the boundary are ON_BOUNDARY.

    Args:
        p: The query point
        poly: Non-degenerate convex polygon
        tol: Boundary tolerance relative to the polygon diameter

    Returns:
        Containment.INSIDE, ON_BOUNDARY or OUTSIDE
    """
    if poly.degenerate:
        raise DegeneratePolygon(
            f"containment against a degenerate {poly.kind}", module="geometry"
        )

    p = np.asarray(p, dtype=float)
    band = tol * poly.diameter
    distances = _inside_distances(p, poly)

    if np.all(distances > 0.0):
        if distances.min() <= band:
            return Containment.ON_BOUNDARY
        return Containment.INSIDE

    if _boundary_distance(p, poly) <= band:
        return Containment.ON_BOUNDARY
    return Containment.OUTSIDE


def exit_parameter(center, direction, poly: ConvexPolygon) -> float:
    """
    Largest s >= 0 with center + s * direction still in poly.

    Degenerate polygons are handled too: along rays that miss a point or
    segment the answer is 0.
    """
    c = np.asarray(center, dtype=float)
    u = np.asarray(direction, dtype=float)

    if poly.kind == "point":
        return 0.0

    if poly.kind == "segment":
        a, b = poly.vertices
        d = b - a
        if abs(d[0] * u[1] - d[1] * u[0]) > COLLINEAR_TOL * np.hypot(*d) * np.hypot(*u):
            return 0.0
        uu = float(np.dot(u, u))
        return max(0.0, float(np.dot(a - c, u)) / uu, float(np.dot(b - c, u)) / uu)

    a, d = _edges(poly)
    normals = np.column_stack((d[:, 1], -d[:, 0]))
    rate = normals @ u
    slack = -np.einsum("ij,ij->i", normals, c - a)
    leaving = rate > 0.0
    if not np.any(leaving):
        return float("inf")
    return float(np.min(slack[leaving] / rate[leaving]))


def ray_boundary_intersection(center, through, poly: ConvexPolygon) -> Point2:
    """
    Point where the ray from center through `through` crosses the boundary.

    Args:
        center: Ray origin, strictly inside poly
        through: Any other point on the ray
        poly: Non-degenerate convex polygon

    Returns:
        The boundary point
    """
    if poly.degenerate:
        raise DegeneratePolygon(f"ray intersection with a degenerate {poly.kind}",
                                module="geometry")

    c = np.asarray(center, dtype=float)
    u = np.asarray(through, dtype=float) - c
    if not np.any(u):
        raise ZeroDirection("ray direction is zero (through == center)", module="geometry",
                            context={"center": c.tolist()})
    if not strictly_inside(c, poly):
        raise CenterNotInterior("ray origin is not strictly inside the polygon",
                                module="geometry", context={"center": c.tolist()})

    s = exit_parameter(c, u, poly)
    x, y = c + s * u
    return Point2(float(x), float(y))


def scale_polygon(poly: ConvexPolygon, center, factor: float) -> ConvexPolygon:
    """Map every vertex v to center + factor * (v - center)."""
    if not factor > 0:
        raise NonPositiveFactor(f"scale factor must be positive, got {factor}",
                                module="geometry", context={"factor": factor})
    c = np.asarray(center, dtype=float)
    return ConvexPolygon(c + factor * (poly.vertices - c))


def radial_interpolate(inner: ConvexPolygon, outer: ConvexPolygon, t: float,
                       center) -> ConvexPolygon:
    """
    Contour between two nested convex polygons, measured along rays from center.

    The rays pass through every vertex of both polygons. On each ray the
    boundary radius is r_inner + t * (r_outer - r_inner), and the resulting
    points are re-hulled. The inner polygon may be a point or a segment
    through the centre; its radius is 0 along rays that miss it.

    Args:
        inner: Inner polygon containing center
        outer: Non-degenerate outer polygon with center strictly inside
        t: Interpolation weight in [0, 1]
        center: Ray origin

    Returns:
        The interpolated ConvexPolygon
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"interpolation weight must lie in [0, 1], got {t}",
                          module="geometry", context={"t": t})

    c = np.asarray(center, dtype=float)
    if outer.degenerate or not strictly_inside(c, outer):
        raise CenterNotInterior("centre is not strictly inside the outer polygon",
                                module="geometry", context={"center": c.tolist()})

    if inner.degenerate:
        if _degenerate_distance(c, inner) > config.CONTAINMENT_TOL * max(outer.diameter, 1.0):
            raise CenterNotInterior("centre does not lie on the degenerate inner polygon",
                                    module="geometry", context={"center": c.tolist()})
    elif not strictly_inside(c, inner):
        raise CenterNotInterior("centre is not strictly inside the inner polygon",
                                module="geometry", context={"center": c.tolist()})

    for v in inner.vertices:
        if containment(v, outer) is Containment.OUTSIDE:
            raise NotNested("inner polygon is not contained in the outer polygon",
                            module="geometry", context={"vertex": v.tolist()})

    if t == 0.0:
        return inner
    if t == 1.0:
        return outer

    directions = np.vstack((inner.vertices, outer.vertices)) - c
    directions = directions[np.any(directions != 0.0, axis=1)]

    boundary = []
    for u in directions:
        r_inner = exit_parameter(c, u, inner)
        r_outer = exit_parameter(c, u, outer)
        boundary.append(c + (r_inner + t * (r_outer - r_inner)) * u)

    return convex_hull(np.array(boundary))


def _degenerate_distance(p: np.ndarray, poly: ConvexPolygon) -> float:
    if poly.kind == "point":
        return float(np.hypot(*(p - poly.vertices[0])))
    return _segment_distance(p, poly.vertices[0], poly.vertices[1])

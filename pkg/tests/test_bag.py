import math

import numpy as np
import pytest

from bagwhisker.analysis.bag import construct_bag
from bagwhisker.analysis.depth import depth_profile, depth_region
from bagwhisker.analysis.geometry import containment, convex_hull, strictly_inside
from bagwhisker.data.models import Containment, Dataset, DepthMode
from bagwhisker.errors import DegenerateBag

from .conftest import MEDIAN_ON_HULL


def _bag(points):
    data = Dataset(np.asarray(points, dtype=float))
    profile = depth_profile(data, DepthMode.exact())
    return data, profile, construct_bag(data, profile)


def _inside_or_on(poly, points):
    return all(containment(p, poly) is not Containment.OUTSIDE for p in points)


def test_toy_bag_is_depth_two_hull(toy):
    profile = depth_profile(toy, DepthMode.exact())
    bag = construct_bag(toy, profile)
    assert sorted(map(tuple, bag.polygon.vertices)) == [(5, 4), (7, 7), (9, 4)]
    assert bag.inner_k == 2
    assert bag.interpolation_t is None
    assert bag.contained_count == 4
    assert not bag.degenerate


def test_single_contour_uses_hull_of_all():
    _, profile, bag = _bag([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert profile.max_depth == 1
    assert len(bag.polygon.vertices) == 4
    assert bag.contained_count == 4


def test_circle_with_repeated_centre():
    angles = np.linspace(0, 2 * np.pi, 12, endpoint=False)
    ring = np.column_stack((np.cos(angles), np.sin(angles)))
    data, profile, bag = _bag(np.vstack((ring, [[0, 0]] * 3)))
    assert _inside_or_on(convex_hull(data.points), bag.polygon.vertices)
    assert strictly_inside(profile.median, bag.polygon)
    assert bag.interpolation_t == pytest.approx(5 / 12)
    assert bag.contained_count == 3


@pytest.mark.parametrize("seed", range(8))
def test_interpolated_bag_invariants(seed):
    rng = np.random.default_rng(seed)
    data, profile, bag = _bag(rng.standard_normal((int(rng.integers(30, 120)), 2)))
    k = bag.inner_k
    outer = depth_region(data, profile, k)
    size_k = int((profile.depths >= k).sum())

    assert strictly_inside(profile.median, bag.polygon)
    if bag.widened_to is not None:
        return
    assert bag.contained_count <= size_k
    if bag.interpolation_t is None:
        assert bag.contained_count >= math.ceil(data.n / 2)
    else:
        assert bag.contained_count >= int((profile.depths > k).sum())
    assert _inside_or_on(outer, bag.polygon.vertices)
    if bag.interpolation_t is not None:
        assert 0.0 < bag.interpolation_t < 1.0
        inner = depth_region(data, profile, k + 1)
        assert _inside_or_on(bag.polygon, inner.vertices)


def test_collinear_deepest_points_are_thickened():
    data, profile, bag = _bag([(0, 0), (1, 0), (2, 0), (3, 0)])
    assert bag.degenerate
    assert not bag.polygon.degenerate
    assert 0 < bag.polygon.area < 1e-6
    assert strictly_inside(profile.median, bag.polygon)


def test_coincident_points_cannot_form_a_bag():
    with pytest.raises(DegenerateBag):
        _bag([(1, 1)] * 4)


def test_bag_is_widened_when_median_is_a_hull_vertex():
    data, profile, bag = _bag(MEDIAN_ON_HULL)
    depth_hull = depth_region(data, profile, bag.inner_k)
    assert profile.deepest_set == (0,)
    assert containment(profile.median, depth_hull) is Containment.ON_BOUNDARY
    assert bag.widened_to is not None
    assert strictly_inside(profile.median, bag.polygon)
    assert _inside_or_on(bag.polygon, depth_hull.vertices)


def test_median_is_interior_on_integer_grids():
    rng = np.random.default_rng(2024)
    checked = 0
    for _ in range(150):
        points = rng.integers(0, 6, size=(int(rng.integers(6, 25)), 2)).astype(float)
        if convex_hull(points).degenerate:
            continue
        data, profile, bag = _bag(points)
        assert strictly_inside(profile.median, bag.polygon)
        if profile.max_depth > bag.inner_k:
            inner = depth_region(data, profile, bag.inner_k + 1)
            assert _inside_or_on(bag.polygon, inner.vertices)
        checked += 1
    assert checked > 100


def test_widening_step_stays_inside_next_hull():
    data, profile, bag = _bag(MEDIAN_ON_HULL)
    assert _inside_or_on(depth_region(data, profile, bag.widened_to), bag.polygon.vertices)


def test_tied_collinear_deepest_points():
    data, profile, bag = _bag([(0, 0), (0, 0), (0, 0), (1, 1), (1, 1), (1, 1), (5, 9)])
    assert bag.degenerate
    assert strictly_inside(profile.median, bag.polygon)

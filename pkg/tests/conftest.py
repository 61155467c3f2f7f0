"""Shared fixtures: the eight-point worked example and seeded random data."""

import numpy as np
import pytest

from bagwhisker.analysis.calculator import BagplotCalculator
from bagwhisker.data.models import Dataset, DepthMode

TOY_POINTS = [(7, 5), (7, 7), (9, 4), (5, 4), (14, 9), (0, 9), (7, -3), (19, 20)]
TOY_CSV = "x,y\n" + "".join(f"{x},{y}\n" for x, y in TOY_POINTS)
# deepest point is a vertex of its depth hull
MEDIAN_ON_HULL = [(1.5121, 1.1672), (3.8946, 1.7374), (0.4987, 1.6255), (2.0736, 0.484),
                  (0.6477, 0.6818), (0.5448, 1.4174), (2.767, 6.6351), (3.3025, 2.779),
                  (3.1368, 3.8011), (0.6861, 2.0009)]


@pytest.fixture
def toy():
    return Dataset(np.array(TOY_POINTS, dtype=float))


@pytest.fixture
def toy_csv(tmp_path):
    path = tmp_path / "toy.csv"
    path.write_text(TOY_CSV, encoding="utf-8")
    return path


@pytest.fixture
def toy_calculator():
    return BagplotCalculator(depth_mode=DepthMode.exact())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

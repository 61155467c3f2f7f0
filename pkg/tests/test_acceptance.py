"""Monte-Carlo checks on the simulation designs. Run with `pytest -m slow`."""

import numpy as np
import pytest

from bagwhisker.analysis.calculator import BagplotCalculator
from bagwhisker.analysis.geometry import containment
from bagwhisker.data.models import Containment, Dataset, DepthMode, Method, MixtureSpec
from bagwhisker.data.sim import gen_correlated_mixture, gen_lognormal, gen_mixture, gen_normal

pytestmark = pytest.mark.slow

DESIGNS = {
    "mixture": lambda seed: gen_mixture(MixtureSpec(n=500, seed=seed)).dataset,
    "correlated": lambda seed: gen_correlated_mixture(500, seed=seed).dataset,
    "lognormal": lambda seed: gen_lognormal(500, seed=seed),
    "small-normal": lambda seed: gen_normal(8 + seed % 18, seed=seed),
    "small-lognormal": lambda seed: gen_lognormal(8 + seed % 18, seed=seed),
    # rounded to a coarse grid so ties and collinear triples are common
    "small-grid": lambda seed: Dataset(np.round(3 * gen_normal(8 + seed % 18, seed=seed).points)),
}


def test_classic_fence_outlier_fraction():
    data = gen_normal(100_000, seed=2024)
    model = BagplotCalculator(depth_mode=DepthMode.approx(360)).calculate_classic(data)
    fraction = len(model.outliers) / data.n
    assert 0.0012 <= fraction <= 0.0028


@pytest.mark.parametrize("design", sorted(DESIGNS))
@pytest.mark.parametrize("seed", range(20))
def test_non_rejected_points_stay_inside_fence(design, seed):
    data = DESIGNS[design](seed)
    calculator = BagplotCalculator(depth_mode=DepthMode.exact())
    for method in Method:
        model = calculator.calculate_model(data, method)
        rejected = set(model.outcome.rejected)
        for i in range(data.n):
            if i not in rejected:
                assert containment(data.points[i], model.fence) is not Containment.OUTSIDE
        assert all(containment(v, model.fence) is not Containment.OUTSIDE
                   for v in model.bag.polygon.vertices)


def test_error_rates_on_clean_data():
    pfer_flags = []
    fwer_any = []
    for seed in range(50):
        data = gen_normal(5000, seed=seed)
        calculator = BagplotCalculator(depth_mode=DepthMode.approx(360))
        pfer_flags.append(len(calculator.calculate_model(data, Method.PFER_BONFERRONI).outliers))
        fwer_any.append(len(calculator.calculate_model(data, Method.FWER_HOLM).outliers) > 0)
    assert np.mean(pfer_flags) <= 1.5
    assert np.mean(fwer_any) <= 0.4

"""End-to-end bag-and-whisker calculation."""

import logging
from collections import Counter
from typing import List, Optional, Union

from .. import config
from ..data.models import (Bag, BagplotModel, ClassicModel, Dataset, DepthMode, DepthProfile,
                           McdConfig, Method, PointClass, RobustEstimate)
from .bag import construct_bag
from .depth import depth_profile
from .fence import build_model, classic_model
from .inference import mahalanobis_sq_all, test_outliers
from .robust_scatter import robust_estimate

logger = logging.getLogger(__name__)

COMPARISON_METHODS = (Method.FWER_HOLM, Method.FDR_BH, Method.PFER_BONFERRONI)


class BagplotCalculator:
    """Runs depth, bag, robust scatter, testing and fence for one dataset at a time."""

    def __init__(self, depth_mode: Optional[DepthMode] = None,
                 median_rule: str = config.DEPTH_MEDIAN_RULE,
                 search: Optional[McdConfig] = None):
        """
        Initialise the calculator.

        Args:
            depth_mode: DepthMode; chosen from the dataset size when None
            median_rule: Depth median rule, "mean" or "coordinatewise"
            search: MCD search parameters
        """
        self.depth_mode = depth_mode
        self.median_rule = median_rule
        self.search = search or McdConfig()
        self._data = None
        self._profile = None
        self._bag = None
        self._estimate = None

    def _prepare(self, data: Dataset):
        """Depth profile and bag, computed once per dataset."""
        if self._data is not data:
            self._data = data
            self._estimate = None
            mode = self.depth_mode or DepthMode.auto(data.n)
            self._profile = depth_profile(data, mode, self.median_rule)
            self._bag = construct_bag(data, self._profile)
        return self._profile, self._bag

    def _robust(self, data: Dataset) -> RobustEstimate:
        profile, _ = self._prepare(data)
        if self._estimate is None:
            self._estimate = robust_estimate(data, profile.median, search=self.search)
        return self._estimate

    def profile(self, data: Dataset) -> DepthProfile:
        return self._prepare(data)[0]

    def bag(self, data: Dataset) -> Bag:
        return self._prepare(data)[1]

    def calculate_model(self, data: Dataset, method: Union[Method, str] = Method.FWER_HOLM,
                        level: Optional[float] = None) -> BagplotModel:
        """
        Calculate the bag-and-whisker model under one error criterion.

        Args:
            data: Dataset
            method: Method or its value ("fwer", "fdr", "pfer")
            level: Level q; the method's default when None

        Returns:
            BagplotModel
        """
        method = Method(method)
        q = method.default_level if level is None else level
        profile, bag = self._prepare(data)
        estimate = self._robust(data)

        d2 = mahalanobis_sq_all(data.points, estimate.location, estimate.scatter)
        outcome = test_outliers(d2, method, q)
        model = build_model(data, profile, bag, estimate, outcome)
        logger.info(summarize(model))
        return model

    def calculate_classic(self, data: Dataset, factor: float = config.CLASSIC_FACTOR) -> ClassicModel:
        """Calculate the classic bagplot with a fixed inflation factor."""
        profile, bag = self._prepare(data)
        model = classic_model(data, profile, bag, factor)
        logger.info("classic (factor %g): %d of %d points outside the fence",
                    factor, len(model.outliers), data.n)
        return model

    def calculate_comparison(self, data: Dataset) -> List[Union[ClassicModel, BagplotModel]]:
        """
        Classic model followed by the FWER, FDR and PFER models at their default levels.

        Returns:
            List of four models in panel order
        """
        models: List[Union[ClassicModel, BagplotModel]] = [self.calculate_classic(data)]
        for method in COMPARISON_METHODS:
            models.append(self.calculate_model(data, method))
        return models


def summarize(model: BagplotModel) -> str:
    """One-paragraph run summary."""
    counts = Counter(model.classification)
    outcome = model.outcome
    return (
        f"{outcome.method.value} at q={outcome.q:g}: "
        f"{counts[PointClass.IN_BAG]} in bag, {counts[PointClass.OUTER]} outer, "
        f"{counts[PointClass.OUTLIER]} outliers of {model.data.n}; "
        f"{len(outcome.rejected)} rejected, t_adj={outcome.t_adj:.6g}, "
        f"lambda_stat={model.lambda_stat:.6g}, lambda_data={model.lambda_data:.6g}, "
        f"lambda={model.lambda_:.6g}"
    )

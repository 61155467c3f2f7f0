"""Minimum Covariance Determinant scatter: exhaustive search, FAST-MCD and reweighting."""

import itertools
import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from .. import config
from ..data.models import Dataset, McdConfig, McdRaw, Point2, RobustEstimate
from ..errors import BadSubsetSize, SingularCovariance, SingularSubset, TooFewWeighted
from .inference import chi2_cdf, chi2_quantile, mahalanobis_sq_all

logger = logging.getLogger(__name__)

P = 2
ENUMERATION_CHUNK = 20_000


def default_subset_size(n: int) -> int:
    """floor((n + p + 1) / 2) for p = 2."""
    return (n + P + 1) // 2


def _mean_cov(points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    mean = points.mean(axis=0)
    cov = np.cov(points, rowvar=False, ddof=1)
    return mean, cov


def _det(cov: np.ndarray) -> float:
    return float(cov[0, 0] * cov[1, 1] - cov[0, 1] * cov[1, 0])


def _is_singular(cov: np.ndarray) -> bool:
    scale = (float(cov[0, 0] + cov[1, 1]) / 2.0) ** 2
    return not scale > 0.0 or _det(cov) <= config.SINGULAR_TOL * scale


def c_step(data: Dataset, mean, cov, h: int) -> Tuple[Tuple[int, ...], np.ndarray, np.ndarray]:
    """
    One concentration step.

    Keeps the h points with the smallest Mahalanobis distances under the
    current estimate and refits mean and covariance on them. Ties in
    distance are broken by index.

    Args:
        data: Dataset
        mean: Current centre
        cov: Current covariance, nonsingular
        h: Subset size

    Returns:
        (sorted subset indices, mean, covariance with denominator h - 1)
    """
    cov = np.asarray(cov, dtype=float)
    if _is_singular(cov):
        raise SingularCovariance("C-step started from a singular covariance", module="robust_scatter",
                                 context={"determinant": _det(cov)})
    d2 = mahalanobis_sq_all(data.points, mean, cov)
    subset = np.sort(np.argsort(d2, kind="stable")[:h])
    new_mean, new_cov = _mean_cov(data.points[subset])
    return tuple(int(i) for i in subset), new_mean, new_cov


def mcd_raw(data: Dataset, h: Optional[int] = None, search: Optional[McdConfig] = None) -> McdRaw:
    """
    Raw Minimum Covariance Determinant estimate.

    All C(n, h) subsets are enumerated when there are at most
    search.exhaustive_limit of them. Otherwise FAST-MCD runs from random
    3-point starts.

    Args:
        data: Dataset
        h: Subset size, 3 <= h <= n; floor((n + 3) / 2) when None
        search: McdConfig with search parameters and seed

    Returns:
        McdRaw
    """
    search = search or McdConfig()
    n = data.n
    if h is None:
        h = default_subset_size(n)
    if not P + 1 <= h <= n:
        raise BadSubsetSize(f"subset size must satisfy 3 <= h <= n, got h={h}, n={n}",
                            module="robust_scatter", context={"h": h, "n": n})

    if math.comb(n, h) <= search.exhaustive_limit:
        raw = _exhaustive(data, h)
    else:
        raw = _fast_mcd(data, h, search)

    if _is_singular(raw.covariance):
        raise SingularSubset("minimum-determinant subset has a singular covariance",
                             module="robust_scatter",
                             context={"h": h, "subset": list(raw.subset)})
    logger.debug("MCD (%s) h=%d: det=%.6g", "exhaustive" if raw.exhaustive else "fast",
                 h, raw.determinant)
    return raw


def _exhaustive(data: Dataset, h: int) -> McdRaw:
    """Determinant of every h-subset, in lexicographic order; first of the tied minima wins."""
    points = data.points
    combos = itertools.combinations(range(data.n), h)
    dets: List[np.ndarray] = []
    while True:
        chunk = np.array(list(itertools.islice(combos, ENUMERATION_CHUNK)), dtype=np.int64)
        if len(chunk) == 0:
            break
        sub = points[chunk]
        dev = sub - sub.mean(axis=1, keepdims=True)
        sxx = (dev[..., 0] ** 2).sum(axis=1)
        syy = (dev[..., 1] ** 2).sum(axis=1)
        sxy = (dev[..., 0] * dev[..., 1]).sum(axis=1)
        dets.append((sxx * syy - sxy * sxy) / (h - 1) ** 2)

    all_dets = np.concatenate(dets)
    best = float(all_dets.min())
    position = int(np.flatnonzero(all_dets <= best + config.MCD_TIE_TOL * abs(best))[0])
    subset = next(itertools.islice(itertools.combinations(range(data.n), h), position, None))
    mean, cov = _mean_cov(points[list(subset)])
    return McdRaw(subset=tuple(subset), mean=mean, covariance=cov, determinant=_det(cov),
                  exhaustive=True)


def _start_estimate(data: Dataset, rng: np.random.Generator):
    """Mean and covariance of a random 3-point start, grown until nonsingular."""
    order = rng.permutation(data.n)
    size = P + 1
    while size <= data.n:
        mean, cov = _mean_cov(data.points[order[:size]])
        if not _is_singular(cov):
            return mean, cov
        size += 1
    return None


def _concentrate(data: Dataset, h: int, mean, cov, steps: int, tol: float):
    """Run up to `steps` C-steps, stopping early once the determinant stalls."""
    subset, mean, cov = c_step(data, mean, cov, h)
    det = _det(cov)
    for _ in range(steps - 1):
        if _is_singular(cov):
            break
        new_subset, new_mean, new_cov = c_step(data, mean, cov, h)
        new_det = _det(new_cov)
        assert new_det <= det * (1.0 + 1e-9) + 1e-300, "C-step increased the determinant"
        converged = new_subset == subset or det - new_det <= tol * abs(det)
        subset, mean, cov, det = new_subset, new_mean, new_cov, new_det
        if converged:
            break
    return det, subset, mean, cov


def _fast_mcd(data: Dataset, h: int, search: McdConfig) -> McdRaw:
    rng = np.random.default_rng(search.seed)
    candidates = []
    for _ in range(search.n_starts):
        start = _start_estimate(data, rng)
        if start is None:
            continue
        try:
            candidates.append(_concentrate(data, h, *start, steps=search.initial_csteps,
                                           tol=search.tol))
        except SingularCovariance:
            continue

    if not candidates:
        raise SingularSubset("no nonsingular start subset found; data are collinear",
                             module="robust_scatter", context={"n": data.n, "h": h})

    candidates.sort(key=lambda c: (c[0], c[1]))
    refined = []
    for det, subset, mean, cov in candidates[:search.n_best]:
        if _is_singular(cov):
            refined.append((det, subset, mean, cov))
            continue
        refined.append(_concentrate(data, h, mean, cov, steps=search.max_csteps, tol=search.tol))

    best = min(c[0] for c in refined)
    tied = [c for c in refined if c[0] <= best + config.MCD_TIE_TOL * abs(best)]
    det, subset, mean, cov = min(tied, key=lambda c: c[1])
    logger.debug("FAST-MCD: %d usable starts, best det %.6g", len(candidates), det)
    return McdRaw(subset=subset, mean=mean, covariance=cov, determinant=det, exhaustive=False)


def consistency_factor(alpha: float, p: int = P) -> float:
    """
    Factor making the h-subset covariance consistent at the normal model.

    c = alpha / F_{chi2, p+2}(q_alpha), q_alpha the alpha-quantile of chi2_p.
    """
    if alpha >= 1.0:
        return 1.0
    q = chi2_quantile(alpha, p)
    return alpha / chi2_cdf(q, p + 2)


def mcd_reweighted(data: Dataset, raw: McdRaw, location) -> RobustEstimate:
    """
    One-step reweighted MCD scatter.

    Distances are taken against the raw mean and consistency-scaled raw
    covariance. The 0.975 chi-square cutoff is calibrated by the empirical
    h/n quantile of those distances, which makes it independent of the
    scalar applied to the raw covariance. The scatter is the plain sample
    covariance of the retained points.

    The cutoff can sit very close to a point. On the eight-point example
    with depth median (7, 5) the extreme point (19, 20) has d2 = 20.859
    against a cutoff of 20.856, so it is dropped by a margin of about 0.003.

    Args:
        data: Dataset
        raw: McdRaw
        location: Depth median, passed through as the estimate's location

    Returns:
        RobustEstimate
    """
    n = data.n
    h = len(raw.subset)
    alpha = h / n
    factor = consistency_factor(alpha, P)
    raw_scatter = factor * np.asarray(raw.covariance)

    d2 = mahalanobis_sq_all(data.points, raw.mean, raw_scatter)
    cutoff = chi2_quantile(config.REWEIGHT_QUANTILE, P)
    if alpha < 1.0:
        cutoff *= float(np.quantile(d2, alpha)) / chi2_quantile(alpha, P)
    weights = d2 <= cutoff

    kept = int(weights.sum())
    if kept < P + 1:
        raise TooFewWeighted(f"only {kept} points survive reweighting", module="robust_scatter",
                             context={"kept": kept, "cutoff": cutoff})

    scatter = np.cov(data.points[weights], rowvar=False, ddof=1)
    scatter = 0.5 * (scatter + scatter.T)
    logger.debug("Reweighting kept %d of %d points (cutoff %.6g, c=%.6g)", kept, n, cutoff, factor)

    for array in (scatter, raw_scatter, weights):
        array.setflags(write=False)
    x, y = location
    return RobustEstimate(
        location=Point2(float(x), float(y)),
        scatter=scatter,
        h=h,
        raw_subset=raw.subset,
        raw_determinant=raw.determinant,
        reweighted_count=kept,
        raw_location=np.asarray(raw.mean),
        raw_scatter=raw_scatter,
        consistency=factor,
        weights=weights,
    )


def robust_estimate(data: Dataset, location, h: Optional[int] = None,
                    search: Optional[McdConfig] = None) -> RobustEstimate:
    """Raw MCD followed by reweighting."""
    return mcd_reweighted(data, mcd_raw(data, h, search), location)

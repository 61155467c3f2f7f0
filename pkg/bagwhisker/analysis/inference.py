"""Mahalanobis distances, chi-square functions, p-values and multiple-testing thresholds."""

import logging
import math
from typing import Sequence, Tuple

import numpy as np
from scipy import special
from scipy.stats import chi2
from statsmodels.stats.multitest import multipletests

from ..data.models import Method, TestOutcome
from ..errors import BadLevel, DomainError, SingularMatrix

logger = logging.getLogger(__name__)

SMALLEST_PVALUE = np.finfo(float).tiny


def _inverse_2x2(sigma) -> Tuple[float, float, float]:
    """Entries (a, b, d) of the inverse of a symmetric 2x2 matrix."""
    s = np.asarray(sigma, dtype=float)
    a, b, d = s[0, 0], 0.5 * (s[0, 1] + s[1, 0]), s[1, 1]
    det = a * d - b * b
    if not det > 0.0 or not a > 0.0:
        raise SingularMatrix("scatter matrix is not positive definite", module="inference",
                             context={"determinant": float(det)})
    return d / det, -b / det, a / det


def mahalanobis_sq(z, mu, sigma) -> float:
    """
    Squared Mahalanobis distance of z from mu under sigma.

    Args:
        z: Point
        mu: Centre
        sigma: 2x2 symmetric positive-definite matrix

    Returns:
        (z - mu)' sigma^-1 (z - mu)
    """
    ia, ib, id_ = _inverse_2x2(sigma)
    dx, dy = np.asarray(z, dtype=float) - np.asarray(mu, dtype=float)
    return float(max(ia * dx * dx + 2.0 * ib * dx * dy + id_ * dy * dy, 0.0))


def mahalanobis_sq_all(points: np.ndarray, mu, sigma) -> np.ndarray:
    """Vectorised mahalanobis_sq over the rows of points."""
    ia, ib, id_ = _inverse_2x2(sigma)
    diffs = np.asarray(points, dtype=float) - np.asarray(mu, dtype=float)
    dx, dy = diffs[:, 0], diffs[:, 1]
    return np.maximum(ia * dx * dx + 2.0 * ib * dx * dy + id_ * dy * dy, 0.0)


def chi2_cdf(x: float, df: int) -> float:
    """Chi-square CDF via the regularised lower incomplete gamma function."""
    if df < 1 or x < 0 or math.isnan(x):
        raise DomainError(f"chi2_cdf undefined for x={x}, df={df}", module="inference",
                          context={"x": x, "df": df})
    if df == 2:
        return -math.expm1(-x / 2.0)
    return float(special.gammainc(df / 2.0, x / 2.0))


def chi2_survival(x: float, df: int) -> float:
    """Upper tail 1 - chi2_cdf(x, df), accurate far in the tail."""
    if df < 1 or x < 0 or math.isnan(x):
        raise DomainError(f"chi2_survival undefined for x={x}, df={df}", module="inference",
                          context={"x": x, "df": df})
    if df == 2:
        return math.exp(-x / 2.0)
    return float(special.gammaincc(df / 2.0, x / 2.0))


def chi2_quantile(u: float, df: int) -> float:
    """Chi-square quantile function."""
    if df < 1 or not 0.0 < u < 1.0:
        raise DomainError(f"chi2_quantile undefined for u={u}, df={df}", module="inference",
                          context={"u": u, "df": df})
    if df == 2:
        return -2.0 * math.log1p(-u)
    return float(chi2.ppf(u, df))


def pvalues(d2: Sequence[float]) -> np.ndarray:
    """
    Upper-tail chi-square(2) p-values exp(-d2/2).

    p-values that underflow to zero are lifted to the smallest positive
    normal float so that the critical distance stays finite.
    """
    d2 = np.asarray(d2, dtype=float)
    if np.any(d2 < 0):
        raise DomainError("squared distances must be nonnegative", module="inference")
    p = np.exp(-d2 / 2.0)
    underflow = p < SMALLEST_PVALUE
    if np.any(underflow):
        logger.warning("%d p-values underflowed; set to %.3g", int(underflow.sum()),
                       SMALLEST_PVALUE)
        p[underflow] = SMALLEST_PVALUE
    return p


def _check_level(method: Method, q: float):
    if not q > 0 or math.isnan(q):
        raise BadLevel(f"level must be positive, got {q}", module="inference",
                       context={"method": method.value, "level": q})
    if method is not Method.PFER_BONFERRONI and q >= 1:
        raise BadLevel(f"{method.value} level must be below 1, got {q}", module="inference",
                       context={"method": method.value, "level": q})


def adjust_threshold(pvals: Sequence[float], method: Method, q: float) -> Tuple[float, Tuple[int, ...]]:
    """
    Adjusted significance threshold and rejected hypotheses.

    Holm and Benjamini-Hochberg rejections come from statsmodels; t_adj is
    then the largest rejected p-value, or q/n when nothing is rejected.
    PFER control rejects p <= q/n and always reports t_adj = q/n.

    Args:
        pvals: p-values in (0, 1]
        method: Error criterion
        q: Level

    Returns:
        (t_adj, rejected indices in increasing order)
    """
    _check_level(method, q)
    p = np.asarray(pvals, dtype=float)
    n = len(p)
    first_step = min(q / n, 1.0)

    if method is Method.PFER_BONFERRONI:
        t_adj = first_step
        reject = p <= t_adj
    else:
        procedure = "holm" if method is Method.FWER_HOLM else "fdr_bh"
        reject = multipletests(p, alpha=q, method=procedure)[0]
        t_adj = float(p[reject].max()) if reject.any() else first_step
        # ties with the threshold fall on the rejected side
        reject = p <= t_adj

    rejected = tuple(int(i) for i in np.flatnonzero(reject))
    return float(t_adj), rejected


def critical_distance(t_adj: float) -> float:
    """Squared-distance cutoff matching t_adj: the chi-square(2) 1 - t_adj quantile."""
    return -2.0 * math.log(t_adj)


def test_outliers(d2: Sequence[float], method: Method, q: float) -> TestOutcome:
    """
    Run the full testing step on squared distances.

    Args:
        d2: Squared Mahalanobis distances
        method: Error criterion
        q: Level

    Returns:
        TestOutcome
    """
    d2 = np.asarray(d2, dtype=float)
    p = pvalues(d2)
    t_adj, rejected = adjust_threshold(p, method, q)
    d2_adj = critical_distance(t_adj)
    logger.debug("%s at q=%g: t_adj=%.6g, d2_adj=%.6g, %d rejected", method.value, q,
                 t_adj, d2_adj, len(rejected))
    d2.setflags(write=False)
    p.setflags(write=False)
    return TestOutcome(d2=d2, pvalues=p, method=method, q=float(q), t_adj=t_adj,
                       d2_adj=d2_adj, rejected=rejected)


test_outliers.__test__ = False


def fixed_proportion_factor(p: int, target: float) -> float:
    """
    Inflation factor that flags a fixed proportion of normal data in p dimensions.

    Args:
        p: Dimension
        target: Proportion to flag, in (0, 1)

    Returns:
        sqrt(chi2_p quantile(1 - target) / chi2_p median)
    """
    if not 0.0 < target < 1.0:
        raise DomainError(f"target proportion must lie in (0, 1), got {target}",
                          module="inference", context={"target": target})
    return math.sqrt(chi2_quantile(1.0 - target, p) / chi2_quantile(0.5, p))


def fixed_factor_tail(factor: float, p: int = 2) -> float:
    """Proportion of normal data outside a fence inflated by a fixed factor."""
    if not factor > 0:
        raise DomainError(f"factor must be positive, got {factor}", module="inference",
                          context={"factor": factor})
    return chi2_survival(factor ** 2 * chi2_quantile(0.5, p), p)

"""
Seeded generators for the simulation designs.

All draws come from numpy's default_rng (PCG64) with standard normal
variates from Generator.standard_normal. A given seed reproduces the same
sample bit for bit within one numpy version.
"""

import logging
from dataclasses import replace

import numpy as np

from .. import config
from ..errors import DomainError, TooFewRows
from .models import Dataset, MixtureSpec, SimSample

logger = logging.getLogger(__name__)


def _check_n(n: int):
    if n < config.MIN_POINTS:
        raise TooFewRows(f"need at least {config.MIN_POINTS} observations, got {n}",
                         module="sim", context={"n": n})


def _correlated_normals(rng: np.random.Generator, n: int, rho: float) -> np.ndarray:
    """n standard bivariate normals with correlation rho, via the Cholesky factor."""
    z = rng.standard_normal((n, 2))
    cholesky = np.array([[1.0, 0.0], [rho, np.sqrt(1.0 - rho * rho)]])
    return z @ cholesky.T


def gen_mixture(spec: MixtureSpec) -> SimSample:
    """
    Two-component normal mixture (1 - theta) N(mu0, S) + theta N(mu1, S).

    S has unit variances and correlation spec.rho. Labels theta_i are
    Bernoulli(spec.contamination) and are returned alongside the data.

    Args:
        spec: MixtureSpec

    Returns:
        SimSample
    """
    _check_n(spec.n)
    if not 0.0 <= spec.contamination <= 1.0:
        raise DomainError(f"contamination must lie in [0, 1], got {spec.contamination}",
                          module="sim", context={"contamination": spec.contamination})
    if not abs(spec.rho) < 1.0:
        raise DomainError(f"correlation must satisfy |rho| < 1, got {spec.rho}",
                          module="sim", context={"rho": spec.rho})

    rng = np.random.default_rng(spec.seed)
    labels = (rng.random(spec.n) < spec.contamination).astype(np.int8)
    noise = _correlated_normals(rng, spec.n, spec.rho)
    centres = np.where(labels[:, None] == 1, np.asarray(spec.mu1, dtype=float),
                       np.asarray(spec.mu0, dtype=float))
    labels.setflags(write=False)
    logger.debug("Mixture n=%d: %d contaminated", spec.n, int(labels.sum()))
    return SimSample(dataset=Dataset(centres + noise), labels=labels)


def gen_correlated_mixture(n: int, seed: int = config.DEFAULT_SEED, rho: float = 0.3,
                           contamination: float = 0.05) -> SimSample:
    """Mixture with correlated components."""
    return gen_mixture(replace(MixtureSpec(n=n, seed=seed), rho=rho, contamination=contamination))


def gen_normal(n: int, seed: int = config.DEFAULT_SEED) -> Dataset:
    """Standard bivariate normal sample."""
    _check_n(n)
    rng = np.random.default_rng(seed)
    return Dataset(rng.standard_normal((n, 2)))


def gen_lognormal(n: int, sigma: float = 0.5, seed: int = config.DEFAULT_SEED) -> Dataset:
    """Independent log-normal(0, sigma) coordinates."""
    _check_n(n)
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma}", module="sim",
                          context={"sigma": sigma})
    rng = np.random.default_rng(seed)
    return Dataset(np.exp(sigma * rng.standard_normal((n, 2))))

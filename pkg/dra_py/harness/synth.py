"""Synthetic image-set pools with a shared large-variance subspace."""

import logging
from typing import Optional

import numpy as np

from ..errors import BadDimension
from ..sets import FeaturePools

logger = logging.getLogger(__name__)


def synth_generate(
    c: int,
    d: int,
    samples_per_class: int,
    variation_rank: int,
    noise_sigma: float,
    class_sep: float,
    seed: int,
    variation_scale: Optional[float] = None,
) -> FeaturePools:
    """
    Sample ``samples_per_class`` vectors per class as
    class_mean + shared_basis @ coeffs + noise.

    Class means sit at pairwise distance ``class_sep`` along orthonormal
    directions (random Gaussian means with that expected spacing when c > d).
    The rank-``variation_rank`` basis is shared by all classes and its
    coefficients have standard deviation ``variation_scale`` (default
    3 * class_sep), so within-class spread dominates between-class spread.
    """
    if c < 2:
        raise BadDimension(f"need at least 2 classes, got {c}")
    if d < 1 or not 0 <= variation_rank < d:
        raise BadDimension(f"variation rank {variation_rank} must lie in [0, d={d})")
    if samples_per_class < 1:
        raise BadDimension(f"samples_per_class must be positive, got {samples_per_class}")
    if variation_scale is None:
        variation_scale = 3.0 * class_sep

    rng = np.random.default_rng(seed)
    frame, _ = np.linalg.qr(rng.standard_normal((d, d)))
    if c <= d:
        means = frame[:, :c] * (class_sep / np.sqrt(2.0))
    else:
        means = rng.standard_normal((d, c)) * (class_sep / np.sqrt(2.0 * d))
    if variation_rank > 0:
        shared, _ = np.linalg.qr(rng.standard_normal((d, variation_rank)))
    else:
        shared = np.zeros((d, 0))

    pools = {}
    for k in range(c):
        coeffs = rng.standard_normal((variation_rank, samples_per_class)) * variation_scale
        noise = rng.standard_normal((d, samples_per_class)) * noise_sigma
        pools[k] = means[:, [k]] + shared @ coeffs + noise
    logger.debug(
        "generated %d classes x %d samples in dimension %d (rank %d)",
        c,
        samples_per_class,
        d,
        variation_rank,
    )
    return FeaturePools(pools=pools)

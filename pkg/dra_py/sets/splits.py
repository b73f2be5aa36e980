"""Training/validation/test splits of per-class sample pools."""

import logging
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import InvalidInput, NotEnoughSamples
from .models import Dataset, FeaturePools, ImageSet

logger = logging.getLogger(__name__)

SPLIT_ROLES = ("train", "valid", "test")


def _pool_set(class_id: int, pool: np.ndarray, columns: Sequence[int]) -> ImageSet:
    columns = [int(j) for j in columns]
    return ImageSet(
        class_id=class_id,
        samples=pool[:, columns],
        origin=tuple((class_id, j) for j in columns),
    )


def random_split(
    pools: FeaturePools, counts: Tuple[int, int, int], seed: int
) -> Tuple[Dataset, Dataset, Dataset]:
    """
    Draw disjoint train/valid/test sets of the requested sizes from every class.

    Randomness comes from ``numpy.random.default_rng(seed)`` (PCG64); classes
    are visited in ascending id order and each draws one permutation, so equal
    seeds give equal splits on every platform. Set columns keep draw order.
    """
    if len(counts) != 3 or any(int(n) < 2 for n in counts):
        raise InvalidInput(f"counts must be three integers >= 2, got {tuple(counts)}")
    n_train, n_valid, n_test = (int(n) for n in counts)
    need = n_train + n_valid + n_test
    rng = np.random.default_rng(seed)

    roles: List[List[ImageSet]] = [[], [], []]
    for position, k in enumerate(pools.class_ids()):
        pool = pools.pools[k]
        if pool.shape[1] < need:
            raise NotEnoughSamples(
                f"class {pools.names[k]} has {pool.shape[1]} samples, split needs {need}"
            )
        drawn = rng.permutation(pool.shape[1])[:need]
        bounds = (0, n_train, n_train + n_valid, need)
        for role in range(3):
            roles[role].append(_pool_set(position, pool, drawn[bounds[role] : bounds[role + 1]]))

    c = len(pools.class_ids())
    logger.debug("random split seed=%d counts=%s over %d classes", seed, counts, c)
    train, valid, test = (Dataset(sets=tuple(sets), c=c) for sets in roles)
    return train, valid, test


def fixed_split(pools: FeaturePools) -> Tuple[Dataset, Dataset, Dataset]:
    """Split by the ``set_hint`` column: every sample must be train, valid or test."""
    roles: List[List[ImageSet]] = [[], [], []]
    for position, k in enumerate(pools.class_ids()):
        hints = pools.hints[k]
        unknown = sorted({h for h in hints if h not in SPLIT_ROLES})
        if unknown:
            raise InvalidInput(
                f"class {pools.names[k]}: set_hint values {unknown} are not one of {SPLIT_ROLES}"
            )
        for role, name in enumerate(SPLIT_ROLES):
            columns = [j for j, h in enumerate(hints) if h == name]
            if len(columns) < 2:
                raise NotEnoughSamples(
                    f"class {pools.names[k]} has {len(columns)} '{name}' samples; at least 2 needed"
                )
            roles[role].append(_pool_set(position, pools.pools[k], columns))
    c = len(pools.class_ids())
    train, valid, test = (Dataset(sets=tuple(sets), c=c) for sets in roles)
    return train, valid, test


def pools_as_dataset(pools: FeaturePools) -> Dataset:
    """One set per class holding the whole pool, classes relabeled to their position."""
    sets = [
        _pool_set(position, pools.pools[k], range(pools.pools[k].shape[1]))
        for position, k in enumerate(pools.class_ids())
    ]
    return Dataset(sets=tuple(sets), c=len(sets))

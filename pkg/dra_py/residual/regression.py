"""Joint difference-form regressions and the unprojected classifiers."""

import logging
from typing import List, Sequence

import numpy as np

from ..errors import DimensionMismatch, InvalidInput, SingleClass
from ..linalg import RidgeProblem, ridge_solve
from ..sets import Dataset, ImageSet, UnrelatedStrategy, difference_transform
from ..utils.parallel import parallel_map
from .models import ClassDistances, PairResidual

logger = logging.getLogger(__name__)

DEFAULT_RHO = 1e-2


def pair_residual(group: ImageSet, probe: ImageSet, rho: float = DEFAULT_RHO) -> PairResidual:
    """
    Regress the probe against the group in difference form.

    The design is [G_hat, -P_hat] and the target is probe_anchor - group_anchor;
    the residual is design @ coeffs - target.
    """
    if group.d != probe.d:
        raise DimensionMismatch(f"group dimension {group.d} differs from probe dimension {probe.d}")
    g = difference_transform(group)
    p = difference_transform(probe)
    design = np.hstack([g.design, -p.design])
    rhs = p.anchor - g.anchor
    coeffs = ridge_solve(RidgeProblem(design=design, rhs=rhs, rho=rho))
    residual = design @ coeffs - rhs
    return PairResidual(residual=residual, distance=float(np.linalg.norm(residual)), coeffs=coeffs)


def class_distances(
    train: Dataset,
    probe: ImageSet,
    strategy: UnrelatedStrategy,
    rho: float = DEFAULT_RHO,
    threads: int = 1,
) -> List[ClassDistances]:
    """Related and unrelated residuals of the probe against every class."""
    if train.c < 2:
        raise SingleClass("classification needs at least two training classes")

    def evaluate(k: int) -> ClassDistances:
        related = pair_residual(train.class_set(k), probe, rho)
        unrelated = pair_residual(strategy.build(train, k, probe), probe, rho)
        return ClassDistances(class_id=k, related=related, unrelated=unrelated)

    dists = parallel_map(evaluate, train.class_ids(), threads)
    for item in dists:
        if item.degenerate:
            logger.warning("class %d: unrelated distance is zero", item.class_id)
    return dists


def argmin_class(values: Sequence[float]) -> int:
    """Index of the smallest value, first one on ties."""
    if len(values) == 0:
        raise InvalidInput("cannot classify against an empty distance list")
    return int(np.argmin(np.asarray(values, dtype=np.float64)))


def classify_ratio(dists: Sequence[ClassDistances]) -> int:
    """Class with the smallest d_r / d_u."""
    return dists[argmin_class([item.ratio for item in dists])].class_id


def classify_related_only(dists: Sequence[ClassDistances]) -> int:
    """Class with the smallest related distance alone."""
    return dists[argmin_class([item.related.distance for item in dists])].class_id

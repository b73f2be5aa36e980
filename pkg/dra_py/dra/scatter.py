"""Residual collection over training x validation pairs and scatter assembly."""

import logging

import numpy as np

from ..errors import ClassMismatch, DimensionMismatch, InvalidInput, SingleClass
from ..linalg import sym_matrix
from ..residual import DEFAULT_RHO, class_distances
from ..sets import Dataset, UnrelatedStrategy
from ..utils.parallel import parallel_map
from .models import MODELS, ResidualBank, ScatterPair

logger = logging.getLogger(__name__)


def collect_residuals(
    train: Dataset,
    valid: Dataset,
    strategy: UnrelatedStrategy,
    rho: float = DEFAULT_RHO,
    threads: int = 1,
) -> ResidualBank:
    """
    Regress every validation set Q_l against every class k of the training data.

    Unrelated groups are built from training samples only; the validation set
    serves as the probe (which matters for Euclidean selection only).
    """
    if train.c < 2:
        raise SingleClass("residual collection needs at least two training classes")
    if valid.c != train.c:
        raise ClassMismatch(f"training has {train.c} classes, validation has {valid.c}")
    if valid.d != train.d:
        raise DimensionMismatch(f"training dimension {train.d} != validation dimension {valid.d}")

    columns = parallel_map(
        lambda l: class_distances(train, valid.class_set(l), strategy, rho),
        valid.class_ids(),
        threads,
    )
    c, d = train.c, train.d
    related = np.empty((c, c, d))
    unrelated = np.empty((c, c, d))
    for l, dists in enumerate(columns):
        for item in dists:
            related[item.class_id, l] = item.related.residual
            unrelated[item.class_id, l] = item.unrelated.residual
    logger.debug("collected %d x %d residual pairs in dimension %d", c, c, d)
    return ResidualBank(related=related, unrelated=unrelated)


def _outer_sum(vectors: np.ndarray) -> np.ndarray:
    """Sum of v v^T over the rows of an n x d array."""
    return vectors.T @ vectors


def scatter_pe(bank: ResidualBank) -> ScatterPair:
    """Scatters from same-class residuals only: A1 from unrelated, A2 from related."""
    diag = np.arange(bank.c)
    a1 = _outer_sum(bank.unrelated[diag, diag])
    a2 = _outer_sum(bank.related[diag, diag])
    return ScatterPair(A1=sym_matrix(a1), A2=sym_matrix(a2), model="PE")


def scatter_te(bank: ResidualBank) -> ScatterPair:
    """
    Scatters from all c^2 residual pairs.

    Off-diagonal pairs swap roles: a related residual against another class
    joins the numerator, an unrelated one joins the denominator.
    """
    diag = np.arange(bank.c)
    off = ~np.eye(bank.c, dtype=bool)
    a1 = _outer_sum(bank.unrelated[diag, diag]) + _outer_sum(bank.related[off])
    a2 = _outer_sum(bank.related[diag, diag]) + _outer_sum(bank.unrelated[off])
    return ScatterPair(A1=sym_matrix(a1), A2=sym_matrix(a2), model="TE")


def build_scatter(bank: ResidualBank, model: str) -> ScatterPair:
    if model == "PE":
        return scatter_pe(bank)
    if model == "TE":
        return scatter_te(bank)
    raise InvalidInput(f"unknown scatter model {model!r}; expected one of {MODELS}")

"""Projection learning, projected classification and the end-to-end trainers."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import BadDimension, DimensionMismatch, InvalidInput, SingleClass
from ..linalg import PcaBasis, pca_fit, spectral_norm, sym_expm, sym_gevd
from ..residual import DEFAULT_RHO, ClassDistances, argmin_class, class_distances, safe_ratio
from ..sets import NFS, Dataset, ImageSet, UnrelatedStrategy
from .models import (
    DEFAULT_MU,
    MODELS,
    DiscriminantProjection,
    Regularization,
    ScatterPair,
)
from .scatter import build_scatter, collect_residuals

logger = logging.getLogger(__name__)

DEFAULT_PCA_Q = 500


def exp_scaling(scatter: ScatterPair, backend: str = "jacobi") -> float:
    """1 / max(1, ||A1||_2, ||A2||_2), applied to both scatters before exponentiation."""
    largest = max(1.0, spectral_norm(scatter.A1, backend), spectral_norm(scatter.A2, backend))
    return 1.0 / largest


def learn_projection(
    scatter: ScatterPair, reg: Regularization, t: int, backend: str = "jacobi"
) -> DiscriminantProjection:
    """
    Leading t generalized eigenvectors of the regularized scatter pair.

    ``eig`` solves A1 p = l (A2 + mu I) p; ``exp`` solves
    exp(s A1) p = l exp(s A2) p with s from ``exp_scaling``.
    """
    d = scatter.d
    if not 1 <= t <= d:
        raise BadDimension(f"projection dimension t={t} outside [1, {d}]")
    if reg.kind == "eig":
        denominator = scatter.A2 + reg.mu * np.eye(d)
        pair = sym_gevd(scatter.A1, denominator, backend)
    else:
        s = exp_scaling(scatter, backend)
        logger.debug("exp regularization scale s=%.3e", s)
        numerator = sym_expm(s * scatter.A1, backend)
        pair = sym_gevd(numerator, sym_expm(s * scatter.A2, backend), backend)
    return DiscriminantProjection(
        directions=pair.vectors, spectrum=pair.values, t=t, model=scatter.model, reg=reg
    )


def project_classify(
    projection: DiscriminantProjection,
    train: Dataset,
    probe: ImageSet,
    strategy: UnrelatedStrategy,
    rho: float = DEFAULT_RHO,
    threads: int = 1,
) -> Tuple[int, np.ndarray]:
    """
    Classify a probe by ||P^T e_r|| / ||P^T e_u|| per class.

    Residuals are solved in the original space and only then projected.
    """
    if projection.d != train.d:
        raise DimensionMismatch(f"projection expects dimension {projection.d}, data has {train.d}")
    dists = class_distances(train, probe, strategy, rho, threads)
    ratios = projected_ratios(projection.P, dists)
    return dists[argmin_class(ratios)].class_id, ratios


def projected_ratios(p: np.ndarray, dists: Sequence[ClassDistances]) -> np.ndarray:
    """||P^T e_r|| / ||P^T e_u|| for every class of a precomputed distance list."""
    return np.array(
        [
            safe_ratio(
                float(np.linalg.norm(p.T @ item.related.residual)),
                float(np.linalg.norm(p.T @ item.unrelated.residual)),
            )
            for item in dists
        ]
    )


def resolve_mu(model: str, mu: Optional[float]) -> float:
    if model not in MODELS:
        raise InvalidInput(f"unknown scatter model {model!r}; expected one of {MODELS}")
    return DEFAULT_MU[model] if mu is None else mu


def dra_train(
    train: Dataset,
    valid: Dataset,
    model: str = "PE",
    reg: str = "eig",
    rho: float = DEFAULT_RHO,
    mu: Optional[float] = None,
    t: Optional[int] = None,
    strategy: Optional[UnrelatedStrategy] = None,
    backend: str = "jacobi",
    threads: int = 1,
) -> DiscriminantProjection:
    """
    Collect residuals, assemble the PE or TE scatters and learn the projection.

    ``t`` defaults to the class count and ``mu`` to the per-model default.
    """
    if train.c < 2:
        raise SingleClass("DRA training needs at least two classes")
    regularization = Regularization(kind=reg, mu=resolve_mu(model, mu) if reg == "eig" else None)
    t = train.c if t is None else t
    if t > train.d:
        raise BadDimension(f"projection dimension t={t} exceeds feature dimension {train.d}")
    bank = collect_residuals(train, valid, strategy or NFS(), rho, threads)
    scatter = build_scatter(bank, model)
    projection = learn_projection(scatter, regularization, t, backend)
    logger.debug(
        "trained DRA-%s-%s: t=%d leading eigenvalue %.4g", model, reg, t, projection.eigvals[0]
    )
    return projection


def pca_dra_train(
    train: Dataset,
    valid: Dataset,
    q: Optional[int] = None,
    model: str = "PE",
    reg: str = "eig",
    rho: float = DEFAULT_RHO,
    mu: Optional[float] = None,
    t: Optional[int] = None,
    strategy: Optional[UnrelatedStrategy] = None,
    backend: str = "jacobi",
    threads: int = 1,
) -> Tuple[PcaBasis, DiscriminantProjection]:
    """
    Reduce to q dimensions with PCA fitted on training plus validation samples,
    then train DRA in the reduced space.

    ``q`` defaults to min(500, d, sample count).
    """
    pooled = np.hstack([train.all_samples(), valid.all_samples()])
    d, n = pooled.shape
    if q is None:
        q = min(DEFAULT_PCA_Q, d, n)
    if not 1 <= q <= min(d, n):
        raise BadDimension(f"PCA dimension q={q} outside [1, {min(d, n)}]")
    pca = pca_fit(pooled, q, backend)
    projection = dra_train(
        train.mapped(pca.transform),
        valid.mapped(pca.transform),
        model=model,
        reg=reg,
        rho=rho,
        mu=mu,
        t=t,
        strategy=strategy,
        backend=backend,
        threads=threads,
    )
    return pca, projection


@dataclass(frozen=True)
class DraModel:
    """A trained projection plus everything needed to classify a probe set."""

    projection: DiscriminantProjection
    rho: float = DEFAULT_RHO
    strategy: UnrelatedStrategy = field(default_factory=NFS)
    pca: Optional[PcaBasis] = None

    def distances(self, train: Dataset, probe: ImageSet, threads: int = 1) -> List[ClassDistances]:
        """Unprojected residuals of the probe, computed in the model's (PCA-reduced) space."""
        if self.pca is not None:
            train = train.mapped(self.pca.transform)
            probe = probe.mapped(self.pca.transform)
        if self.projection.d != train.d:
            raise DimensionMismatch(
                f"projection expects dimension {self.projection.d}, data has {train.d}"
            )
        return class_distances(train, probe, self.strategy, self.rho, threads)

    def classify(self, train: Dataset, probe: ImageSet, threads: int = 1) -> Tuple[int, np.ndarray]:
        dists = self.distances(train, probe, threads)
        ratios = projected_ratios(self.projection.P, dists)
        return dists[argmin_class(ratios)].class_id, ratios

    def truncate(self, t: int) -> "DraModel":
        return DraModel(
            projection=self.projection.truncate(t),
            rho=self.rho,
            strategy=self.strategy,
            pca=self.pca,
        )

"""Discriminant residual analysis: scatters, projections and trainers."""

from .models import (
    DEFAULT_MU,
    MODELS,
    REGULARIZATIONS,
    DiscriminantProjection,
    Regularization,
    ResidualBank,
    ScatterPair,
)
from .scatter import build_scatter, collect_residuals, scatter_pe, scatter_te
from .training import (
    DEFAULT_PCA_Q,
    DraModel,
    dra_train,
    exp_scaling,
    learn_projection,
    pca_dra_train,
    project_classify,
    projected_ratios,
    resolve_mu,
)

__all__ = [
    "DEFAULT_MU",
    "DEFAULT_PCA_Q",
    "MODELS",
    "REGULARIZATIONS",
    "DiscriminantProjection",
    "DraModel",
    "Regularization",
    "ResidualBank",
    "ScatterPair",
    "build_scatter",
    "collect_residuals",
    "dra_train",
    "exp_scaling",
    "learn_projection",
    "pca_dra_train",
    "project_classify",
    "projected_ratios",
    "resolve_mu",
    "scatter_pe",
    "scatter_te",
]

"""Joint regressions, residual distances and unprojected classifiers."""

from .models import ClassDistances, PairResidual, safe_ratio
from .regression import (
    DEFAULT_RHO,
    argmin_class,
    class_distances,
    classify_ratio,
    classify_related_only,
    pair_residual,
)

__all__ = [
    "DEFAULT_RHO",
    "ClassDistances",
    "PairResidual",
    "argmin_class",
    "class_distances",
    "classify_ratio",
    "classify_related_only",
    "pair_residual",
    "safe_ratio",
]

"""Residual and decision-distance records."""

from dataclasses import dataclass

import numpy as np


def safe_ratio(numerator: float, denominator: float) -> float:
    """numerator / denominator, with x/0 = inf for x > 0 and 0/0 = 0."""
    if denominator == 0.0:
        return 0.0 if numerator == 0.0 else float("inf")
    return numerator / denominator


@dataclass(frozen=True)
class PairResidual:
    """Residual of the joint regression between a group and a probe set."""

    residual: np.ndarray
    distance: float
    coeffs: np.ndarray


@dataclass(frozen=True)
class ClassDistances:
    """Related and unrelated residuals of one candidate class."""

    class_id: int
    related: PairResidual
    unrelated: PairResidual

    @property
    def ratio(self) -> float:
        return safe_ratio(self.related.distance, self.unrelated.distance)

    @property
    def degenerate(self) -> bool:
        return self.unrelated.distance == 0.0

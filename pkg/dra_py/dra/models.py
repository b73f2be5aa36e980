"""Residual banks, scatter pairs and learned projections."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import BadDimension, InvalidInput

MODELS = ("PE", "TE")
REGULARIZATIONS = ("eig", "exp")

# best rows of the mu sweep, per scatter model
DEFAULT_MU = {"PE": 1e-3, "TE": 1e1}


@dataclass(frozen=True)
class ResidualBank:
    """
    Residual vectors for every (training class k, validation class l) pair.

    ``related[k, l]`` and ``unrelated[k, l]`` are length-d vectors.
    """

    related: np.ndarray
    unrelated: np.ndarray

    def __post_init__(self):
        if self.related.shape != self.unrelated.shape or self.related.ndim != 3:
            raise InvalidInput(
                f"bank arrays must both be c x c x d, got {self.related.shape} "
                f"and {self.unrelated.shape}"
            )
        if self.related.shape[0] != self.related.shape[1]:
            raise InvalidInput(f"bank grid must be square, got {self.related.shape[:2]}")
        if not (np.all(np.isfinite(self.related)) and np.all(np.isfinite(self.unrelated))):
            raise InvalidInput("bank contains non-finite residuals")

    @property
    def c(self) -> int:
        return self.related.shape[0]

    @property
    def d(self) -> int:
        return self.related.shape[2]


@dataclass(frozen=True)
class ScatterPair:
    """Numerator (A1) and denominator (A2) scatters of the trace-ratio problem."""

    A1: np.ndarray
    A2: np.ndarray
    model: str

    @property
    def d(self) -> int:
        return self.A1.shape[0]


@dataclass(frozen=True)
class Regularization:
    """``eig`` shifts A2 by mu * I; ``exp`` exponentiates both scatters."""

    kind: str
    mu: Optional[float] = None

    def __post_init__(self):
        if self.kind not in REGULARIZATIONS:
            raise InvalidInput(f"unknown regularization {self.kind!r}; expected {REGULARIZATIONS}")
        if self.kind == "eig" and not (self.mu is not None and self.mu > 0):
            raise InvalidInput(f"eig regularization needs mu > 0, got {self.mu}")

    def describe(self) -> str:
        return f"eig(mu={self.mu:g})" if self.kind == "eig" else "exp"


@dataclass(frozen=True)
class DiscriminantProjection:
    """
    Leading generalized eigenvectors of a scatter pair.

    ``directions`` holds every eigenvector (unit columns, eigenvalue order) and
    ``spectrum`` every eigenvalue, so the projection can be truncated to a
    smaller t without re-solving.
    """

    directions: np.ndarray
    spectrum: np.ndarray
    t: int
    model: str = "PE"
    reg: Optional[Regularization] = None

    def __post_init__(self):
        if not 1 <= self.t <= self.directions.shape[1]:
            raise BadDimension(f"t must lie in [1, {self.directions.shape[1]}], got {self.t}")

    @property
    def P(self) -> np.ndarray:
        return self.directions[:, : self.t]

    @property
    def eigvals(self) -> np.ndarray:
        return self.spectrum[: self.t]

    @property
    def d(self) -> int:
        return self.directions.shape[0]

    def truncate(self, t: int) -> "DiscriminantProjection":
        return DiscriminantProjection(
            directions=self.directions, spectrum=self.spectrum, t=t, model=self.model, reg=self.reg
        )

    @classmethod
    def identity(cls, d: int) -> "DiscriminantProjection":
        return cls(directions=np.eye(d), spectrum=np.ones(d), t=d)


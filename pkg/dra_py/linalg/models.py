"""Data models for the dense linear-algebra kernels."""

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch, InvalidInput, NonFinite


def sym_matrix(a) -> np.ndarray:
    """
    Return a float64 copy of ``a`` that is exactly symmetric.

    The input must be square and finite. Entries are averaged with their
    mirror, so inputs that are symmetric up to rounding come out bit-symmetric.
    """
    a = np.array(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFinite("matrix contains non-finite entries")
    return 0.5 * (a + a.T)


@dataclass(frozen=True)
class EigPair:
    """
    Eigenvalues sorted non-increasing with matching eigenvector columns.

    Each column has unit Euclidean norm and its largest-magnitude component
    (first one on ties) is non-negative.
    """

    values: np.ndarray
    vectors: np.ndarray

    @property
    def order(self) -> int:
        return self.values.shape[0]

    def leading(self, t: int) -> "EigPair":
        return EigPair(values=self.values[:t].copy(), vectors=self.vectors[:, :t].copy())


@dataclass(frozen=True)
class RidgeProblem:
    """argmin ||design @ w - rhs||^2 + rho * ||w||^2"""

    design: np.ndarray
    rhs: np.ndarray
    rho: float

    def __post_init__(self):
        design = np.asarray(self.design, dtype=np.float64)
        rhs = np.asarray(self.rhs, dtype=np.float64).reshape(-1)
        if design.ndim != 2:
            raise DimensionMismatch(f"design must be 2-D, got shape {design.shape}")
        if rhs.shape[0] != design.shape[0]:
            raise DimensionMismatch(
                f"rhs has {rhs.shape[0]} entries but design has {design.shape[0]} rows"
            )
        if not (np.all(np.isfinite(design)) and np.all(np.isfinite(rhs))):
            raise NonFinite("ridge problem contains non-finite entries")
        if not (self.rho > 0 and np.isfinite(self.rho)):
            raise InvalidInput(f"rho must be a positive finite number, got {self.rho}")
        object.__setattr__(self, "design", design)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "rho", float(self.rho))

    @property
    def rows(self) -> int:
        return self.design.shape[0]

    @property
    def cols(self) -> int:
        return self.design.shape[1]


@dataclass(frozen=True)
class PcaBasis:
    """Sample mean, orthonormal basis (d x q) and the variance along each column."""

    mean: np.ndarray
    basis: np.ndarray
    variances: np.ndarray

    @property
    def q(self) -> int:
        return self.basis.shape[1]

    @property
    def d(self) -> int:
        return self.basis.shape[0]

    def transform(self, x: np.ndarray) -> np.ndarray:
        """Map the columns of a d x n matrix into q-space."""
        x = np.asarray(x, dtype=np.float64)
        if x.shape[0] != self.d:
            raise DimensionMismatch(f"expected {self.d} rows, got {x.shape[0]}")
        return self.basis.T @ (x - self.mean[:, None])

    def reconstruct(self, z: np.ndarray) -> np.ndarray:
        return self.basis @ z + self.mean[:, None]

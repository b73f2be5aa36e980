"""Dense symmetric kernels: Cholesky, eigen/GEVD, matrix exponential, ridge, PCA."""

import logging
import warnings
from typing import List

import numpy as np
import scipy.linalg as sla

from ..errors import (
    DegenerateDataWarning,
    DimensionMismatch,
    InvalidInput,
    NonFinite,
    NotPositiveDefinite,
)
from .models import EigPair, PcaBasis, RidgeProblem, sym_matrix

logger = logging.getLogger(__name__)

EIG_BACKENDS = ("jacobi", "lapack")
RIDGE_PATHS = ("auto", "primal", "dual")

_EPS = np.finfo(np.float64).eps
_MAX_SWEEPS = 100
# Gram eigenvalues below this fraction of the largest are treated as zero variance
_GRAM_RANK_TOL = 1e-10


def cholesky(a) -> np.ndarray:
    """
    Lower-triangular L with a = L @ L.T.

    A pivot at or below ``order * eps * max(diag(a))`` raises NotPositiveDefinite.
    """
    a = sym_matrix(a)
    n = a.shape[0]
    threshold = n * _EPS * max(float(np.max(np.diag(a))), 0.0)
    try:
        lower = np.linalg.cholesky(a)
    except np.linalg.LinAlgError as e:
        raise NotPositiveDefinite(f"matrix of order {n} is not positive definite") from e
    pivots = np.diag(lower) ** 2
    small = np.flatnonzero(~(pivots > threshold))
    if small.size:
        j = int(small[0])
        raise NotPositiveDefinite(
            f"pivot {pivots[j]:.3e} at index {j} is not above threshold {threshold:.3e}"
        )
    return lower


def _jacobi_eigh(a: np.ndarray):
    """Cyclic Jacobi rotations on a symmetric matrix; returns unsorted (w, V)."""
    a = a.copy()
    n = a.shape[0]
    v = np.eye(n)
    scale = np.linalg.norm(a)
    tol = n * _EPS * scale
    for sweep in range(_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(diff) * 1e-150 >= 2.0 * abs(apq):
                    # |theta| beyond 1e150: small-angle limit
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0

                vec_p = v[:, p].copy()
                vec_q = v[:, q]
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
    else:
        logger.warning("Jacobi reached %d sweeps without meeting tolerance", _MAX_SWEEPS)
    logger.debug("Jacobi finished order %d after %d sweeps", n, sweep + 1)
    return np.diag(a).copy(), v


def _normalize_signs(vectors: np.ndarray) -> np.ndarray:
    rows = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[rows, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def _sorted_pair(values: np.ndarray, vectors: np.ndarray) -> EigPair:
    order = np.argsort(-values, kind="stable")
    vectors = vectors[:, order]
    vectors = vectors / np.linalg.norm(vectors, axis=0)
    return EigPair(values=values[order], vectors=_normalize_signs(vectors))


def sym_eig(a, backend: str = "jacobi") -> EigPair:
    """Eigendecomposition of a symmetric matrix, values descending."""
    a = sym_matrix(a)
    if backend == "jacobi":
        values, vectors = _jacobi_eigh(a)
    elif backend == "lapack":
        values, vectors = np.linalg.eigh(a)
    else:
        raise InvalidInput(f"unknown eigen backend {backend!r}; expected one of {EIG_BACKENDS}")
    return _sorted_pair(values, vectors)


def spectral_norm(a, backend: str = "jacobi") -> float:
    pair = sym_eig(a, backend)
    return float(np.max(np.abs(pair.values)))


def sym_gevd(a, b, backend: str = "jacobi") -> EigPair:
    """
    Solve a @ p = lambda * b @ p for symmetric a and SPD b.

    b is whitened through its Cholesky factor, the reduced symmetric problem is
    diagonalised, and the back-transformed eigenvectors are rescaled to unit
    Euclidean norm (they are not re-orthogonalised).
    """
    a = sym_matrix(a)
    b = sym_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"GEVD orders differ: {a.shape[0]} vs {b.shape[0]}")
    lower = cholesky(b)
    half = sla.solve_triangular(lower, a, lower=True)
    reduced = sla.solve_triangular(lower, half.T, lower=True)
    pair = sym_eig(reduced, backend)
    vectors = sla.solve_triangular(lower.T, pair.vectors, lower=False)
    vectors = vectors / np.linalg.norm(vectors, axis=0)
    return EigPair(values=pair.values, vectors=_normalize_signs(vectors))


def sym_expm(a, backend: str = "jacobi") -> np.ndarray:
    """exp(a) = V diag(exp(w)) V.T for symmetric a."""
    pair = sym_eig(a, backend)
    with np.errstate(over="ignore"):
        scaled = np.exp(pair.values)
    if not np.all(np.isfinite(scaled)):
        raise NonFinite(
            f"matrix exponential overflows (largest eigenvalue {pair.values[0]:.3e}); "
            "scale the input first"
        )
    result = (pair.vectors * scaled) @ pair.vectors.T
    return 0.5 * (result + result.T)


def ridge_solve(problem: RidgeProblem, path: str = "auto") -> np.ndarray:
    """
    Ridge coefficients for ``problem``.

    ``auto`` uses the primal normal equations when cols <= rows and the dual
    (Woodbury) form design.T @ (design @ design.T + rho I)^-1 @ rhs otherwise.
    """
    if path not in RIDGE_PATHS:
        raise InvalidInput(f"unknown ridge path {path!r}; expected one of {RIDGE_PATHS}")
    design, rhs, rho = problem.design, problem.rhs, problem.rho
    if problem.cols == 0:
        return np.zeros(0)
    if path == "auto":
        path = "primal" if problem.cols <= problem.rows else "dual"
    if path == "primal":
        gram = design.T @ design
        gram[np.diag_indices_from(gram)] += rho
        coeffs = sla.solve(gram, design.T @ rhs, assume_a="pos")
    else:
        kernel = design @ design.T
        kernel[np.diag_indices_from(kernel)] += rho
        coeffs = design.T @ sla.solve(kernel, rhs, assume_a="pos")
    if not np.all(np.isfinite(coeffs)):
        raise NonFinite("ridge solution is not finite")
    return coeffs


def _complete_basis(columns: List[np.ndarray], d: int, q: int) -> np.ndarray:
    """Extend orthonormal ``columns`` to q columns with coordinate directions."""
    for i in range(d):
        if len(columns) >= q:
            break
        candidate = np.zeros(d)
        candidate[i] = 1.0
        for _ in range(2):
            for col in columns:
                candidate = candidate - (col @ candidate) * col
        norm = np.linalg.norm(candidate)
        if norm > 1e-8:
            columns.append(candidate / norm)
    return np.column_stack(columns)


def pca_fit(x, q: int, backend: str = "jacobi") -> PcaBasis:
    """
    Top-q principal directions of the columns of a d x N matrix.

    When d <= N the d x d covariance is diagonalised, otherwise the N x N Gram
    matrix. Directions with zero variance are replaced by an orthonormal
    completion so the basis always has q columns.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2:
        raise DimensionMismatch(f"expected a d x N matrix, got shape {x.shape}")
    d, n = x.shape
    if n < 2:
        raise DimensionMismatch(f"PCA needs at least 2 samples, got {n}")
    if not 1 <= q <= min(d, n):
        raise DimensionMismatch(f"q must lie in [1, {min(d, n)}], got {q}")
    if not np.all(np.isfinite(x)):
        raise NonFinite("PCA input contains non-finite entries")

    mean = x.mean(axis=1)
    centered = x - mean[:, None]
    # variance below this level is rounding left over from identical samples
    floor = (max(d, n) * _EPS * float(np.max(np.abs(x)))) ** 2

    if d <= n:
        pair = sym_eig(centered @ centered.T / (n - 1), backend)
        columns = [pair.vectors[:, i] for i in range(q)]
        variances = [max(float(v), 0.0) for v in pair.values[:q]]
        degenerate = pair.values[0] <= floor
    else:
        pair = sym_eig(centered.T @ centered / (n - 1), backend)
        columns, variances = [], []
        for i in range(q):
            if not pair.values[i] > max(floor, _GRAM_RANK_TOL * pair.values[0]):
                break
            direction = centered @ pair.vectors[:, i]
            columns.append(direction / np.linalg.norm(direction))
            variances.append(float(pair.values[i]))
        degenerate = not variances
        if len(variances) < q:
            logger.debug("PCA data rank %d below q=%d, completing basis", len(variances), q)
            variances.extend([0.0] * (q - len(variances)))

    if degenerate:
        warnings.warn(
            "all samples are identical; PCA basis is arbitrary", DegenerateDataWarning, stacklevel=2
        )
    basis = _normalize_signs(_complete_basis(columns, d, q))
    return PcaBasis(mean=mean, basis=basis, variances=np.array(variances))

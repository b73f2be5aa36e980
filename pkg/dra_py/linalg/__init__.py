"""Dense real linear-algebra kernels."""

from .kernels import (
    EIG_BACKENDS,
    cholesky,
    pca_fit,
    ridge_solve,
    spectral_norm,
    sym_eig,
    sym_expm,
    sym_gevd,
)
from .models import EigPair, PcaBasis, RidgeProblem, sym_matrix

__all__ = [
    "EIG_BACKENDS",
    "EigPair",
    "PcaBasis",
    "RidgeProblem",
    "cholesky",
    "pca_fit",
    "ridge_solve",
    "spectral_norm",
    "sym_eig",
    "sym_expm",
    "sym_gevd",
    "sym_matrix",
]

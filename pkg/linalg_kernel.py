"""
Linear Algebra Kernel

Dense symmetric routines behind the solver: Cholesky factors of the metric
matrix, extreme generalized eigenpairs of a pencil (M, C) and kernel bases.
The pencil is reduced to standard form with triangular solves (never an
explicit inverse) and handed to LAPACK through scipy.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import LinAlgError, cholesky, eigh, solve_triangular

from qr_config import CHOL_PIVOT_TOL, SIGN_TOL
from qr_errors import DimensionMismatch, NotPositiveDefinite


class Extreme(Enum):
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True, eq=False)
class CholeskyFactor:
    """Lower-triangular U with C = U Uᵀ."""
    lower: np.ndarray

    @property
    def n(self) -> int:
        return self.lower.shape[0]


@dataclass(frozen=True, eq=False)
class GenEigPair:
    """Generalized eigenpair (λ, v) with M v = λ C v and vᵀCv = 1."""
    value: float
    vector: np.ndarray


def sym_matrix(entries) -> np.ndarray:
    """
    Build a read-only, exactly symmetric float64 matrix.

    Args:
        entries: Anything numpy can turn into a square 2-D array.

    Returns:
        (entries + entriesᵀ) / 2 with the write flag cleared.
    """
    M = np.array(entries, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {M.shape}")
    M = 0.5 * (M + M.T)
    M.flags.writeable = False
    return M


def fix_sign(v: np.ndarray) -> np.ndarray:
    """Flip v so its first component with |v_i| > SIGN_TOL is positive."""
    significant = np.flatnonzero(np.abs(v) > SIGN_TOL)
    if significant.size and v[significant[0]] < 0:
        return -v
    return v


def cholesky_spd(C, name: str = "C") -> CholeskyFactor:
    """
    Factor a symmetric positive definite matrix.

    Raises NotPositiveDefinite when LAPACK fails or a pivot (U_ii²) is at or
    below CHOL_PIVOT_TOL·(1 + max|C|).
    """
    C = sym_matrix(C)
    scale = 1.0 + float(np.max(np.abs(C)))
    try:
        U = cholesky(C, lower=True, check_finite=True)
    except LinAlgError:
        raise NotPositiveDefinite(name) from None

    pivots = np.diag(U) ** 2
    smallest = float(np.min(pivots))
    if smallest <= CHOL_PIVOT_TOL * scale:
        raise NotPositiveDefinite(name, pivot=smallest)

    U.flags.writeable = False
    return CholeskyFactor(lower=U)


def reduce_pencil(M, factor: CholeskyFactor) -> np.ndarray:
    """Return U⁻¹ M U⁻ᵀ for C = U Uᵀ, symmetrized."""
    M = np.asarray(M, dtype=np.float64)
    if M.shape != (factor.n, factor.n):
        raise DimensionMismatch(
            f"matrix is {M.shape}, metric factor is {factor.n}x{factor.n}"
        )
    U = factor.lower
    left = solve_triangular(U, M, lower=True)
    reduced = solve_triangular(U, left.T, lower=True)
    return 0.5 * (reduced + reduced.T)


def reduced_eigpair(reduced: np.ndarray, factor: CholeskyFactor,
                    which: Extreme) -> GenEigPair:
    """Extreme eigenpair of a pencil already in standard form (see reduce_pencil)."""
    n = reduced.shape[0]
    idx = 0 if which is Extreme.MIN else n - 1
    values, vectors = eigh(reduced, subset_by_index=[idx, idx])
    v = solve_triangular(factor.lower, vectors[:, 0], lower=True, trans="T")
    v = fix_sign(v)
    v.flags.writeable = False
    return GenEigPair(value=float(values[0]), vector=v)


def gen_eigpair(M, factor: CholeskyFactor, which: Extreme = Extreme.MIN) -> GenEigPair:
    """
    Smallest or largest generalized eigenpair of (M, C), C-normalized.

    Args:
        M: Symmetric matrix of the same dimension as the factor.
        factor: Cholesky factor of C.
        which: Extreme.MIN or Extreme.MAX.

    Returns:
        GenEigPair with vᵀCv = 1 and the first significant component positive.
    """
    return reduced_eigpair(reduce_pencil(sym_matrix(M), factor), factor, which)


def kernel_basis(M, tol: float) -> list[np.ndarray]:
    """Orthonormal eigenvectors of M whose eigenvalues satisfy |λ| ≤ tol·(1 + ‖M‖_F)."""
    M = sym_matrix(M)
    threshold = tol * (1.0 + float(np.linalg.norm(M, "fro")))
    values, vectors = eigh(M)
    return [fix_sign(vectors[:, i].copy())
            for i in np.flatnonzero(np.abs(values) <= threshold)]

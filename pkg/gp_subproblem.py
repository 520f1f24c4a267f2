"""
Linearized Subproblem Module

At the hidden iterate t_k the Frank-Wolfe step needs
    min xᵀM_k x  over  α ≤ xᵀCx ≤ β,   M_k = A − B/(2√t_k),
which is solved exactly by the minimum generalized eigenpair of (M_k, C).
The same eigenvalue yields a dual certificate: a global lower bound on the
optimal value of the original problem.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import eigh

from linalg_kernel import Extreme, GenEigPair, kernel_basis, reduced_eigpair
from qr_config import EIG_ZERO_TOL
from qr_errors import NonPositiveT
from qr_problem import QrProblem


class GpCase(Enum):
    KERNEL = "kernel"
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True, eq=False)
class SubproblemSolution:
    x_hat: np.ndarray
    s_hat: float
    t_hat: float
    lambda_g: float
    case: GpCase
    value: float


@dataclass(frozen=True)
class DualCertificate:
    lambda1: float
    lambda2: float
    lambda3: float
    lower_bound: float


def _check_t(t_k: float) -> float:
    t_k = float(t_k)
    if not t_k > 0:
        raise NonPositiveT(f"t_k must be positive, got {t_k}")
    return t_k


def linearized_matrix(p: QrProblem, t_k: float) -> np.ndarray:
    """M_k = A − B/(2√t_k)."""
    t_k = _check_t(t_k)
    return p.A - p.B / (2.0 * math.sqrt(t_k))


def min_pair(p: QrProblem, t_k: float) -> GenEigPair:
    """Minimum generalized eigenpair of (M_k, C) from the cached reduced pencils."""
    t_k = _check_t(t_k)
    reduced = p.a_reduced - p.b_reduced / (2.0 * math.sqrt(t_k))
    return reduced_eigpair(reduced, p.c_factor, Extreme.MIN)


def _kernel_point(p: QrProblem, M: np.ndarray) -> np.ndarray | None:
    basis = kernel_basis(M, EIG_ZERO_TOL)
    if not basis:
        return None
    u = basis[0]
    midpoint = 0.5 * (p.alpha + p.beta)
    return math.sqrt(midpoint / float(u @ p.C @ u)) * u


def solve_gp(p: QrProblem, t_k: float, use_kernel: bool = False) -> SubproblemSolution:
    """
    Exact solution of the linearized subproblem at t_k.

    λ_g ≥ 0 puts the minimizer on the inner ellipsoid (√α·v_g), λ_g < 0 on the
    outer one (√β·v_g). With use_kernel, a numerically zero λ_g instead returns
    a kernel vector of M_k placed at xᵀCx = (α + β)/2.

    Raises:
        NonPositiveT: t_k ≤ 0.
    """
    pair = min_pair(p, t_k)
    lam = pair.value
    x_hat = None

    if use_kernel:
        M = linearized_matrix(p, t_k)
        eps0 = EIG_ZERO_TOL * (1.0 + float(np.linalg.norm(M, "fro")))
        if abs(lam) <= eps0:
            x_hat = _kernel_point(p, M)
            if x_hat is not None:
                case, value = GpCase.KERNEL, 0.0

    if x_hat is None:
        if lam >= 0:
            case, value = GpCase.LOWER, lam * p.alpha
            x_hat = math.sqrt(p.alpha) * pair.vector
        else:
            case, value = GpCase.UPPER, lam * p.beta
            x_hat = math.sqrt(p.beta) * pair.vector

    return SubproblemSolution(
        x_hat=x_hat,
        s_hat=float(x_hat @ p.A @ x_hat),
        t_hat=float(x_hat @ p.B @ x_hat),
        lambda_g=lam,
        case=case,
        value=value,
    )


def dual_certificate(p: QrProblem, t_k: float, lambda_g: float) -> DualCertificate:
    """
    Multipliers (λ₁, λ₂, λ₃) with A + (λ₂ − λ₁)C − λ₃B = M_k − λ_g C ⪰ 0.

    lower_bound = λ₁α − λ₂β − 1/(4λ₃) bounds the optimal value from below,
    because √t ≤ t/(2√t_k) + √t_k/2 for every t > 0.
    """
    t_k = _check_t(t_k)
    lambda3 = 1.0 / (2.0 * math.sqrt(t_k))
    if lambda_g >= 0:
        lambda1, lambda2 = float(lambda_g), 0.0
    else:
        lambda1, lambda2 = 0.0, float(-lambda_g)
    return DualCertificate(
        lambda1=lambda1,
        lambda2=lambda2,
        lambda3=lambda3,
        lower_bound=lambda1 * p.alpha - lambda2 * p.beta - 1.0 / (4.0 * lambda3),
    )


def certificate_psd_margin(p: QrProblem, cert: DualCertificate) -> float:
    """Smallest eigenvalue of A + (λ₂ − λ₁)C − λ₃B; nonnegative for a valid certificate."""
    S = p.A + (cert.lambda2 - cert.lambda1) * p.C - cert.lambda3 * p.B
    return float(eigh(0.5 * (S + S.T), eigvals_only=True, subset_by_index=[0, 0])[0])

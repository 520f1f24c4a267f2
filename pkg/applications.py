"""
Applications Module

Problems that reduce to one solve of the annulus problem:
  - the largest generalized eigenpair of (B, A) for A, B ≻ 0,
  - the penalty form of  min xᵀAx  s.t. xᵀBx = 1, α ≤ xᵀCx ≤ β,
  - instances whose lower bound is α = 0.
"""

import math
from dataclasses import dataclass

from imge_solver import SolveResult, SolverConfig, Stepsize, solve
from linalg_kernel import Extreme, GenEigPair, cholesky_spd, fix_sign, gen_eigpair, sym_matrix
from qr_config import MAXEIG_GAP_TOL, MAXEIG_SAFETY
from qr_errors import InvalidConfig
from qr_problem import QrProblem, reduce_alpha_zero, validate


@dataclass(eq=False)
class PenaltyResult:
    problem: QrProblem
    result: SolveResult
    penalty_value: float        # value_best + ρ
    residual: float             # |x_bestᵀ B x_best − 1| with the caller's B


def max_eig_via_qr(A, B, C, config: SolverConfig | None = None) -> GenEigPair:
    """
    Largest λ with Bv = λAv, recovered as λ = 2√(x*ᵀBx*) from the minimizer
    of xᵀAx − √(xᵀBx) over an annulus that strictly encloses it.

    A direct eigensolve only sizes the annulus: with probe λ̂ the bounds are
    λ̂²/(4·s·λ_max(B,C)) and s·λ̂²/(4·λ_min(B,C)) for safety factor s.

    Returns:
        GenEigPair whose vector is the C-normalized minimizer direction.
    """
    a_factor = cholesky_spd(A, "A")
    cholesky_spd(B, "B")
    c_factor = cholesky_spd(C, "C")

    probe = gen_eigpair(B, a_factor, Extreme.MAX).value
    lam_min_bc = gen_eigpair(B, c_factor, Extreme.MIN).value
    lam_max_bc = gen_eigpair(B, c_factor, Extreme.MAX).value
    alpha = probe ** 2 / (4.0 * MAXEIG_SAFETY * lam_max_bc)
    beta = MAXEIG_SAFETY * probe ** 2 / (4.0 * lam_min_bc)

    p = validate(A, B, C, alpha, beta)
    config = config or SolverConfig(stepsize=Stepsize.EXACT_LINE_SEARCH,
                                    gap_tol=MAXEIG_GAP_TOL)
    result = solve(p, config)

    x = result.x_best
    direction = fix_sign(x / math.sqrt(float(x @ p.C @ x)))
    return GenEigPair(value=2.0 * math.sqrt(float(x @ p.B @ x)), vector=direction)


def penalty_problem(A, B, C, alpha: float, beta: float, rho: float) -> QrProblem:
    """Annulus instance (A + ρB, 4ρ²B, C, α, β)."""
    if not rho > 0:
        raise InvalidConfig(f"rho must be positive, got {rho}")
    A, B = sym_matrix(A), sym_matrix(B)
    return validate(A + rho * B, 4.0 * rho ** 2 * B, C, alpha, beta)


def hcdt_penalty(A, B, C, alpha: float, beta: float, rho: float,
                 config: SolverConfig | None = None) -> PenaltyResult:
    """
    Solve the penalty form of the equality-constrained problem.

    xᵀAx + ρ(√(xᵀBx) − 1)² expands to xᵀ(A + ρB)x − √(xᵀ(4ρ²B)x) + ρ, so the
    penalty objective is the annulus optimum plus ρ.
    """
    p = penalty_problem(A, B, C, alpha, beta, rho)
    result = solve(p, config)
    B = sym_matrix(B)
    x = result.x_best
    return PenaltyResult(
        problem=p,
        result=result,
        penalty_value=result.value_best + rho,
        residual=abs(float(x @ B @ x) - 1.0),
    )


def solve_alpha_zero(A, B, C, beta: float,
                     config: SolverConfig | None = None) -> tuple[QrProblem, SolveResult]:
    """Solve with 0 ≤ xᵀCx ≤ β by first moving the lower bound away from the origin."""
    p = reduce_alpha_zero(A, B, C, beta)
    return p, solve(p, config)

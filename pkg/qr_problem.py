"""
Problem Module

Instances of   min xᵀAx − √(xᵀBx)   s.t.   α ≤ xᵀCx ≤ β
with validation, objective and feasibility evaluation, the smoothness
constants of the hidden (s, t) problem, the α = 0 reduction, seeded random
instances and the starting point of the solver.
"""

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np
from scipy.linalg import eigh

from linalg_kernel import (
    CholeskyFactor, Extreme, cholesky_spd, fix_sign, gen_eigpair,
    reduce_pencil, reduced_eigpair, sym_matrix,
)
from qr_config import FEAS_TOL, REDUCED_ALPHA_MARGIN
from qr_errors import (
    BadBounds, DimensionMismatch, DimensionTooSmall, NonNegativeFbar, NonPositiveT,
)


class Feasibility(Enum):
    INTERIOR = "interior"
    LOWER_BOUNDARY = "lower_boundary"
    UPPER_BOUNDARY = "upper_boundary"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True, eq=False)
class QrProblem:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    alpha: float
    beta: float
    b_factor: CholeskyFactor
    c_factor: CholeskyFactor

    @property
    def n(self) -> int:
        return self.A.shape[0]

    # Pencils against C in standard form; every subproblem is a combination of these two.
    @cached_property
    def a_reduced(self) -> np.ndarray:
        return reduce_pencil(self.A, self.c_factor)

    @cached_property
    def b_reduced(self) -> np.ndarray:
        return reduce_pencil(self.B, self.c_factor)


@dataclass(frozen=True)
class HiddenPoint:
    """Image (s, t) = (xᵀAx, xᵀBx) of a feasible point."""
    s: float
    t: float

    def __post_init__(self):
        if not self.t > 0:
            raise NonPositiveT(f"hidden point needs t > 0, got {self.t}")

    @property
    def f(self) -> float:
        return self.s - math.sqrt(self.t)


@dataclass(frozen=True)
class SmoothnessConstants:
    L: float
    D: float
    s_min: float
    s_max: float
    t_min: float
    t_max: float
    lam_min_BC: float
    lam_max_BC: float
    lam_min_AC: float
    lam_max_AC: float


# ── Construction ──────────────────────────────────────────────────

def _checked_matrices(A, B, C):
    A, B, C = sym_matrix(A), sym_matrix(B), sym_matrix(C)
    if not (A.shape == B.shape == C.shape):
        raise DimensionMismatch(
            f"A, B, C must share one shape, got {A.shape}, {B.shape}, {C.shape}"
        )
    if A.shape[0] < 3:
        raise DimensionTooSmall(f"n must be at least 3, got {A.shape[0]}")
    return A, B, C, cholesky_spd(B, "B"), cholesky_spd(C, "C")


def _check_bounds(alpha: float, beta: float) -> None:
    if not (math.isfinite(alpha) and math.isfinite(beta) and 0 < alpha < beta):
        raise BadBounds(f"need 0 < alpha < beta < inf, got alpha={alpha}, beta={beta}")


def validate(A, B, C, alpha: float, beta: float) -> QrProblem:
    """
    Check the standing assumptions and build a problem.

    Raises:
        DimensionMismatch, DimensionTooSmall, BadBounds, NotPositiveDefinite.
    """
    alpha, beta = float(alpha), float(beta)
    A, B, C, b_factor, c_factor = _checked_matrices(A, B, C)
    _check_bounds(alpha, beta)
    return QrProblem(A=A, B=B, C=C, alpha=alpha, beta=beta,
                     b_factor=b_factor, c_factor=c_factor)


def random_instance(n: int, seed: int, alpha: float = 1.0, beta: float = 10.0) -> QrProblem:
    """
    Seeded instance: A = (R + Rᵀ)/2, B = WWᵀ/n + I, C = VVᵀ/n + I.

    R, W, V are standard normal draws from numpy's PCG64 generator, in that order.
    """
    if n < 3:
        raise DimensionTooSmall(f"n must be at least 3, got {n}")
    _check_bounds(float(alpha), float(beta))

    rng = np.random.default_rng(seed)
    R = rng.standard_normal((n, n))
    W = rng.standard_normal((n, n))
    V = rng.standard_normal((n, n))
    identity = np.eye(n)
    A = (R + R.T) / 2
    B = W @ W.T / n + identity
    C = V @ V.T / n + identity
    return validate(A, B, C, alpha, beta)


# ── Evaluation ────────────────────────────────────────────────────

def objective(p: QrProblem, x) -> float:
    """q(x) = xᵀAx − √(xᵀBx)."""
    x = np.asarray(x, dtype=np.float64)
    return float(x @ p.A @ x - math.sqrt(max(float(x @ p.B @ x), 0.0)))


def hidden_point(p: QrProblem, x) -> HiddenPoint:
    x = np.asarray(x, dtype=np.float64)
    return HiddenPoint(s=float(x @ p.A @ x), t=float(x @ p.B @ x))


def feasibility(p: QrProblem, x, tol: float = FEAS_TOL) -> Feasibility:
    """Classify xᵀCx against [α, β] with absolute tolerance tol·(1 + β)."""
    x = np.asarray(x, dtype=np.float64)
    value = float(x @ p.C @ x)
    atol = tol * (1.0 + p.beta)

    if value < p.alpha - atol or value > p.beta + atol:
        return Feasibility.INFEASIBLE
    if abs(value - p.alpha) <= atol:
        return Feasibility.LOWER_BOUNDARY
    if abs(value - p.beta) <= atol:
        return Feasibility.UPPER_BOUNDARY
    return Feasibility.INTERIOR


def constants(p: QrProblem) -> SmoothnessConstants:
    """Extreme generalized eigenvalues of (A, C), (B, C) and the derived L, D envelope."""
    lam_min_ac = reduced_eigpair(p.a_reduced, p.c_factor, Extreme.MIN).value
    lam_max_ac = reduced_eigpair(p.a_reduced, p.c_factor, Extreme.MAX).value
    lam_min_bc = reduced_eigpair(p.b_reduced, p.c_factor, Extreme.MIN).value
    lam_max_bc = reduced_eigpair(p.b_reduced, p.c_factor, Extreme.MAX).value

    s_max = lam_max_ac * (p.beta if lam_max_ac >= 0 else p.alpha)
    s_min = lam_min_ac * (p.alpha if lam_min_ac >= 0 else p.beta)
    t_max = lam_max_bc * p.beta
    t_min = lam_min_bc * p.alpha

    return SmoothnessConstants(
        L=1.0 / (4.0 * t_min ** 1.5),
        D=math.hypot(s_max - s_min, t_max - t_min),
        s_min=s_min, s_max=s_max,
        t_min=t_min, t_max=t_max,
        lam_min_BC=lam_min_bc, lam_max_BC=lam_max_bc,
        lam_min_AC=lam_min_ac, lam_max_AC=lam_max_ac,
    )


# ── The α = 0 case ────────────────────────────────────────────────

def alpha_zero_bounds(A, B, C, beta: float) -> tuple[float, float]:
    """
    Upper bound f̄ on the optimal value and radius ᾱ with √(x*ᵀCx*) ≥ ᾱ
    for every minimizer x* of the problem with α = 0.

    Returns:
        (f̄, ᾱ)
    """
    beta = float(beta)
    if not (math.isfinite(beta) and beta > 0):
        raise BadBounds(f"need 0 < beta < inf, got beta={beta}")
    A, B, C, _, c_factor = _checked_matrices(A, B, C)

    lam_min_ac = gen_eigpair(A, c_factor, Extreme.MIN).value
    lam_max_ac = gen_eigpair(A, c_factor, Extreme.MAX).value
    lam_min_bc = gen_eigpair(B, c_factor, Extreme.MIN).value
    lam_max_bc = gen_eigpair(B, c_factor, Extreme.MAX).value

    if lam_max_ac > 0 and math.sqrt(lam_min_bc) / (2 * lam_max_ac) <= math.sqrt(beta):
        f_bar = -lam_min_bc / (4 * lam_max_ac)
    else:
        f_bar = lam_max_ac * beta - math.sqrt(lam_min_bc * beta)

    if f_bar >= 0:
        raise NonNegativeFbar(f"f_bar = {f_bar} is not negative")

    if lam_min_ac >= 0:
        alpha_bar = -f_bar / math.sqrt(lam_max_bc)
    else:
        root = math.sqrt(lam_max_bc + 4 * lam_min_ac * f_bar)
        alpha_bar = (math.sqrt(lam_max_bc) - root) / (2 * lam_min_ac)
    return f_bar, alpha_bar


def reduce_alpha_zero(A, B, C, beta: float) -> QrProblem:
    """
    Replace the constraint 0 ≤ xᵀCx ≤ β by ᾱ² ≤ xᵀCx ≤ β.

    The bound on √(x*ᵀCx*) squares to the lower bound; when that meets β the
    annulus is kept open with β·(1 − REDUCED_ALPHA_MARGIN).
    """
    _, alpha_bar = alpha_zero_bounds(A, B, C, beta)
    lower = min(alpha_bar ** 2, float(beta) * (1.0 - REDUCED_ALPHA_MARGIN))
    return validate(A, B, C, lower, beta)


# ── Starting point ────────────────────────────────────────────────

def initial_point(p: QrProblem) -> np.ndarray:
    """
    Unit eigenvector of C whose eigenvalue lies strictly inside (α, β);
    if there is none, e₁ scaled so that x₀ᵀCx₀ = (α + β)/2.
    """
    values, vectors = eigh(p.C)
    inside = np.flatnonzero((values > p.alpha) & (values < p.beta))
    if inside.size:
        return fix_sign(vectors[:, inside[0]].copy())

    e1 = np.zeros(p.n)
    e1[0] = 1.0
    midpoint = 0.5 * (p.alpha + p.beta)
    return math.sqrt(midpoint / p.C[0, 0]) * e1

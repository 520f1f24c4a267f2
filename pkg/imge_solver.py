"""
IMGE Solver Module

Frank-Wolfe on the hidden pair (s, t) = (xᵀAx, xᵀBx) where every linear
minimization is one minimum generalized eigenpair of (M_k, C). Each iteration
yields a feasible point x̂_k, a dual lower bound and the Frank-Wolfe gap, so
the run carries its own optimality certificate.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from gp_subproblem import dual_certificate, solve_gp
from qr_config import DEFAULT_GAP_TOL, DEFAULT_MAX_ITER, PROGRESS_EVERY, T_CLAMP, VERBOSE
from qr_errors import InvalidConfig
from qr_problem import QrProblem, SmoothnessConstants, constants, hidden_point, initial_point, objective
from radial_oracle import radial_polish


class Stepsize(Enum):
    DIMINISHING = "dim"
    EXACT_LINE_SEARCH = "exact"


class Termination(Enum):
    GAP = "gap"
    MAX_ITER = "max_iter"


@dataclass(frozen=True)
class SolverConfig:
    stepsize: Stepsize = Stepsize.EXACT_LINE_SEARCH
    gap_tol: float = DEFAULT_GAP_TOL
    max_iter: int = DEFAULT_MAX_ITER
    record_trace: bool = True
    radial_polish: bool = True
    use_kernel: bool = False
    verbose: bool = VERBOSE

    def __post_init__(self):
        if not self.gap_tol > 0:
            raise InvalidConfig(f"gap_tol must be positive, got {self.gap_tol}")
        if self.max_iter < 1:
            raise InvalidConfig(f"max_iter must be at least 1, got {self.max_iter}")


@dataclass(frozen=True)
class IterationRecord:
    k: int
    s: float
    t: float
    f: float
    gamma: float
    gap: float
    q_xhat: float
    lower_bound: float
    lambda_g: float
    delta_k: float


@dataclass(eq=False)
class SolveResult:
    x_best: np.ndarray
    value_best: float
    lower_bound_best: float
    iterations: int
    terminated_by: Termination
    final_gap: float
    last_gamma: float           # last step actually applied, nan if none
    s_final: float
    t_final: float
    constants: SmoothnessConstants
    trace: list[IterationRecord] = field(default_factory=list)

    @property
    def certificate_gap(self) -> float:
        return self.value_best - self.lower_bound_best


@dataclass(frozen=True)
class IterateBounds:
    sqrt_t: float               # |√t_k − √t*|
    s_lower: float              # s_k − s* ≥ s_lower
    s_upper: float              # s_k − s* ≤ s_upper
    t: float                    # |t_k − t*|


# ── Step rules ────────────────────────────────────────────────────

def diminishing_step(k: int) -> float:
    return 2.0 / (k + 2)


def exact_linesearch(s: float, t: float, s_hat: float, t_hat: float) -> float:
    """
    argmin over γ ∈ [0, 1] of (1−γ)s + γŝ − √((1−γ)t + γt̂).

    φ is convex, so the stationary point clamped to [0, 1] is optimal whenever
    the two differences share a sign; otherwise φ is monotone.
    """
    ds, dt = s_hat - s, t_hat - t
    if ds > 0 and dt < 0:
        return 0.0
    if ds < 0 and dt > 0:
        return 1.0
    if ds == 0:
        return 1.0 if dt > 0 else 0.0
    if dt == 0:
        return 1.0 if ds < 0 else 0.0

    gamma = dt / (4.0 * ds * ds) - t / dt
    return min(max(gamma, 0.0), 1.0)


def fw_gap(s: float, t: float, s_hat: float, t_hat: float) -> float:
    """−∇f(s, t)ᵀ((ŝ, t̂) − (s, t)) for f(s, t) = s − √t."""
    root = math.sqrt(t)
    return s - s_hat + t_hat / (2.0 * root) - root / 2.0


# ── Convergence bounds ────────────────────────────────────────────

def primal_bound(c: SmoothnessConstants, k: int) -> float:
    """f(s_k, t_k) − f* ≤ 2LD²/(k+2)."""
    return 2.0 * c.L * c.D ** 2 / (k + 2)


def delta_bound(c: SmoothnessConstants, k: int) -> float:
    """q(x̂_k) − v* ≤ δ_k."""
    return (c.t_max / c.t_min) * math.sqrt(c.L * c.D ** 2 * math.sqrt(c.t_max) / (k + 2))


def iterate_bounds(c: SmoothnessConstants, k: int) -> IterateBounds:
    radius = math.sqrt(4.0 * c.L * c.D ** 2 * math.sqrt(c.t_max) / (k + 2))
    return IterateBounds(
        sqrt_t=radius,
        s_lower=-radius,
        s_upper=primal_bound(c, k) + radius,
        t=4.0 * math.sqrt(c.t_max) * math.sqrt(c.L * c.D ** 2 * math.sqrt(c.t_max) / (k + 2)),
    )


# ── Main loop ─────────────────────────────────────────────────────

def solve(p: QrProblem, config: SolverConfig | None = None) -> SolveResult:
    """
    Run IMGE until the Frank-Wolfe gap drops to config.gap_tol or
    config.max_iter subproblems have been solved.

    Returns the best subproblem point seen (radially refined when
    config.radial_polish is set), the best dual lower bound and the trace.
    """
    config = config or SolverConfig()
    c = constants(p)
    t_floor = c.t_min * (1.0 - T_CLAMP)

    start = hidden_point(p, initial_point(p))
    s, t = start.s, start.t

    x_best, value_best = None, math.inf
    lower_best = -math.inf
    last_gamma = math.nan
    trace: list[IterationRecord] = []
    terminated_by = Termination.MAX_ITER
    gap = math.inf
    k = 0

    if config.verbose:
        print(f"[Solver] n={p.n} stepsize={config.stepsize.value} "
              f"tol={config.gap_tol:.1e} max_iter={config.max_iter}")

    for k in range(1, config.max_iter + 1):
        sol = solve_gp(p, t, use_kernel=config.use_kernel)
        q_hat = sol.s_hat - math.sqrt(sol.t_hat)
        cert = dual_certificate(p, t, sol.lambda_g)
        gap = fw_gap(s, t, sol.s_hat, sol.t_hat)

        candidate, candidate_value = sol.x_hat, q_hat
        if config.radial_polish:
            x_polished, _ = radial_polish(p, sol.x_hat)
            polished_value = objective(p, x_polished)
            if polished_value < candidate_value:
                candidate, candidate_value = x_polished, polished_value
        if candidate_value < value_best:
            x_best, value_best = candidate, candidate_value
        lower_best = max(lower_best, cert.lower_bound)

        done = gap <= config.gap_tol
        gamma = 0.0
        if not done and k < config.max_iter:
            if config.stepsize is Stepsize.DIMINISHING:
                gamma = diminishing_step(k)
            else:
                gamma = exact_linesearch(s, t, sol.s_hat, sol.t_hat)

        if config.record_trace:
            trace.append(IterationRecord(
                k=k, s=s, t=t, f=s - math.sqrt(t), gamma=gamma, gap=gap,
                q_xhat=q_hat, lower_bound=cert.lower_bound,
                lambda_g=sol.lambda_g, delta_k=delta_bound(c, k),
            ))

        if config.verbose and (done or k % PROGRESS_EVERY == 0 or k == 1):
            print(f"[Solver] k={k:>5}  f={s - math.sqrt(t):+.10f}  gap={gap:.3e}  "
                  f"best={value_best:+.10f}  lb={lower_best:+.10f}")

        if done:
            terminated_by = Termination.GAP
            break
        if k == config.max_iter:
            break

        s = (1.0 - gamma) * s + gamma * sol.s_hat
        t = max((1.0 - gamma) * t + gamma * sol.t_hat, t_floor)
        last_gamma = gamma

    if config.verbose:
        print(f"[Solver] Stopped by {terminated_by.value} after {k} iteration(s), "
              f"certificate gap {value_best - lower_best:.3e}")

    return SolveResult(
        x_best=x_best,
        value_best=value_best,
        lower_bound_best=lower_best,
        iterations=k,
        terminated_by=terminated_by,
        final_gap=gap,
        last_gamma=last_gamma,
        s_final=s,
        t_final=t,
        constants=c,
        trace=trace,
    )

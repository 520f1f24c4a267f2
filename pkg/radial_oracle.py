"""
Radial Oracle Module

Along a direction d with dᵀCd = 1 the objective restricts to
h(r) = a·r² − b·r on r ∈ [√α, √β] (a = dᵀAd, b = √(dᵀBd)), which has a
closed-form minimizer. Scanning many directions gives an independent upper
bound on the optimal value for small instances.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from qr_config import ORACLE_CHUNK
from qr_errors import BadBounds
from qr_problem import QrProblem


@dataclass(frozen=True)
class RadialResult:
    r_star: float
    value: float


def radial_min(a: float, b: float, alpha: float, beta: float) -> RadialResult:
    """
    Minimize a·r² − b·r over [√α, √β].

    For a > 0 the vertex b/(2a) is clamped into the interval; otherwise h is
    nonincreasing for r > 0 and the outer end wins.
    """
    if not (0 < alpha < beta):
        raise BadBounds(f"need 0 < alpha < beta, got alpha={alpha}, beta={beta}")
    if b < 0:
        raise ValueError(f"b must be nonnegative, got {b}")

    lo, hi = math.sqrt(alpha), math.sqrt(beta)
    if a > 0:
        r = min(max(b / (2.0 * a), lo), hi)
    else:
        r = hi
    return RadialResult(r_star=r, value=a * r * r - b * r)


def radial_polish(p: QrProblem, x: np.ndarray) -> tuple[np.ndarray, float]:
    """Best point on the ray through x inside the annulus, and its objective."""
    d = x / math.sqrt(float(x @ p.C @ x))
    a = float(d @ p.A @ d)
    b = math.sqrt(max(float(d @ p.B @ d), 0.0))
    res = radial_min(a, b, p.alpha, p.beta)
    return res.r_star * d, res.value


def _radial_batch(p: QrProblem, dirs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized radial_min over C-normalized rows of dirs; returns (r, value)."""
    a = np.einsum("ij,jk,ik->i", dirs, p.A, dirs)
    b = np.sqrt(np.clip(np.einsum("ij,jk,ik->i", dirs, p.B, dirs), 0.0, None))
    lo, hi = math.sqrt(p.alpha), math.sqrt(p.beta)

    r = np.full(a.shape, hi)
    pos = a > 0
    r[pos] = np.clip(b[pos] / (2.0 * a[pos]), lo, hi)
    return r, a * r * r - b * r


def brute_force(p: QrProblem, num_dirs: int, seed: int) -> tuple[np.ndarray, float]:
    """
    Best radial minimum over generalized eigenvectors of (A, C) and (B, C)
    followed by num_dirs seeded directions uniform on the unit sphere.

    Ties keep the earliest direction, so the result depends only on
    (num_dirs, seed).

    Returns:
        (x, q(x)): a feasible point and a certified upper bound on the optimum.
    """
    if num_dirs < 1:
        raise ValueError(f"num_dirs must be at least 1, got {num_dirs}")

    # eigh(M, C) returns C-normalized generalized eigenvectors.
    _, vec_a = eigh(p.A, p.C)
    _, vec_b = eigh(p.B, p.C)
    candidates = np.vstack([vec_a.T, vec_b.T])

    r, values = _radial_batch(p, candidates)
    i = int(np.argmin(values))
    best_x, best_value = r[i] * candidates[i], float(values[i])

    rng = np.random.default_rng(seed)
    remaining = num_dirs
    while remaining > 0:
        m = min(remaining, ORACLE_CHUNK)
        dirs = rng.standard_normal((m, p.n))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        dirs /= np.sqrt(np.einsum("ij,jk,ik->i", dirs, p.C, dirs))[:, None]

        r, values = _radial_batch(p, dirs)
        i = int(np.argmin(values))
        if values[i] < best_value:
            best_x, best_value = r[i] * dirs[i], float(values[i])
        remaining -= m

    return best_x, best_value

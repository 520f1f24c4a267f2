"""Tests for the eigenvalue recovery, the penalty form and the α = 0 solve."""

import math

import numpy as np
import pytest

from applications import hcdt_penalty, max_eig_via_qr, penalty_problem, solve_alpha_zero
from imge_solver import SolverConfig
from linalg_kernel import Extreme, cholesky_spd, gen_eigpair
from qr_errors import InvalidConfig, NotPositiveDefinite
from qr_problem import Feasibility, feasibility

EYE = np.eye(3)


def _spd(rng, n):
    W = rng.standard_normal((n, n))
    return W @ W.T / n + np.eye(n)


class TestMaxEig:
    def test_dominant_axis(self):
        pair = max_eig_via_qr(EYE, np.diag([4.0, 1.0, 1.0]), EYE)
        assert pair.value == pytest.approx(4.0, rel=1e-8)
        assert np.allclose(pair.vector, [1.0, 0.0, 0.0], atol=1e-6)

    def test_identity(self):
        pair = max_eig_via_qr(EYE, EYE, EYE)
        assert pair.value == pytest.approx(1.0, rel=1e-8)
        assert pair.vector @ pair.vector == pytest.approx(1.0)

    @pytest.mark.parametrize("seed", range(20))
    def test_random_triples(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 51))
        A, B, C = _spd(rng, n), _spd(rng, n), _spd(rng, n)
        direct = gen_eigpair(B, cholesky_spd(A), Extreme.MAX).value
        pair = max_eig_via_qr(A, B, C)
        assert abs(pair.value - direct) <= 1e-6 * (1.0 + direct)

    def test_requires_positive_definite_a(self):
        with pytest.raises(NotPositiveDefinite) as exc:
            max_eig_via_qr(np.diag([1.0, -1.0, 1.0]), EYE, EYE)
        assert exc.value.which == "A"


class TestPenalty:
    def test_matrix_construction(self):
        rng = np.random.default_rng(0)
        A = rng.standard_normal((4, 4))
        A = (A + A.T) / 2
        B = _spd(rng, 4)
        p = penalty_problem(A, B, np.eye(4), 0.5, 4.0, 3.0)
        assert np.allclose(p.A, A + 3.0 * B)
        assert np.allclose(p.B, 36.0 * B)

    @pytest.mark.parametrize("rho", [1.0, 10.0])
    def test_unit_sphere_recovered(self, rho):
        out = hcdt_penalty(np.zeros((3, 3)), EYE, EYE, 0.5, 4.0, rho)
        assert out.penalty_value == pytest.approx(0.0, abs=1e-8)
        assert out.residual == pytest.approx(0.0, abs=1e-8)
        assert out.result.x_best @ out.result.x_best == pytest.approx(1.0, abs=1e-8)

    def test_residual_shrinks_with_rho(self):
        # Along e₁ the penalized minimizer is r = ρ/(1 + ρ), floored at √α.
        A = np.diag([1.0, 2.0, 3.0])
        residuals = [hcdt_penalty(A, EYE, EYE, 0.5, 4.0, rho,
                                  SolverConfig(gap_tol=1e-10)).residual
                     for rho in (1.0, 10.0, 100.0)]
        assert residuals[0] == pytest.approx(0.5, abs=1e-6)
        assert residuals[1] == pytest.approx(1.0 - (10.0 / 11.0) ** 2, abs=1e-6)
        assert residuals[2] == pytest.approx(1.0 - (100.0 / 101.0) ** 2, abs=1e-6)
        assert residuals[0] > residuals[1] > residuals[2]

    @pytest.mark.parametrize("rho", [0.0, -1.0])
    def test_rho_must_be_positive(self, rho):
        with pytest.raises(InvalidConfig):
            penalty_problem(EYE, EYE, EYE, 0.5, 4.0, rho)


class TestAlphaZeroSolve:
    def test_interior_minimizer(self):
        p, result = solve_alpha_zero(EYE, EYE, EYE, 10.0, SolverConfig(gap_tol=1e-10))
        assert p.alpha == pytest.approx(1.0 / 16.0)
        assert result.value_best == pytest.approx(-0.25, abs=1e-8)
        assert math.sqrt(result.x_best @ result.x_best) == pytest.approx(0.5, abs=1e-6)

    def test_outer_minimizer(self):
        p, result = solve_alpha_zero(-EYE, EYE, EYE, 4.0)
        assert result.value_best == pytest.approx(-6.0, abs=1e-6)
        assert feasibility(p, result.x_best) is not Feasibility.INFEASIBLE

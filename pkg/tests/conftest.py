import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from qr_problem import validate  # noqa: E402


@pytest.fixture
def identity_problem():
    """A = B = C = I₃ on 1 ≤ xᵀx ≤ 10; optimum 0 on the unit sphere."""
    eye = np.eye(3)
    return validate(eye, eye, eye, 1.0, 10.0)


@pytest.fixture
def neg_axis_problem():
    """A = diag(−1, 1, 1), B = C = I₃ on 1 ≤ xᵀx ≤ 4; optimum −6 at ±2e₁."""
    eye = np.eye(3)
    return validate(np.diag([-1.0, 1.0, 1.0]), eye, eye, 1.0, 4.0)

import math
from fractions import Fraction as F

import mpmath
import pytest

from infinitesimal.quadrature import _WG, _WGK, _XGK, gk15, integrate


def test_weights_sum_to_interval_length():
    assert math.fsum(_WGK[:7]) * 2 + _WGK[7] == pytest.approx(2.0, abs=1e-15)
    assert math.fsum(_WG[:3]) * 2 + _WG[3] == pytest.approx(2.0, abs=1e-15)


def test_gauss_nodes_are_legendre_roots():
    for x in _XGK[1::2]:
        assert abs(mpmath.legendre(7, x)) < 1e-14


@pytest.mark.parametrize("degree", range(0, 23))
def test_kronrod_exact_to_degree_22(degree):
    value, _ = gk15(lambda t: t**degree, -1.0, 1.0)
    exact = F(2, degree + 1) if degree % 2 == 0 else 0
    assert value == pytest.approx(float(exact), abs=1e-14)


def test_gauss_error_estimate_vanishes_on_low_degree():
    _, err = gk15(lambda t: 3 * t**5 - t**2 + 1, -2.0, 5.0)
    assert err < 1e-10


def test_adaptive_against_mpmath():
    cases = [
        (lambda t: math.exp(-t * t), -3.0, 2.0),
        (lambda t: 1 / (1e-4 + t * t), -1.0, 1.0),
        (math.sqrt, 0.0, 1.0),
    ]
    for f, a, b in cases:
        got = integrate(f, a, b, tol=1e-11)
        want = float(mpmath.quad(lambda t: f(float(t)), [a, 0 if a < 0 < b else (a + b) / 2, b]))
        assert got.converged
        assert got.value == pytest.approx(want, abs=1e-9)


def test_budget_is_respected():
    res = integrate(lambda t: math.sin(1 / t) if t else 0.0, 0.0, 1.0, tol=1e-15, budget=300)
    assert not res.converged
    assert res.evals <= 300


def test_empty_interval():
    assert integrate(math.cos, 1.0, 1.0).value == 0.0

"""Double-exponential quadrature against closed-form integrals."""

import math

import numpy as np
import pytest

from hyplevy.errors import QuadratureError
from hyplevy.quadrature import exp_sinh, gauss_legendre_nodes, tanh_sinh


class TestTanhSinh:
    def test_beta_half_half(self):
        # both endpoints carry an inverse-square-root singularity
        val = tanh_sinh(lambda x, bm: 1.0 / np.sqrt(x * bm))
        assert math.isclose(val, math.pi, rel_tol=1e-12)

    def test_log_singularity(self):
        val = tanh_sinh(lambda x, bm: np.log(x))
        assert math.isclose(val, -1.0, rel_tol=1e-12)

    def test_shifted_interval(self):
        val = tanh_sinh(lambda x, bm: x * x, a=1.0, b=3.0)
        assert math.isclose(val, 26.0 / 3.0, rel_tol=1e-13)

    def test_complex_integrand(self):
        val = tanh_sinh(lambda x, bm: np.exp(1j * x))
        assert abs(val - (math.sin(1.0) + 1j * (1.0 - math.cos(1.0)))) <= 1e-13

    def test_right_endpoint_distance_is_exact(self):
        # (1 - x)^(-1/2) through the dist_b argument keeps full precision
        val = tanh_sinh(lambda x, bm: 1.0 / np.sqrt(bm))
        assert math.isclose(val, 2.0, rel_tol=1e-12)

    def test_empty_interval(self):
        with pytest.raises(QuadratureError):
            tanh_sinh(lambda x, bm: x, a=1.0, b=1.0)


class TestExpSinh:
    def test_gamma_five(self):
        val = exp_sinh(lambda x: np.exp(4.0 * np.log(x) - x))
        assert math.isclose(val, 24.0, rel_tol=1e-12)

    def test_shifted_lower_limit(self):
        val = exp_sinh(lambda x: np.exp(-x), a=2.0)
        assert math.isclose(val, math.exp(-2.0), rel_tol=1e-12)

    def test_divergent_integrand_fails(self):
        with pytest.raises(QuadratureError):
            exp_sinh(lambda x: np.ones_like(x))


class TestGaussLegendre:
    def test_polynomial_exactness(self):
        nodes, weights = gauss_legendre_nodes(4)
        assert math.isclose(float(np.sum(weights)), 1.0, rel_tol=1e-15)
        # degree 2n-1 = 7 is integrated exactly on (0, 1)
        assert math.isclose(float(np.sum(weights * nodes**7)), 1.0 / 8.0, rel_tol=1e-14)

    def test_nodes_inside_unit_interval(self):
        nodes, _ = gauss_legendre_nodes(16)
        assert np.all((nodes > 0.0) & (nodes < 1.0))

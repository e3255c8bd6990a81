"""Double-exponential quadrature rules.

tanh_sinh integrates over a finite interval and tolerates integrable
algebraic or logarithmic endpoint singularities; exp_sinh covers (a, inf)
for integrands with decay. Both evaluate the integrand on full node arrays
(numpy vectorized) and refine by level doubling until two consecutive
levels agree. Integrands receive the node position together with the
distance to the singular endpoint so that factors like (1 - x)^(-1/2) can
be evaluated without cancellation.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import QuadratureError

_T_MAX = 6.11  # |(pi/2) sinh t| ~ 350 here, transformed weights underflow beyond


@lru_cache(maxsize=32)
def _ts_nodes(level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Abscissas on (0,1) at spacing 2^-level: (s, 1-s, weight)."""
    h = 2.0 ** (-level)
    t = np.arange(-int(_T_MAX / h), int(_T_MAX / h) + 1) * h
    a = 0.5 * math.pi * np.sinh(t)
    s = 1.0 / (1.0 + np.exp(-2.0 * a))
    s1 = 1.0 / (1.0 + np.exp(2.0 * a))
    w = h * 0.25 * math.pi * np.cosh(t) / np.cosh(a) ** 2
    keep = (s > 0.0) & (s1 > 0.0) & (w > 0.0)
    return s[keep], s1[keep], w[keep]


@lru_cache(maxsize=32)
def _es_nodes(level: int) -> tuple[np.ndarray, np.ndarray]:
    """Abscissas on (0, inf) at spacing 2^-level: (x, weight)."""
    h = 2.0 ** (-level)
    t = np.arange(-int(_T_MAX / h), int(_T_MAX / h) + 1) * h
    a = 0.5 * math.pi * np.sinh(t)
    x = np.exp(a)
    w = h * x * 0.5 * math.pi * np.cosh(t)
    keep = np.isfinite(w) & (x > 0.0) & (x < 1e300)
    return x[keep], w[keep]


def tanh_sinh(
    f,
    a: float = 0.0,
    b: float = 1.0,
    *,
    rel_tol: float = 1e-12,
    abs_tol: float = 1e-15,
    min_level: int = 5,
    max_level: int = 12,
):
    """Integrate f over (a, b).

    f(x, dist_b) is called with node arrays, dist_b = b - x computed
    stably; it may return real or complex values. Raises QuadratureError
    if consecutive levels never agree to tolerance.
    """
    if not b > a:
        raise QuadratureError(f"empty interval ({a}, {b})")
    scale = b - a
    prev = None
    for level in range(min_level, max_level + 1):
        s, s1, w = _ts_nodes(level)
        vals = f(a + scale * s, scale * s1)
        cur = scale * np.sum(w * vals)
        if prev is not None:
            err = abs(cur - prev)
            if err <= max(abs_tol, rel_tol * abs(cur)):
                return cur
        prev = cur
    raise QuadratureError(
        f"tanh_sinh did not converge on ({a}, {b}) by level {max_level} "
        f"(last delta {err:.3e})"
    )


def exp_sinh(
    f,
    a: float = 0.0,
    *,
    rel_tol: float = 1e-12,
    abs_tol: float = 1e-15,
    min_level: int = 5,
    max_level: int = 12,
):
    """Integrate f over (a, inf) for decaying integrands.

    f(x) is called with node arrays (positions a + u, u on a
    double-exponential grid spanning roughly 1e-300 .. 1e300); the
    integrand must return finite values (for example 0) over that whole
    range.
    """
    prev = None
    for level in range(min_level, max_level + 1):
        x, w = _es_nodes(level)
        vals = f(a + x)
        cur = np.sum(w * vals)
        if prev is not None:
            err = abs(cur - prev)
            if err <= max(abs_tol, rel_tol * abs(cur)):
                return cur
        prev = cur
    raise QuadratureError(
        f"exp_sinh did not converge on ({a}, inf) by level {max_level} "
        f"(last delta {err:.3e})"
    )


@lru_cache(maxsize=8)
def gauss_legendre_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on (0, 1)."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


__all__ = ["tanh_sinh", "exp_sinh", "gauss_legendre_nodes"]

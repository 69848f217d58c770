import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from whitkern import quadrature as q
from whitkern.errors import ParameterError


def test_gauss_exact_for_polynomials():
    r = q.gauss_legendre(5, 0.0, 2.0)
    assert r.integrate(lambda x: x ** 9) == pytest.approx(2 ** 10 / 10, rel=1e-13)


def test_gauss_log_on_inverse_x():
    r = q.gauss_legendre_log(30, 1e-3, 4.0)
    assert r.integrate(lambda x: 1 / x) == pytest.approx(math.log(4000), rel=1e-13)


def test_tanh_sinh_endpoint_singularity():
    r = q.tanh_sinh(10, 0.0, 1.0)
    assert r.integrate(lambda x: x ** -0.5) == pytest.approx(2.0, rel=1e-12)
    # exact gaps resolve (1-x)^{-1/2}
    assert float(r.weights @ r.hi_gap ** -0.5) == pytest.approx(2.0, rel=1e-12)


def test_half_line_exponential():
    r = q.half_line(10, 0.0, 1.0)
    assert float(r.weights @ np.exp(-r.lo_gap)) == pytest.approx(1.0, rel=1e-13)
    assert float(r.weights @ (r.lo_gap ** -0.5 * np.exp(-r.lo_gap))) == pytest.approx(math.sqrt(math.pi), rel=1e-12)


def test_composite_requires_tiling():
    with pytest.raises(ParameterError):
        q.composite([q.gauss_legendre(4, 0, 1), q.gauss_legendre(4, 2, 3)])


def test_mp_tanh_sinh_essential_singularity():
    with mpmath.workdps(60):
        r = q.tanh_sinh_mp(0, 1, 60, refine=4)
        val = sum(w * mpmath.exp(-1 / x) for x, w in zip(r.nodes, r.weights))
        ref = mpmath.quad(lambda x: mpmath.exp(-1 / x), [0, 0.1, 1])
        assert abs(val - ref) < mpmath.mpf(10) ** -50


def test_mp_half_line():
    with mpmath.workdps(80):
        r = q.half_line_mp(0, 1, 80)
        p = mpmath.mpf(3) / 10
        val = sum(w * mpmath.exp(-x) * x ** p for x, w in zip(r.nodes, r.weights))
        assert abs(val - mpmath.gamma(1 + p)) < mpmath.mpf(10) ** -70


@given(st.floats(-0.9, 4.0))
def test_power_integral(p):
    r = q.tanh_sinh(10, 0.0, 1.0)
    assert float(r.weights @ r.lo_gap ** p) == pytest.approx(1 / (p + 1), rel=1e-9)


@given(st.floats(0.1, 5.0), st.floats(0.1, 10.0))
def test_gauss_linear_map(a, width):
    r = q.gauss_legendre(8, a, a + width)
    assert r.integrate(lambda x: np.ones_like(x)) == pytest.approx(width, rel=1e-13)

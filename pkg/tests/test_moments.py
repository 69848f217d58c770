import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from whitkern.errors import DomainError, ParameterError
from whitkern.moments import (WeightSpec, c_n, hankel_det, hankel_det_restricted, heine_integral,
                              moment_quad, moment_table, moment_whittaker, orthopolys)


def test_legendre_hankel_dets_are_hilbert():
    spec = WeightSpec(0, 0, 0)
    with mpmath.workdps(50):
        assert abs(hankel_det(spec, 2, 50) - mpmath.mpf(1) / 12) < mpmath.mpf(10) ** -45
        assert abs(hankel_det(spec, 3, 50) - mpmath.mpf(1) / 2160) < mpmath.mpf(10) ** -45


def test_beta_moments():
    spec = WeightSpec(1.5, 0.5)
    with mpmath.workdps(40):
        for m in (0, 3):
            assert abs(moment_quad(spec, m) - mpmath.beta(m + 1.5, 2.5)) < mpmath.mpf(10) ** -35


@pytest.mark.parametrize("a,b,t,m", [(0.2, 0.1, 0.3, 0), (1.5, -0.5, 2.0, 5), (0.0, 1.0, 0.1, 1)])
def test_three_moment_forms(a, b, t, m):
    spec = WeightSpec(a, b, t)
    with mpmath.workdps(40):
        d, x, w = moment_quad(spec, m), moment_quad(spec, m, "xi"), moment_whittaker(spec, m)
        assert abs(d - x) < mpmath.mpf(10) ** -32 * d
        assert abs(d - w) < mpmath.mpf(10) ** -32 * d


def test_moment_derivative_shift():
    # d/dt mu_3 = -mu_2 at t = 0.4
    spec, h = WeightSpec(0.3, 0.2, 0.4), mpmath.mpf(10) ** -12
    with mpmath.workdps(60):
        fd = (moment_quad(WeightSpec(0.3, 0.2, 0.4 + 1e-6), 3) - moment_quad(WeightSpec(0.3, 0.2, 0.4 - 1e-6), 3)) / (
            mpmath.mpf(0.4 + 1e-6) - mpmath.mpf(0.4 - 1e-6))
        assert abs(fd + moment_quad(spec, 2)) < 1e-10
    del h


def test_restricted_det_at_zero_equals_full():
    spec = WeightSpec(0.5, 0.5)
    with mpmath.workdps(50):
        assert abs(hankel_det_restricted(spec, 2, 0) - hankel_det(spec, 2, 50)) < mpmath.mpf(10) ** -45


def test_heine_matches_hankel():
    spec = WeightSpec(0.2, 0.1, 0.3)
    for N in (1, 2):
        assert heine_integral(spec, N) == pytest.approx(float(hankel_det(spec, N, 60)), rel=1e-10)


def test_orthopolys_legendre_shifted():
    p = orthopolys(WeightSpec(0, 0), 4)
    assert float(p.alpha[0]) == pytest.approx(0.5)
    assert float(p.beta[1]) == pytest.approx(1 / 12)
    gammas = [float(g) for g in p.gamma]
    assert np.prod(gammas) == pytest.approx(float(hankel_det(WeightSpec(0, 0), 4)), rel=1e-12)


def test_orthopolys_orthonormal_by_quadrature():
    spec = WeightSpec(0.5, 1.0, 0.2)
    p = orthopolys(spec, 4)
    from whitkern.quadrature import tanh_sinh
    r = tanh_sinh(10, 0, 1)
    w = r.weights * r.lo_gap ** 1.0 * r.hi_gap ** 0.5 * np.exp(-0.2 / r.lo_gap)
    phi = p.orthonormal(r.nodes)
    assert np.allclose((phi * w) @ phi.T, np.eye(4), atol=1e-10)


def test_weight_spec_validation():
    with pytest.raises(ParameterError):
        WeightSpec(-1.5, 0)
    with pytest.raises(ParameterError):
        WeightSpec(0, 0, -1)


def test_divergent_moment_rejected():
    with pytest.raises(DomainError):
        moment_quad(WeightSpec(0, 0), -1)
    with pytest.raises(DomainError):
        moment_whittaker(WeightSpec(0, 0), 1)


def test_c_n_single():
    # N = 1: e^eps Gamma(alpha+1)^2 / Gamma(mu-kappa+1/2)
    with mpmath.workdps(30):
        v = c_n(0.0, 0.25, 0.5, 0.1, 1)
        assert float(v) == pytest.approx(math.exp(0.1) * math.gamma(1.5) ** 2 / math.gamma(0.75), rel=1e-14)


@given(st.floats(0, 2), st.floats(-0.5, 2), st.floats(0, 2))
def test_moments_positive_decreasing(a, b, t):
    with mpmath.workdps(20):
        table = moment_table(WeightSpec(a, b, t), 4)
    assert all(v > 0 for v in table.values)

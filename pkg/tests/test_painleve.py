import mpmath
import pytest

from whitkern.errors import ParameterError
from whitkern.moments import WeightSpec, hankel_det
from whitkern.painleve import (dlogdet_pv, h_pvi, observed_order, sigma_pv_residual, sigma_pvi_residual,
                               wronskian_check)


def test_jacobi_log_derivative_matches_finite_difference():
    N, a, b, t = 2, 0.5, 0.3, 0.7
    with mpmath.workdps(60):
        h = mpmath.mpf(10) ** -15
        fd = (mpmath.log(hankel_det(WeightSpec(a, b, t + h), N, 60))
              - mpmath.log(hankel_det(WeightSpec(a, b, mpmath.mpf(t) - h), N, 60))) / (2 * h)
        assert abs(dlogdet_pv(N, a, b, t) - fd) < 1e-20


@pytest.mark.parametrize("N,a,b,t0", [(1, 0.0, 0.0, 0.5), (2, 0.5, 0.3, 1.0), (3, 1.0, 0.0, 2.0)])
def test_sigma_pv_residual_small(N, a, b, t0):
    r = sigma_pv_residual(N, a, b, t0, h=1e-3, stencil=5)
    assert r.residual < 1e-8
    assert r.normalizer >= 1


@pytest.mark.parametrize("stencil,order", [(3, 2), (5, 4)])
def test_sigma_pv_stencil_order(stencil, order):
    coarse = sigma_pv_residual(2, 0.5, 0.3, 1.0, h=2e-3, stencil=stencil).residual
    fine = sigma_pv_residual(2, 0.5, 0.3, 1.0, h=1e-3, stencil=stencil).residual
    assert abs(observed_order(coarse, fine) - order) < 0.3


def test_sigma_pv_precision_stable():
    r1 = sigma_pv_residual(2, 0.5, 0.3, 1.0, dps=120).residual
    r2 = sigma_pv_residual(2, 0.5, 0.3, 1.0, dps=160).residual
    assert r1 == pytest.approx(r2, rel=1e-6)


def test_sigma_pv_rejects_bad_input():
    with pytest.raises(ParameterError):
        sigma_pv_residual(0, 0, 0, 0.5)
    with pytest.raises(ParameterError):
        sigma_pv_residual(1, 0, 0, 0.0)


def test_pvi_hamiltonian_one_point():
    # N = 1, a = b = 0: det = 1 - s, so H = s(1 - s) * (-1/(1 - s)) = -s
    with mpmath.workdps(40):
        assert abs(h_pvi(1, 0, 0, mpmath.mpf(3) / 10) + mpmath.mpf(3) / 10) < 1e-35


@pytest.mark.parametrize("N,a,b", [(2, 0.5, 0.3), (3, 0.5, 0.5)])
def test_sigma_pvi_reflected_fit(N, a, b):
    r = sigma_pvi_residual(N, a, b, 0.4, reflect=True)
    assert r.residual < 1e-8
    assert r.terms["max_raw_over_fit_points"] < 1e-6


def test_sigma_pvi_legendre_constants():
    # with a = b = 0 the constants are not unique; (-2, 4) is one exact choice
    r = sigma_pvi_residual(2, 0.0, 0.0, 0.4)
    assert r.residual < 1e-8
    fixed = sigma_pvi_residual(2, 0.0, 0.0, 0.4, d1=-2.0, d2=4.0)
    assert fixed.residual < 1e-8


def test_wronskian_relations():
    w = wronskian_check(2, 0.0, 0.0, 0.5)
    assert w["gap_2n1_vs_b1"] < 1e-30
    assert w["gap_2n2_vs_b"] < 1e-30
    assert w["printed_gap"] > 0.1

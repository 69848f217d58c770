import math

import mpmath
import numpy as np
import pytest
import scipy.special
from hypothesis import given, strategies as st

from whitkern import specfun as sf
from whitkern.errors import DomainError, ParameterError


@pytest.mark.parametrize("kappa,mu", [(0.7, 0.2), (0.0, 0.3), (-1.2, 0.5), (0.3, 0.0), (1.4, 0.1), (2.3, 0.4)])
@pytest.mark.parametrize("x", [0.05, 0.7, 3.0, 20.0])
def test_whittaker_matches_reference(kappa, mu, x):
    ref = float(mpmath.whitw(kappa, mu, x))
    assert sf.whittaker_w(kappa, mu, x) == pytest.approx(ref, rel=1e-11, abs=1e-300)


@pytest.mark.parametrize("kappa,m,x", [(0.5, 0.25, 1.0), (0.2, 1.0, 0.4), (-0.3, 0.7, 5.0)])
def test_whittaker_imaginary_mu(kappa, m, x):
    ref = mpmath.whitw(kappa, mpmath.mpc(0, m), x)
    assert abs(ref.imag) < 1e-12 * abs(ref.real)
    assert sf.whittaker_w(kappa, complex(0, m), x) == pytest.approx(float(ref.real), rel=1e-11)


def test_whittaker_derivative():
    for kappa, mu, x in [(0.7, 0.2, 1.0), (0.1, 0.4, 0.3), (1.6, 0.3, 4.0)]:
        ref = float(mpmath.diff(lambda z: mpmath.whitw(kappa, mu, z), x))
        assert sf.whittaker_w_deriv(kappa, mu, x) == pytest.approx(ref, rel=1e-10)


def test_whittaker_mp_high_precision():
    with mpmath.workdps(60):
        k, m, x = mpmath.mpf("0.3"), mpmath.mpf("0.2"), mpmath.mpf("1.5")
        assert abs(sf.whittaker_w_mp(k, m, x) - mpmath.whitw(k, m, x)) < mpmath.mpf(10) ** -50


def test_direct_branch_names_inequality():
    with pytest.raises(DomainError, match="mu"):
        sf.whittaker_w(2.0, 0.1, 1.0, extend=False)


def test_nonpositive_x_rejected():
    with pytest.raises((DomainError, ParameterError)):
        sf.whittaker_w(0.1, 0.2, -1.0)


@pytest.mark.parametrize("nu,x", [(0.0, 0.1), (0.3, 1.0), (1.2, 4.0), (2.5, 30.0)])
def test_bessel_k_reference(nu, x):
    assert sf.bessel_k(nu, x) == pytest.approx(scipy.special.kv(nu, x), rel=1e-11)


@given(st.floats(0.01, 40), st.floats(-20, 20))
def test_log_gamma_complex(re, im):
    z = complex(re, im)
    ref = complex(mpmath.loggamma(z))
    got = sf.log_gamma_complex(z)
    assert got.real == pytest.approx(ref.real, rel=1e-10, abs=1e-10)
    # imaginary part only up to 2 pi i
    d = (got.imag - ref.imag) / (2 * math.pi)
    assert abs(d - round(d)) < 1e-9


@given(st.floats(-0.45, 0.45), st.floats(0.05, 30.0))
def test_closed_form_w(a, x):
    assert sf.whittaker_w(a + 0.5, a, x) == pytest.approx(x ** (a + 0.5) * math.exp(-x / 2), rel=1e-10)


@given(st.floats(0.0, 1.5), st.floats(0.2, 10.0))
def test_whittaker_ode(mu, x):
    # W'' = (1/4 - kappa/x + (mu^2 - 1/4)/x^2) W, with W'' from the derivative formula
    kappa, h = 0.4, 1e-4 * x
    d2 = (sf.whittaker_w_deriv(kappa, mu, x + h) - sf.whittaker_w_deriv(kappa, mu, x - h)) / (2 * h)
    w = sf.whittaker_w(kappa, mu, x)
    assert d2 == pytest.approx((0.25 - kappa / x + (mu * mu - 0.25) / x ** 2) * w, rel=1e-6, abs=1e-9)


def test_incomplete_gamma_stieltjes_anchor():
    # int_0^inf e^{-y}/(1+y) dy = e E_1(1)
    assert sf.incomplete_gamma_stieltjes(0.0, 1.0) == pytest.approx(0.5963473623231940, rel=1e-12)
    for a, x in [(0.2, 0.5), (-0.3, 2.0)]:
        assert sf.incomplete_gamma_stieltjes(a, x) == pytest.approx(
            sf.incomplete_gamma_stieltjes_closed(a, x), rel=1e-10)


def test_laguerre_orthonormal():
    x, w = scipy.special.roots_genlaguerre(40, 0.5)
    phi = np.array([sf.monic_laguerre(0.5, n, x) for n in range(5)])
    g = (phi * w) @ phi.T
    assert np.allclose(g - np.diag(np.diag(g)), 0, atol=1e-8 * np.max(g))


def test_log_gamma_rejects_left_half_plane():
    with pytest.raises(DomainError):
        sf.log_gamma_complex(complex(-0.5, 1.0))


def test_index_margin():
    idx = sf.WhittakerIndex.of(0.3, 0.1)
    assert idx.margin() == pytest.approx(0.3)
    assert idx.lowered().kappa == pytest.approx(-0.7)

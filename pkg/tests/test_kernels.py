import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from whitkern.errors import ParameterError
from whitkern.kernels import (CDJacobiKernel, RaKernel, SeparableKernel, StieltjesKernel, ZeroKernel,
                              composed_kernel, factorization_lhs, factorization_rhs, integrable_kernel,
                              whittaker_dpp_kernel, whittaker_kernel)
from whitkern.moments import WeightSpec
from whitkern.quadrature import half_line, tanh_sinh


@pytest.mark.parametrize("a", [-0.3, 0.0, 0.2, 0.4])
def test_dpp_kernel_two_forms_agree(a):
    x = np.array([0.05, 0.4, 1.1, 3.0, 7.0])
    d = whittaker_dpp_kernel(a, "direct").matrix(x)
    s = whittaker_dpp_kernel(a).matrix(x)
    assert np.allclose(d, s, rtol=1e-9, atol=0)


def test_kernels_symmetric():
    x = np.array([0.3, 0.9, 2.0])
    for k in (whittaker_kernel(0.7, 0.2), integrable_kernel(0.7, 0.2), whittaker_dpp_kernel(0.2)):
        m = k.matrix(x)
        assert np.allclose(m, m.T, rtol=1e-12)


def test_diagonal_is_continuous_limit():
    k = whittaker_kernel(0.7, 0.2)
    x = 1.3
    near = k.matrix(np.array([x]), np.array([x * (1 + 1e-5)]))[0, 0]
    assert k.diag(np.array([x]))[0] == pytest.approx(near, rel=1e-4)


def test_composed_is_product_of_ra():
    rule = half_line(11, 0.0, 1.0)
    y = rule.lo_gap
    for x, z in ((0.5, 1.5), (2.0, 0.7)):
        quad = (RaKernel(0.2).matrix([x], y)[0] * rule.weights) @ RaKernel(-0.2).matrix(y, [z])[:, 0]
        assert composed_kernel(0.2).matrix([x], [z])[0, 0] == pytest.approx(quad, rel=1e-9)
        assert StieltjesKernel(0.2).matrix([x], [z])[0, 0] == pytest.approx(quad, rel=1e-9)


def test_ra_kernel_not_symmetric_but_antitransposes():
    x = np.array([0.5, 2.0])
    assert np.allclose(RaKernel(0.2).matrix(x).T, RaKernel(-0.2).matrix(x))


def test_bad_a_rejected():
    with pytest.raises(ParameterError):
        whittaker_dpp_kernel(0.5)


def test_cd_kernel_reproducing():
    k = CDJacobiKernel(WeightSpec(0.5, 0.5), 3)
    r = tanh_sinh(10, 0, 1)
    assert float(r.weights @ k.diag(r.lo_gap)) == pytest.approx(3.0, rel=1e-10)
    x0 = np.array([0.37])
    m = k.matrix(x0, r.lo_gap)[0]
    # K^2 = K for a projection
    assert float(m @ (r.weights * m)) == pytest.approx(k.diag(x0)[0], rel=1e-10)


def test_separable_and_zero():
    f = SeparableKernel((np.exp,), (2.0,))
    x = np.array([0.0, 1.0])
    assert np.allclose(f.matrix(x), 2 * np.outer(np.exp(x), np.exp(x)))
    assert np.all(ZeroKernel().matrix(x) == 0)


@pytest.mark.parametrize("kappa,mu", [(0.7, 0.2), (0.5, 0.25j), (0.3, 0.0)])
def test_factorization(kappa, mu):
    for x, y in ((0.3, 2.5), (1.3, 0.7), (4.0, 4.004)):
        assert float(np.squeeze(factorization_lhs(kappa, mu, x, y))) == pytest.approx(
            float(np.squeeze(factorization_rhs(kappa, mu, x, y))), rel=1e-9)


@given(st.floats(-0.45, 0.45), st.floats(0.01, 20.0), st.floats(0.01, 20.0))
def test_dpp_kernel_psd_2x2(a, x, y):
    m = whittaker_dpp_kernel(a).matrix(np.array([x, y]))
    assert m[0, 0] > 0 and m[1, 1] > 0
    assert m[0, 0] * m[1, 1] - m[0, 1] ** 2 >= -1e-12 * m[0, 0] * m[1, 1]


@given(st.floats(-0.45, 0.45), st.floats(0.01, 20.0))
def test_dpp_diag_matches_matrix(a, x):
    k = whittaker_dpp_kernel(a)
    assert k.diag(np.array([x]))[0] == pytest.approx(k.matrix(np.array([x]))[0, 0], rel=1e-12)


def test_small_x_diagonal_grows_like_inverse_x():
    k = whittaker_dpp_kernel(0.0)
    x = np.array([1e-6, 1e-7])
    v = x * k.diag(x)
    assert v[1] == pytest.approx(v[0], rel=1e-3)
    assert v[0] == pytest.approx(1 / math.pi ** 2, rel=1e-3)

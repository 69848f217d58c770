from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from whitkern import numerics
from whitkern.errors import ContractError, SingularityError


def hilbert_det_exact(n):
    m = [[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for k in range(n):
        p = next(i for i in range(k, n) if m[i][k] != 0)
        if p != k:
            m[k], m[p] = m[p], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return det


@pytest.mark.parametrize("n", [2, 4, 7])
def test_mp_det_matches_exact_hilbert(n):
    with numerics.digits(60):
        m = numerics.as_big(np.array([[1.0 / (i + j + 1) for j in range(n)] for i in range(n)]))
        # rebuild with exact rationals so the input has no float rounding
        m = np.array([[mpmath.mpf(1) / (i + j + 1) for j in range(n)] for i in range(n)], dtype=object)
        d = numerics.det(m)
        exact = hilbert_det_exact(n)
        assert abs(d - mpmath.mpf(exact.numerator) / exact.denominator) < mpmath.mpf(10) ** -50 * abs(d)


def test_float_det_and_solve():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((6, 6))
    assert numerics.det(a) == pytest.approx(np.linalg.det(a), rel=1e-12)
    b = rng.standard_normal(6)
    assert np.allclose(a @ numerics.solve(a, b), b)


def test_mp_solve_residual():
    with numerics.digits(50):
        a = numerics.as_big(np.array([[4.0, 1.0, 0.5], [1.0, 3.0, 0.2], [0.5, 0.2, 2.0]]))
        b = numerics.as_big(np.array([1.0, 2.0, 3.0]))
        x = numerics.solve(a, b)
        r = a.dot(x) - b
        assert max(abs(v) for v in r) < mpmath.mpf(10) ** -45


def test_singular_solve_raises():
    with pytest.raises(SingularityError):
        numerics.solve(numerics.as_big(np.array([[1.0, 2.0], [2.0, 4.0]])),
                       numerics.as_big(np.array([1.0, 1.0])))


def test_singular_det_is_zero():
    assert numerics.det(numerics.as_big(np.array([[1.0, 2.0], [2.0, 4.0]]))) == 0


def test_sym_eig_descending_and_orthonormal():
    a = np.array([[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]])
    vals, vecs = numerics.sym_eig(a)
    assert np.all(np.diff(vals) <= 0)
    assert np.allclose(vecs.T @ vecs, np.eye(3))
    assert np.allclose(a @ vecs, vecs * vals)


def test_sym_eig_rejects_nonsymmetric():
    with pytest.raises(ContractError):
        numerics.sym_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_cholesky_rejects_indefinite():
    with pytest.raises(ContractError):
        numerics.cholesky(np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_digits_context_restores():
    before = mpmath.mp.dps
    with numerics.digits(77):
        assert mpmath.mp.dps == 77
    assert mpmath.mp.dps == before


@given(st.lists(st.floats(-2, 2), min_size=9, max_size=9), st.lists(st.floats(-2, 2), min_size=9, max_size=9))
def test_det_multiplicative(xs, ys):
    a = np.array(xs).reshape(3, 3) + 3 * np.eye(3)
    b = np.array(ys).reshape(3, 3) + 3 * np.eye(3)
    assert numerics.det(a @ b) == pytest.approx(numerics.det(a) * numerics.det(b), rel=1e-9, abs=1e-9)


@given(st.lists(st.floats(-1, 1), min_size=4, max_size=4))
def test_mp_and_float_det_agree(xs):
    a = np.array(xs).reshape(2, 2) + 2 * np.eye(2)
    with numerics.digits(30):
        assert float(numerics.det(numerics.as_big(a))) == pytest.approx(numerics.det(a), rel=1e-12, abs=1e-14)

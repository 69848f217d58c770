import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from whitkern import dpp
from whitkern.errors import ContractError, ParameterError
from whitkern.kernels import CDJacobiKernel, SeparableKernel, ZeroKernel, whittaker_dpp_kernel
from whitkern.moments import WeightSpec

K = whittaker_dpp_kernel(0.2)
IV = (1e-3, 4.0)


@pytest.fixture(scope="module")
def dec():
    return dpp.mercer(K, IV, 120)


def test_projection_kernel_spectrum():
    d = dpp.mercer(CDJacobiKernel(WeightSpec(0.0, 0.0), 3), (0.0, 1.0), 20)
    assert np.allclose(d.eigenvalues[:3], 1.0, atol=1e-10)
    assert np.all(d.eigenvalues[3:] < 1e-10)


def test_mercer_eigenvalues_in_unit_interval(dec):
    assert 0 < dec.eigenvalues[0] < 1
    assert dec.orthonormality_error() < 1e-10
    assert dec.trace() == pytest.approx(dpp.expected_count(K, IV), rel=1e-6)


def test_top_eigenvalue_grows_with_interval():
    small = dpp.mercer(K, (1e-3, 2.0), 100).eigenvalues[0]
    large = dpp.mercer(K, IV, 100).eigenvalues[0]
    assert large >= small - 1e-12


def test_eigenfunction_interpolation_on_grid(dec):
    phi = dec.eigenfunctions(dec.grid.nodes, 3)
    assert np.allclose(phi, dec.eigenfunctions_on_grid()[:, :3].T, rtol=1e-8, atol=1e-10)


def test_invalid_kernel_rejected():
    with pytest.raises(ContractError):
        dpp.mercer(SeparableKernel((np.ones_like,), (2.0,)), (0.0, 1.0), 20)


def test_gap_probability_monotone_and_trivial():
    vals = [p for _, p in dpp.gap_curve(K, [0.5, 1.0, 2.0, 4.0])]
    assert all(0 < v <= 1 for v in vals)
    assert all(v1 <= v0 for v0, v1 in zip(vals, vals[1:]))
    assert dpp.gap_probability(K, 1e-4) == 1.0
    with pytest.raises(ParameterError):
        dpp.gap_probability(K, -1.0)


def test_gap_probability_depends_on_cutoff():
    k0 = whittaker_dpp_kernel(0.0)
    assert dpp.gap_probability(k0, 20.0, lo=1e-10, n=160) < 0.05
    assert dpp.gap_probability(k0, 20.0, lo=1e-3) > 0.3


def test_gap_equals_count_zero(dec):
    assert dpp.count_distribution(dec.eigenvalues)[0] == pytest.approx(dpp.gap_probability(K, 4.0), rel=1e-8)


def test_count_distribution_sums_to_one():
    p = dpp.count_distribution([0.2, 0.9, 0.5])
    assert p.sum() == pytest.approx(1.0)
    assert p[3] == pytest.approx(0.2 * 0.9 * 0.5)


def test_janossy_one_point_integrates_to_p1(dec):
    data = dpp.janossy_data(K, IV, 120)
    x, w = data.op.grid.nodes, data.op.grid.weights
    total = sum(wi * dpp.janossy_density(K, IV, [xi], data=data) for xi, wi in zip(x, w))
    assert total == pytest.approx(dpp.count_distribution(dec.eigenvalues)[1], rel=1e-6)
    with pytest.raises(ParameterError):
        dpp.janossy_density(K, IV, [5.0], data=data)


def test_correlation_vanishes_on_coincidence():
    assert dpp.correlation(K, [1.0, 1.0]) == pytest.approx(0.0, abs=1e-12)
    assert dpp.correlation(K, [1.0]) == pytest.approx(K.diag(np.array([1.0]))[0])
    assert dpp.correlation(K, []) == 1.0


def test_generating_function_reduces_to_gap():
    g = dpp.generating_function_det(K, (1e-3, 1.0), (1.0, 4.0), 0.0, 0.0)
    assert g == pytest.approx(dpp.gap_probability(K, 4.0), rel=1e-6)
    assert dpp.generating_function_det(K, (1e-3, 1.0), (1.0, 4.0), 1.0, 1.0) == pytest.approx(1.0)
    with pytest.raises(ParameterError):
        dpp.generating_function_det(K, (0.0, 2.0), (1.0, 4.0), 0.5, 0.5)


def test_sampler_reproducible(dec):
    a = dpp.Sampler(dec, 512).sample(5, 7)
    b = dpp.Sampler(dec, 512).sample(5, 7)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    for s in a:
        assert np.all((s >= IV[0]) & (s <= IV[1]))
        assert np.all(np.diff(s) >= 0)


def test_sample_prefix_stable(dec):
    # per-sample streams: the first draws do not depend on how many are requested
    a = dpp.Sampler(dec, 512).sample(3, 11)
    b = dpp.Sampler(dec, 512).sample(6, 11)
    assert all(np.array_equal(x, y) for x, y in zip(a, b[:3]))


def test_zero_kernel_samples_empty():
    d = dpp.mercer(ZeroKernel(), (0.0, 1.0), 20)
    assert all(s.size == 0 for s in dpp.Sampler(d, 64).sample(4, 0))


def test_sample_config_validation():
    with pytest.raises(ParameterError):
        dpp.SampleConfig(seed=-1, n_samples=1, interval=IV)
    with pytest.raises(ParameterError):
        dpp.sample(dpp.SampleConfig(seed=1, n_samples=1, interval=IV))


def test_counting_statistics_agree(dec):
    s = dpp.Sampler(dec, 1024).sample(2000, 3)
    st_ = dpp.count_stats(dpp.counts_in(s, IV))
    assert abs(st_.mean - dec.trace()) < 5 * st_.mean_se
    assert abs(st_.var - dpp.count_variance(K, IV, 120)) < 5 * st_.var_se


def test_count_stats_constant():
    c = dpp.count_stats([2, 2, 2, 2])
    assert c.mean == 2 and c.var == 0 and c.mean_se == 0


@settings(max_examples=10)
@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_generating_function_in_unit_interval(z1, z2):
    g = dpp.generating_function_det(K, (1e-3, 1.0), (1.0, 4.0), z1, z2, n=40)
    assert -1e-12 <= g <= 1 + 1e-12

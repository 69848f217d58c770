"""The acceptance suite: twelve numerical criteria, each a list of CheckResult
rows.  Used by tests/test_acceptance.py and by ``whitkern report``.

Every check is deterministic; Monte Carlo checks draw from PCG64 streams
split from a single seed.
"""
import itertools
import math

import mpmath
import numpy as np
import scipy.special

from . import dpp, painleve
from .kernels import (CDJacobiKernel, ZeroKernel, factorization_lhs, factorization_rhs,
                      whittaker_dpp_kernel)
from .moments import WeightSpec, hankel_det, heine_integral, moment_quad, moment_whittaker
from .operators import (block_inverse_check, composed_kernel_check, det_identity_25, det_identity_420,
                        diag_identity_412, eigenrelation_610, gap_ratio_check,
                        log_det_endpoint_derivative, norm_614, norm_bound, nystrom,
                        resolvent_kernel_a, trace_check)
from .results import CheckResult, rel_err
from .specfun import bessel_k, whittaker_w

DEFAULT_SEED = 20240601

TITLES = {
    1: "closed-form Whittaker and Bessel anchors",
    2: "three moment formulas agree",
    3: "Hankel determinant equals the Heine multiple integral",
    4: "Fredholm determinant of R_eps equals the Laguerre-basis Hankel determinant",
    5: "restricted Hankel ratio equals the Christoffel-Darboux Fredholm determinant",
    6: "Whittaker kernel factorization",
    7: "resolvent diagonal and endpoint log-derivative identities",
    8: "paired Hankel determinant identity",
    9: "composed kernel, block inverse and skew-adjointness",
    10: "Stieltjes eigenrelation, operator norm and trace",
    11: "sigma-form Painleve V and VI residuals",
    12: "determinantal point process statistics",
}


def _mp_rel(a, b):
    if isinstance(a, mpmath.mpf) and isinstance(b, mpmath.mpf):
        return float(abs(a - b) / max(abs(a), abs(b)))
    return rel_err(a, b)


def _max_row(name, params, pairs, tol, **extra):
    errs = [_mp_rel(l, r) for l, r in pairs]
    i = int(np.argmax(errs))
    return CheckResult(name, params, float(pairs[i][0]), float(pairs[i][1]), float(errs[i]), tol,
                       extra)


def _order_row(name, params, residuals, ratio, lo=1.7, hi=2.3, **extra):
    orders = [painleve.observed_order(r0, r1, ratio) for r0, r1 in zip(residuals, residuals[1:])]
    worst = min(orders, key=lambda o: abs(o - 2))
    return CheckResult(name, params, worst, 2.0, abs(worst - 2), hi - 2 if worst > 2 else 2 - lo,
                       {"residuals": residuals, "orders": orders, **extra})


def criterion_1():
    pairs = []
    for a in (-0.3, 0.0, 0.3):
        for x in (0.5, 1.0, 5.0):
            pairs.append((whittaker_w(a + 0.5, a, x), x ** (a + 0.5) * math.exp(-x / 2)))
    rows = [_max_row("whittaker-closed-form", {"a": "-0.3,0,0.3", "x": "0.5,1,5"}, pairs, 1e-10)]
    pairs = []
    for mu in (0.0, 0.3, 1.2):
        for z in (0.25, 1.0, 4.0):
            pairs.append((bessel_k(mu, z), math.sqrt(math.pi / (2 * z)) * whittaker_w(0.0, mu, 2 * z)))
    rows.append(_max_row("bessel-whittaker", {"mu": "0,0.3,1.2", "z": "0.25,1,4"}, pairs, 1e-9))
    pairs = [(bessel_k(mu, z), scipy.special.kv(mu, z)) for mu in (0.0, 0.3, 1.2) for z in (0.25, 1.0, 4.0)]
    rows.append(_max_row("bessel-reference", {"mu": "0,0.3,1.2", "z": "0.25,1,4"}, pairs, 1e-9))
    return rows


def criterion_2(dps=30):
    direct_xi, direct_w, xi_w = [], [], []
    with mpmath.workdps(dps):
        for a, b, t in itertools.product((0.0, 0.5, 1.5), (-0.5, 0.0, 1.0), (0.1, 0.5, 2.0)):
            spec = WeightSpec(a, b, t)
            for m in (0, 1, 5):
                d = moment_quad(spec, m, "direct")
                x = moment_quad(spec, m, "xi")
                w = moment_whittaker(spec, m)
                direct_xi.append((d, x))
                direct_w.append((d, w))
                xi_w.append((x, w))
    grid = {"a": "0,0.5,1.5", "b": "-0.5,0,1", "t": "0.1,0.5,2", "m": "0,1,5", "digits": dps}
    return [_max_row("moments-direct-vs-xi", grid, direct_xi, 1e-9),
            _max_row("moments-direct-vs-whittaker", grid, direct_w, 1e-9),
            _max_row("moments-xi-vs-whittaker", grid, xi_w, 1e-9)]


def criterion_3():
    spec = WeightSpec(0.2, 0.1, 0.3)
    rows = []
    for N in (1, 2):
        with mpmath.workdps(60):
            d = float(hankel_det(spec, N, 60))
        h = heine_integral(spec, N)
        rows.append(CheckResult("heine-integral", {"N": N, "a": 0.2, "b": 0.1, "t": 0.3}, d, h,
                                rel_err(d, h), 1e-8))
    return rows


def criterion_4():
    r = det_identity_25((0.0, 0.25), eps=0.1, lam=1.0)
    trend = r.extra["residual_trend"]
    # residual is the largest increase between successive truncation sizes
    growth = max(0.0, *(r1 - r0 for r0, r1 in zip(trend, trend[1:])))
    dec = CheckResult("hankel-operator-det-refinement", {"kappa": 0.0, "mu": 0.25, "sizes": "20,40,80"},
                      trend[0], trend[-1], growth, 0.0, {"residual_trend": trend})
    return [r, dec]


def criterion_5():
    spec = WeightSpec(0.5, 0.5)
    rows = []
    for s in (0.1, 0.2, 0.5):
        ratio, gram, nys = gap_ratio_check(spec, 3, s)
        rows.append(CheckResult("gap-ratio", {"N": 3, "a": 0.5, "b": 0.5, "s": s}, ratio, gram,
                                rel_err(ratio, gram), 1e-8, {"nystrom": nys}))
    return rows


def criterion_6():
    pts = np.array([0.3, 0.7, 1.3, 2.5, 4.0])
    rows = []
    for kappa, mu in ((0.7, 0.2), (0.5, 0.25j), (0.3, 0.0)):
        pairs = []
        for x, y in itertools.product(pts, pts):
            if x == y:
                y = y * (1 + 1e-3)
            pairs.append((factorization_lhs(kappa, mu, x, y), factorization_rhs(kappa, mu, x, y)))
        rows.append(_max_row("kernel-factorization", {"kappa": kappa, "mu": str(mu)}, pairs, 1e-7))
    return rows


def criterion_7():
    a = 0.2
    kern = resolvent_kernel_a(a)
    hs = (2e-2, 1e-2, 5e-3)
    res = [diag_identity_412(kern, (0.5, 2.5), 1.2, h=h)[2] for h in hs]
    rows = [CheckResult("resolvent-diagonal", {"a": a, "interval": "0.5,2.5", "x": 1.2, "h": hs[-1]},
                        res[-1], 0.0, res[-1], 1e-3),
            _order_row("resolvent-diagonal-order", {"a": a, "h": "2e-2,1e-2,5e-3"}, res, 2.0)]
    hs = (1e-2, 5e-3, 2.5e-3)
    res = []
    for h in hs:
        (d1, d2), (s1, s2) = log_det_endpoint_derivative(kern, 0.5, 3.0, h)
        res.append(max(abs(d1 - s1), abs(d2 - s2)))
    rows += [CheckResult("endpoint-log-derivative", {"a": a, "interval": "0.5,3", "h": hs[-1]},
                         res[-1], 0.0, res[-1], 1e-3),
             _order_row("endpoint-log-derivative-order", {"a": a, "h": "1e-2,5e-3,2.5e-3"}, res, 2.0)]
    return rows


def criterion_8():
    r = det_identity_420((0.3, 0.1), (0.0, 4.0), 100)
    blk = CheckResult("paired-hankel-block", dict(r.params), r.extra["det_block_4x4"], r.rhs,
                      r.extra["block_vs_scalar"], 1e-6)
    r.extra = {}
    return [r, blk]


def criterion_9():
    rows = []
    pairs = [composed_kernel_check(0.2, x, z) for x, z in ((0.5, 1.5), (1.0, 3.0), (2.0, 0.7))]
    rows.append(_max_row("composed-kernel", {"a": 0.2}, pairs, 1e-7))
    inv_err, skew = block_inverse_check(0.2)
    rows.append(CheckResult("block-inverse", {"a": 0.2, "interval": "0.05,10", "n": 60}, inv_err, 0.0,
                            inv_err, 1e-8))
    rows.append(CheckResult("skew-adjoint", {"a": 0.2, "interval": "0.05,10", "n": 60}, skew, 0.0,
                            skew, 1e-12))
    return rows


def criterion_10():
    rows = [eigenrelation_610(a, m) for a, m in ((0.0, 0.0), (0.0, 1.0), (0.2, 0.5), (-0.3, 0.7), (0.3, 0.0))]
    for a in (-0.3, 0.0, 0.3):
        bound = norm_bound(a)
        vals = [norm_614(a, b) for b in (25.0, 50.0, 100.0, 200.0)]
        ratio = vals[-1] / bound
        # residual is the distance of the ratio outside [0.90, 1 + 1e-6 / bound]
        rows.append(CheckResult("norm-bound", {"a": a, "cutoff": 200.0, "lo": 1e-40}, vals[-1], bound,
                                max(0.0, 0.90 - ratio, ratio - 1 - 1e-6 / bound), 0.0, {"ratio": ratio}))
        steps = [v1 - v0 for v0, v1 in zip(vals, vals[1:])]
        rows.append(CheckResult("norm-monotone", {"a": a, "cutoffs": "25,50,100,200"}, vals[0], vals[-1],
                                max(0.0, -min(steps)), 1e-12, {"values": vals}))
    kern = whittaker_dpp_kernel(0.2)
    tr, integral = trace_check(kern, (1e-3, 4.0))
    rows.append(CheckResult("trace", {"a": 0.2, "interval": "1e-3,4"}, tr, integral, rel_err(tr, integral), 1e-6))
    return rows


def criterion_11():
    rows = []
    for N, a, b, t0 in ((1, 0.0, 0.0, 0.5), (2, 0.5, 0.0, 0.2), (3, 0.0, 0.5, 0.5)):
        s = painleve.sigma_pv_residual(N, a, b, t0)
        rows.append(CheckResult("sigma-pv", {"N": N, "a": a, "b": b, "t0": t0, "h": 1e-3},
                                s.terms["lhs"], s.terms["lhs"] - s.residual * s.normalizer,
                                s.residual, 1e-4))
    N, a, b, t0 = 2, 0.5, 0.0, 0.2
    res = [painleve.sigma_pv_residual(N, a, b, t0, h=h, stencil=3).residual for h in (2e-3, 1e-3)]
    rows.append(_order_row("sigma-pv-order", {"N": N, "a": a, "b": b, "t0": t0, "h": "2e-3,1e-3"}, res, 2.0))
    for N, a, b, reflect in ((2, 0.0, 0.0, False), (3, 0.5, 0.5, True), (2, 0.5, 0.3, True)):
        s = painleve.sigma_pvi_residual(N, a, b, 0.5, reflect=reflect)
        rows.append(CheckResult("sigma-pvi-fit", {"N": N, "a": a, "b": b, "s0": 0.5, "reflect": reflect,
                                                  "d1": s.fit[0], "d2": s.fit[1]},
                                s.fit[0], s.fit[1], s.residual, 1e-3,
                                {"sigma(0)": -s.fit[0], "sigma'(0)": -s.fit[1]}))
    nu3 = (2 * 3 + 1.0) / 2
    res = [painleve.sigma_pvi_residual(3, 0.5, 0.5, 0.5, h=h, d1=-nu3 ** 2 / 2, d2=nu3 ** 2, stencil=3,
                                       reflect=True).residual for h in (2e-3, 1e-3)]
    rows.append(_order_row("sigma-pvi-order", {"N": 3, "a": 0.5, "b": 0.5, "h": "2e-3,1e-3"}, res, 2.0))
    return rows


def criterion_12(seed=DEFAULT_SEED, n_samples=20000):
    a, interval = 0.2, (1e-3, 4.0)
    kern = whittaker_dpp_kernel(a)
    raw = nystrom(kern, interval, 200, "log-gauss").eigenvalues
    rows = [CheckResult("dpp-eigenvalues", {"a": a, "interval": "1e-3,4"}, float(raw.min()), float(raw.max()),
                        max(0.0, -raw.min(), raw.max() - 1), 1e-10)]
    dec = dpp.mercer(kern, interval)
    seeds = np.random.SeedSequence(seed).generate_state(3, np.uint64)
    samples = dpp.Sampler(dec).sample(n_samples, int(seeds[0]))
    st = dpp.count_stats(dpp.counts_in(samples, interval))
    rows.append(CheckResult("dpp-mean-count", {"a": a, "samples": n_samples, "seed": seed}, st.mean, dec.trace(),
                            abs(st.mean - dec.trace()) / st.mean_se, 3.0))
    for B, tag in ((interval, "interval"), ((0.01, 1.0), "0.01,1")):
        st = dpp.count_stats(dpp.counts_in(samples, B))
        var = dpp.count_variance(kern, B)
        rows.append(CheckResult("dpp-count-variance", {"a": a, "B": tag, "samples": n_samples}, st.var, var,
                                abs(st.var - var) / st.var_se, 4.0))
    edges = np.geomspace(*interval, 11)
    means, ses = dpp.binned_intensity(samples, edges)
    expect = np.array([dpp.expected_count(kern, (lo, hi)) for lo, hi in zip(edges, edges[1:])])
    z = np.abs(means - expect) / ses
    rows.append(CheckResult("dpp-binned-intensity", {"a": a, "bins": 10}, float(means[np.argmax(z)]),
                            float(expect[np.argmax(z)]), float(z.max()), 3.0))
    mc, se, det, zres = dpp.generating_function_check(kern, interval, (1e-3, 1.0), (2.0, 3.0), 0.5, 0.5, samples)
    rows.append(CheckResult("dpp-generating-function", {"a": a, "B1": "1e-3,1", "B2": "2,3", "z": "0.5,0.5"},
                            mc, det, zres, 4.0))
    cd = dpp.mercer(CDJacobiKernel(WeightSpec(0.0, 0.0), 3), (0.0, 1.0), 60)
    counts = {len(s) for s in dpp.Sampler(cd).sample(n_samples, int(seeds[1]))}
    rows.append(CheckResult("dpp-projection-count", {"N": 3, "samples": n_samples}, float(min(counts)),
                            float(max(counts)), float(max(abs(c - 3) for c in counts)), 0.0))
    empty = dpp.Sampler(dpp.mercer(ZeroKernel(), interval, 40)).sample(100, int(seeds[2]))
    rows.append(CheckResult("dpp-zero-kernel", {"samples": 100}, float(sum(map(len, empty))), 0.0,
                            float(sum(map(len, empty))), 0.0))
    return rows


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
            11: criterion_11, 12: criterion_12}


def run(which=None, seed=DEFAULT_SEED):
    """{criterion: [CheckResult]} for the selected criteria (all by default)."""
    out = {}
    for k in which or sorted(CRITERIA):
        out[k] = CRITERIA[k](seed) if k == 12 else CRITERIA[k]()
    return out

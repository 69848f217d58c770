"""Residuals of the sigma forms of Painleve V and VI for log-derivatives of
Hankel determinants.

First log-derivatives are exact in t: for the Pollaczek-Jacobi moments
d/dt mu_m = -mu_{m-1}, and for the restricted Jacobi determinant the
derivative of the moment matrix in the lower endpoint is rank one.  Both are
assembled with Jacobi's formula d log det M = tr(M^{-1} M').  Higher
derivatives of H use central differences on a uniform t grid.
"""
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
from scipy.optimize import least_squares

from . import numerics
from .errors import ParameterError
from .moments import WeightSpec, digits_for, hankel_det, hankel_matrix, moment_quad

# central-difference weights for (f', f'') at offsets -k..k
# (exact fractions: float weights carry 1e-17 errors that 1/h^2 amplifies)
STENCILS = {
    3: ((-1, 0, 1), tuple(map(Fraction, ("-1/2", "0", "1/2"))), (1, -2, 1)),
    5: ((-2, -1, 0, 1, 2), tuple(map(Fraction, ("1/12", "-2/3", "0", "2/3", "-1/12"))),
        tuple(map(Fraction, ("-1/12", "4/3", "-5/2", "4/3", "-1/12")))),
}


@dataclass
class SigmaSample:
    t_grid: list
    logdet: list
    H: list
    H1: list
    H2: list
    params: tuple
    fit: tuple | None = None
    terms: dict = field(default_factory=dict)
    residual: float = float("nan")
    normalizer: float = float("nan")


def _mp(v):
    return mpmath.mpf(v) if not isinstance(v, mpmath.mpf) else v


def _exact(c):
    c = Fraction(c)
    return mpmath.mpf(c.numerator) / c.denominator


def _derivs(vals, h, stencil):
    offs, w1, w2 = STENCILS[stencil]
    k = len(offs) // 2
    w1, w2 = [_exact(c) for c in w1], [_exact(c) for c in w2]
    d1 = [sum(c * vals[i + o] for o, c in zip(offs, w1)) / h for i in range(k, len(vals) - k)]
    d2 = [sum(c * vals[i + o] for o, c in zip(offs, w2)) / h ** 2 for i in range(k, len(vals) - k)]
    return d1, d2


def dlogdet_pv(N, a, b, t):
    """d/dt log D_N(t;a,b) by Jacobi's formula with exact moment derivatives."""
    spec = WeightSpec(a, b, _mp(t))
    m = hankel_matrix(spec, N)
    dm = -hankel_matrix(spec, N, shift=-1)
    return sum(numerics.solve(m, dm[:, j])[j] for j in range(N))


def h_tilde(N, a, b, t):
    return _mp(t) * dlogdet_pv(N, a, b, t) - N * (N + _mp(a) + _mp(b))


def pv_terms(N, a, b, t, H, H1, H2):
    a, b = _mp(a), _mp(b)
    c = b + 2 * a + t
    return {
        "lhs": (t * H2) ** 2,
        "cubic": -4 * t * H1 ** 3,
        "quadratic": H1 ** 2 * (4 * H + c ** 2 + 4 * N * (N + a + b) - 4 * a * (b + a)),
        "linear": 2 * H1 * (-c * H - 2 * N * a * (N + b + a)),
        "constant": H ** 2,
    }


def _normalized(terms):
    lhs = terms["lhs"]
    rhs = sum(v for k, v in terms.items() if k != "lhs")
    # floored at 1 so that a solution that is identically 0 does not amplify rounding
    norm = max(max(abs(v) for v in terms.values()), mpmath.mpf(1))
    return float(abs(lhs - rhs) / norm), float(norm)


def sigma_pv_residual(N, a, b, t0, h=1e-3, stencil=5, dps=None):
    """Normalized residual of the sigma-PV equation for H~_N at t0."""
    if N < 1:
        raise ParameterError("need N >= 1")
    if not t0 > 0:
        raise ParameterError("need t0 > 0")
    dps = digits_for(N) if dps is None else dps
    k = stencil // 2
    with mpmath.workdps(dps):
        hh, tc = _mp(h), _mp(t0)
        ts = [tc + j * hh for j in range(-k, k + 1)]
        H = [h_tilde(N, a, b, t) for t in ts]
        d1, d2 = _derivs(H, hh, stencil)
        terms = pv_terms(N, a, b, tc, H[k], d1[0], d2[0])
        resid, norm = _normalized(terms)
        logdet = [mpmath.log(hankel_det(WeightSpec(a, b, t), N, dps)) for t in ts]
    return SigmaSample([float(t) for t in ts], logdet, [float(v) for v in H], [float(d1[0])],
                       [float(d2[0])], (N, a, b), None, {k_: float(v) for k_, v in terms.items()},
                       resid, norm)


# ---- sigma PVI for the Jacobi determinant restricted to [s, 1] ------------------

def nus(N, a, b):
    return ((a + b) / 2, (b - a) / 2, (2 * N + a + b) / 2, (2 * N + a + b) / 2)


def h_pvi(N, a, b, s):
    """H_N(s) = s(1-s) d/ds log det[int_s^1 x^{j+k} x^b (1-x)^a dx]."""
    spec = WeightSpec(a, b)
    s = _mp(s)
    m = hankel_matrix(spec, N, lo=s)
    v = np.array([s ** j for j in range(N)], dtype=object)
    w = s ** _mp(b) * (1 - s) ** _mp(a)
    dlog = -w * np.dot(v, numerics.solve(m, v))
    return s * (1 - s) * dlog


def pvi_terms(t, sigma, s1, s2, nu):
    n1, n2, n3, n4 = nu
    return {
        "lhs1": s1 * (t * (t - 1) * s2) ** 2,
        "lhs2": (2 * s1 * (t * s1 - sigma) - s1 ** 2 - n1 * n2 * n3 * n4) ** 2,
        "rhs": -(s1 + n1 ** 2) * (s1 + n2 ** 2) * (s1 + n3 ** 2) * (s1 + n4 ** 2),
    }


def _pvi_residual_raw(t, H, H1, H2, d1, d2, nu):
    terms = pvi_terms(t, H - d1 - t * d2, H1 - d2, H2, nu)
    return sum(terms.values()), terms


def pvi_samples(N, a, b, s0, h=1e-3, stencil=5, points=5, reflect=False, dps=None):
    """(t, H, H', H'') at ``points`` consecutive grid points centered on s0.

    With ``reflect`` the ODE variable is t = 1 - s (the gap measured from the
    other end of the interval); H is unchanged and H' changes sign.
    """
    dps = digits_for(N) if dps is None else dps
    k = stencil // 2
    half = points // 2
    with mpmath.workdps(dps):
        hh, sc = _mp(h), _mp(s0)
        ss = [sc + j * hh for j in range(-half - k, half + k + 1)]
        H = [h_pvi(N, a, b, s) for s in ss]
        d1, d2 = _derivs(H, hh, stencil)
        out = []
        for i in range(points):
            s = ss[i + k]
            t, hd1 = (1 - s, -d1[i]) if reflect else (s, d1[i])
            out.append((t, H[i + k], hd1, d2[i]))
    return out


def fit_d(samples, nu, x0=(0.0, 0.0)):
    """Least-squares (d1, d2) for the raw PVI residual over the samples."""
    data = [tuple(float(v) for v in s) for s in samples]

    def fun(p):
        return [_pvi_residual_raw(t, H, H1, H2, p[0], p[1], nu)[0] for t, H, H1, H2 in data]

    best = None
    for start in (x0, (0.0, -nu[2] ** 2), (-nu[2] ** 2 / 2, nu[2] ** 2), (1.0, 1.0)):
        r = least_squares(fun, np.asarray(start, dtype=float), xtol=1e-15, ftol=1e-15, gtol=1e-15)
        if best is None or r.cost < best.cost:
            best = r
    return tuple(best.x)


def sigma_pvi_residual(N, a, b, s0, h=1e-3, d1=None, d2=None, stencil=5, reflect=False, dps=None):
    """Normalized sigma-PVI residual at s0; (d1, d2) are fitted when not given.

    The returned SigmaSample.fit holds (d1, d2) and, in ``terms``, the
    equivalent initial-condition reading sigma(0) = -d1 + H(0),
    sigma'(0) = H'(0) - d2 with H(0) = 0.
    """
    nu = nus(N, a, b)
    samples = pvi_samples(N, a, b, s0, h, stencil, 5, reflect, dps)
    if d1 is None or d2 is None:
        d1, d2 = fit_d(samples, nu)
    t, H, H1, H2 = samples[2]
    with mpmath.workdps(dps or digits_for(N)):
        raw, terms = _pvi_residual_raw(t, H, H1, H2, _mp(d1), _mp(d2), [_mp(v) for v in nu])
        norm = max(max(abs(v) for v in terms.values()), mpmath.mpf(1))
        resid = float(abs(raw) / norm)
    fitted = [abs(_pvi_residual_raw(*(float(v) for v in s), d1, d2, nu)[0]) for s in samples]
    return SigmaSample([float(s[0]) for s in samples], [], [float(s[1]) for s in samples],
                       [float(s[2]) for s in samples], [float(s[3]) for s in samples], (N, a, b),
                       (float(d1), float(d2)),
                       {**{k: float(v) for k, v in terms.items()}, "reflect": reflect,
                        "max_raw_over_fit_points": max(fitted)},
                       resid, float(norm))


def observed_order(r_coarse, r_fine, ratio=2.0):
    return float(np.log(r_coarse / r_fine) / np.log(ratio))


# ---- Wronskian remark -------------------------------------------------------------

def wronskian(N, a, b, t, m_top):
    """det[f^{(i+j)}] for f = mu_{m_top}, using mu_m^{(k)} = (-1)^k mu_{m-k}."""
    spec = WeightSpec(a, b, _mp(t))
    w = np.empty((N, N), dtype=object)
    for i in range(N):
        for j in range(N):
            w[i, j] = (-1) ** (i + j) * moment_quad(spec, m_top - i - j)
    return numerics.det(w)


def wronskian_check(N, a, b, t0, dps=None):
    """Compare Wronskians of mu_{2N-1} and mu_{2N-2} with Hankel determinants.

    Returns a dict: ``w_2n1`` (Wronskian of mu_{2N-1}), ``d_b`` = D_N(t;a,b),
    ``d_b1`` = D_N(t;a,b+1), ``w_2n2`` (Wronskian of mu_{2N-2}), and relative
    gaps for the printed pairing (w_2n1 vs d_b) and the two exact ones.
    """
    dps = digits_for(N) if dps is None else dps
    with mpmath.workdps(dps):
        w1 = wronskian(N, a, b, t0, 2 * N - 1)
        w2 = wronskian(N, a, b, t0, 2 * N - 2)
        db = hankel_det(WeightSpec(a, b, _mp(t0)), N, dps)
        db1 = hankel_det(WeightSpec(a, b + 1, _mp(t0)), N, dps)
        rel = lambda x, y: float(abs(abs(x) - abs(y)) / abs(y))
        return {"w_2n1": float(w1), "w_2n2": float(w2), "d_b": float(db), "d_b1": float(db1),
                "printed_gap": rel(w1, db), "gap_2n1_vs_b1": rel(w1, db1), "gap_2n2_vs_b": rel(w2, db),
                "sign_2n1": int(mpmath.sign(w1)), "sign_2n2": int(mpmath.sign(w2))}

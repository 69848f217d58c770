"""Pollaczek-Jacobi weights x^b (1-x)^a e^{-t/x} on (0,1), their moments,
Hankel determinants and orthogonal polynomials.

Moments and determinants are mpf values at the mpmath working precision;
``hankel_det`` raises the precision itself following ``digits_for``.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from . import numerics
from .errors import DomainError, ParameterError, PrecisionError
from .quadrature import half_line_mp, tanh_sinh_mp
from .specfun import whittaker_w_mp


@dataclass(frozen=True)
class WeightSpec:
    a: float
    b: float
    t: float = 0.0
    epsilon: float = 0.0

    def __post_init__(self):
        if not (self.a > -1 and self.b > -1):
            raise ParameterError(f"need a, b > -1, got a={self.a}, b={self.b}")
        if self.t < 0 or self.epsilon < 0:
            raise ParameterError(f"need t, epsilon >= 0, got t={self.t}, epsilon={self.epsilon}")

    def with_t(self, t):
        return WeightSpec(self.a, self.b, t, self.epsilon)


def digits_for(N):
    return max(120, 20 + 10 * N)


def weight(spec, x):
    """x^b (1-x)^a e^{-t/x} (float, vectorized)."""
    x = np.asarray(x, dtype=float)
    return x ** spec.b * (1 - x) ** spec.a * np.exp(-spec.t / x)


def deformed_weight(spec, x):
    """w(x) exp(-2 eps (1/x - 1/2)) for 0 < x < 1."""
    x = np.asarray(x, dtype=float)
    if np.any((x <= 0) | (x >= 1)):
        raise DomainError("deformed_weight needs 0 < x < 1")
    return weight(spec, x) * np.exp(-2 * spec.epsilon * (1 / x - 0.5))


def _mpf(v):
    return v if isinstance(v, mpmath.mpf) else mpmath.mpf(v)


def _exponent_t(spec):
    # the deformation only shifts t and multiplies by e^{eps}
    return _mpf(spec.t) + 2 * _mpf(spec.epsilon)


@lru_cache(maxsize=4096)
def _moment_direct(a, b, t, eps, m, lo, dps):
    with mpmath.workdps(dps):
        a, b, t, eps = map(_mpf, (a, b, t, eps))
        tt = t + 2 * eps
        rule = tanh_sinh_mp(lo, 1, refine=4 if tt and not lo else 1)
        lo = _mpf(lo)
        acc = mpmath.mpf(0)
        for g0, g1, w in zip(rule.lo_gap, rule.hi_gap, rule.weights):
            x = lo + g0
            expo = (m + b) * mpmath.log(x) + a * mpmath.log(g1)
            if tt:
                expo -= tt / x
            acc += w * mpmath.exp(expo)
        return acc * mpmath.exp(eps) if eps else acc


@lru_cache(maxsize=4096)
def _moment_xi(a, b, t, eps, m, dps):
    with mpmath.workdps(dps):
        a, b, t, eps = map(_mpf, (a, b, t, eps))
        tt = t + 2 * eps
        rule = half_line_mp(0, tt)
        acc = mpmath.mpf(0)
        for r, w in zip(rule.lo_gap, rule.weights):
            acc += w * mpmath.exp((-2 - a - b - m) * mpmath.log1p(r) + a * mpmath.log(r) - tt * r)
        acc *= mpmath.exp(-tt)
        return acc * mpmath.exp(eps) if eps else acc


def moment_quad(spec, m, form="direct", lo=0):
    """mu_m = int_lo^1 x^m w(x) dx by tanh-sinh at the working precision.

    form "direct" integrates over x; form "xi" uses x = 1/xi on (1, inf),
    which needs t + 2 eps > 0 and lo = 0.  Negative m is allowed when t > 0.
    """
    tt = spec.t + 2 * spec.epsilon
    if tt == 0 and m + spec.b <= -1 and lo == 0:
        raise DomainError(f"moment m={m} diverges at x=0 when t=0")
    dps = mpmath.mp.dps
    if form == "direct":
        return _moment_direct(spec.a, spec.b, spec.t, spec.epsilon, m, lo, dps)
    if form == "xi":
        if tt <= 0:
            raise DomainError("xi-form moments need t > 0")
        if lo != 0:
            raise ParameterError("xi-form moments are for the full interval")
        return _moment_xi(spec.a, spec.b, spec.t, spec.epsilon, m, dps)
    raise ParameterError(f"unknown moment form {form!r}")


def moment_whittaker(spec, m):
    """Closed form Gamma(a+1) e^{-t/2} t^{(b+m)/2} W_{-(2a+b+m+2)/2, -(b+m+1)/2}(t)."""
    if spec.t <= 0:
        raise DomainError("Whittaker closed form for moments needs t > 0")
    if spec.epsilon:
        raise ParameterError("closed form is for the undeformed weight")
    a, b, t = _mpf(spec.a), _mpf(spec.b), _mpf(spec.t)
    kappa = -(2 * a + b + m + 2) / 2
    mu = -(b + m + 1) / 2
    return mpmath.gamma(a + 1) * mpmath.exp(-t / 2) * t ** ((b + m) / 2) * whittaker_w_mp(kappa, mu, t)


@dataclass(frozen=True)
class MomentTable:
    spec: WeightSpec
    values: tuple
    lo: float = 0.0

    def __post_init__(self):
        vals = self.values
        if any(v <= 0 for v in vals):
            raise PrecisionError("non-positive moment; raise the precision")
        if any(v2 >= v1 for v1, v2 in zip(vals, vals[1:])):
            raise PrecisionError("moments not strictly decreasing; raise the precision")


def moment_table(spec, M, lo=0, form="direct"):
    return MomentTable(spec, tuple(moment_quad(spec, m, form, lo) for m in range(M + 1)), lo)


def hankel_matrix(spec, N, lo=0, shift=0):
    """[mu_{j+k+shift}] on [lo, 1] as an object matrix."""
    mom = [moment_quad(spec, m + shift, "direct", lo) for m in range(2 * N - 1)]
    out = np.empty((N, N), dtype=object)
    for j in range(N):
        for k in range(N):
            out[j, k] = mom[j + k]
    return out


def _guarded_det(m, dps):
    ratio = numerics.pivot_ratio(m)
    if ratio > mpmath.mpf(10) ** (dps - 10):
        raise PrecisionError(
            f"Hankel pivot ratio {mpmath.nstr(ratio, 5)} exceeds 10^{dps - 10}; raise digits")
    return numerics.det(m)


def hankel_det(spec, N, dps=None):
    """D_N = det[int_0^1 x^{j+k} w(x) dx], j,k < N."""
    return hankel_det_restricted(spec, N, 0, dps)


def hankel_det_restricted(spec, N, s, dps=None):
    """det[int_s^1 x^{j+k} w(x) dx] without any constant prefactor."""
    if N < 1:
        raise ParameterError(f"need N >= 1, got {N}")
    if not 0 <= s < 1:
        raise ParameterError(f"need 0 <= s < 1, got {s}")
    dps = digits_for(N) if dps is None else dps
    with mpmath.workdps(dps):
        return _guarded_det(hankel_matrix(spec, N, s), dps)


def c_n(kappa, mu, alpha, eps, N):
    """Scale factor relating the Laguerre-basis determinant to D_N(2 eps).

    e^{eps N} Gamma(mu - kappa + 1/2)^{-N} prod_{j<N} (Gamma(j+alpha+1)/j!)^2.
    """
    kappa, mu, alpha, eps = map(_mpf, (kappa, mu, alpha, eps))
    out = mpmath.exp(eps * N) * mpmath.gamma(mu - kappa + mpmath.mpf(1) / 2) ** (-N)
    for j in range(N):
        out *= (mpmath.gamma(j + alpha + 1) / mpmath.factorial(j)) ** 2
    return out


@dataclass(frozen=True)
class OrthoPolys:
    """Monic recurrence P_{j+1} = (x - alpha_j) P_j - beta_j P_{j-1}, norms gamma_j."""
    alpha: tuple
    beta: tuple
    gamma: tuple

    @property
    def N(self):
        return len(self.gamma)

    def values(self, x, N=None):
        """Array of P_j(x), j < N, shape (N, len(x)) in double precision."""
        N = self.N if N is None else N
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros((N, len(x)))
        prev = np.zeros_like(x)
        cur = np.ones_like(x)
        for j in range(N):
            out[j] = cur
            if j + 1 < N:
                prev, cur = cur, (x - float(self.alpha[j])) * cur - float(self.beta[j]) * prev
        return out

    def orthonormal(self, x, N=None):
        N = self.N if N is None else N
        g = np.array([float(v) for v in self.gamma[:N]])
        return self.values(x, N) / np.sqrt(g)[:, None]


def orthopoly_from_moments(table, N):
    """Chebyshev algorithm: recurrence coefficients and norms from moments 0..2N-1."""
    mom = list(table.values)
    if len(mom) < 2 * N:
        raise ParameterError(f"need {2 * N} moments, have {len(mom)}")
    alpha, beta, gamma = [], [], []
    prev = [mpmath.mpf(0)] * (2 * N)
    cur = list(mom[:2 * N])
    alpha.append(cur[1] / cur[0])
    beta.append(cur[0])
    gamma.append(cur[0])
    for k in range(1, N):
        nxt = [mpmath.mpf(0)] * (2 * N)
        for ell in range(k, 2 * N - k):
            nxt[ell] = cur[ell + 1] - alpha[k - 1] * cur[ell] - beta[k - 1] * prev[ell]
        if nxt[k] <= 0:
            raise PrecisionError(f"loss of positivity at degree {k}; raise the precision")
        alpha.append(nxt[k + 1] / nxt[k] - cur[k] / cur[k - 1])
        beta.append(nxt[k] / cur[k - 1])
        gamma.append(nxt[k])
        prev, cur = cur, nxt
    return OrthoPolys(tuple(alpha), tuple(beta), tuple(gamma))


def orthopolys(spec, N, lo=0, dps=None):
    dps = digits_for(N) if dps is None else dps
    with mpmath.workdps(dps):
        return orthopoly_from_moments(moment_table(spec, 2 * N - 1, lo), N)


def heine_integral(spec, N, levels=None):
    """(1/N!) int_{(0,1)^N} prod_{j<k} (x_j - x_k)^2 prod_j w(x_j) dx by a tensor tanh-sinh rule.

    Double precision and independent of the moment code; practical for N <= 3.
    """
    from .quadrature import tanh_sinh
    if not 1 <= N <= 3:
        raise ParameterError(f"tensor quadrature supports 1 <= N <= 3, got {N}")
    if spec.epsilon:
        raise ParameterError("heine_integral needs epsilon = 0")
    levels = {1: 10, 2: 9, 3: 6}[N] if levels is None else levels
    rule = tanh_sinh(levels, 0.0, 1.0)
    x = rule.nodes
    # exact distances to both endpoints keep (1-x)^a accurate near 1
    w = rule.weights * np.exp(spec.b * np.log(rule.lo_gap) + spec.a * np.log(rule.hi_gap)
                              - spec.t / rule.lo_gap)
    grids = np.meshgrid(*([x] * N), indexing="ij", sparse=True)
    weights = np.meshgrid(*([w] * N), indexing="ij", sparse=True)
    f = np.ones(())
    for j in range(N):
        f = f * weights[j]
        for k in range(j + 1, N):
            f = f * (grids[j] - grids[k]) ** 2
    return float(np.sum(f)) / math.factorial(N)

"""Quadrature rules: Gauss-Legendre, tanh-sinh and a mapped half-line rule.

Rules keep the distance of every node to each endpoint (``lo_gap`` and
``hi_gap``) computed without cancellation.  Near an endpoint tanh-sinh nodes
sit closer to it than double precision can resolve, so integrands with an
algebraic endpoint singularity must be written in terms of the gaps, not the
rounded node.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from scipy.special import expit

from .errors import ParameterError

# beyond this many decay lengths a half-line integrand is treated as zero
HALF_LINE_DECAY = 745.0


@dataclass(frozen=True, eq=False)
class QuadRule:
    nodes: np.ndarray
    weights: np.ndarray
    lo: float
    hi: float
    kind: str
    lo_gap: np.ndarray
    hi_gap: np.ndarray
    scale: float | None = None

    def __len__(self):
        return len(self.nodes)

    def integrate(self, f):
        """Sum of weights times f(nodes); f is vectorized over the nodes."""
        return np.sum(self.weights * f(self.nodes))

    @property
    def half_line(self):
        return math.isinf(self.hi)

    @property
    def is_big(self):
        return self.nodes.dtype == object


def _check_interval(a, b):
    if not a < b:
        raise ParameterError(f"need a < b, got a={a}, b={b}")


def gauss_legendre(n, a=-1.0, b=1.0):
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    _check_interval(a, b)
    xi, wi = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return QuadRule(
        nodes=a + half * (1.0 + xi), weights=half * wi, lo=a, hi=b, kind="gauss-legendre",
        lo_gap=half * (1.0 + xi), hi_gap=half * (1.0 - xi))


def gauss_legendre_log(n, a, b):
    """Gauss-Legendre in log x on [a, b], a > 0; resolves scales across decades."""
    if a <= 0:
        raise ParameterError(f"log-spaced rule needs a > 0, got {a}")
    base = gauss_legendre(n, math.log(a), math.log(b))
    x = np.exp(base.nodes)
    return QuadRule(
        nodes=x, weights=base.weights * x, lo=a, hi=b, kind="gauss-legendre-log",
        lo_gap=x - a, hi_gap=b - x)


def composite(rules):
    """Concatenate rules on adjacent intervals into one rule."""
    rules = sorted(rules, key=lambda r: r.lo)
    for left, right in zip(rules, rules[1:]):
        if not math.isclose(left.hi, right.lo, rel_tol=1e-14, abs_tol=1e-300):
            raise ParameterError("composite rules must tile an interval")
    lo, hi = rules[0].lo, rules[-1].hi
    nodes = np.concatenate([r.nodes for r in rules])
    return QuadRule(
        nodes=nodes, weights=np.concatenate([r.weights for r in rules]), lo=lo, hi=hi,
        kind="composite:" + rules[0].kind, lo_gap=nodes - lo, hi_gap=hi - nodes)


def _step(levels):
    if levels < 3:
        raise ParameterError(f"need levels >= 3, got {levels}")
    return 2.0 ** (3 - levels)


def _ts_unit(h, t_lo, t_hi):
    """Tanh-sinh on (0,1) in logistic form: u, 1-u and weights."""
    t = h * np.arange(-math.floor(t_lo / h), math.floor(t_hi / h) + 1)
    s = math.pi * np.sinh(t)
    u = expit(s)
    v = expit(-s)
    w = h * math.pi * np.cosh(t) * u * v
    keep = (w > 0) & (u > 0) & (v > 0)
    return u[keep], v[keep], w[keep]


TMAX = 6.0


def tanh_sinh(levels=10, a=0.0, b=1.0, tmax=TMAX):
    """Tanh-sinh rule on [a, b] with step 2**(3 - levels)."""
    _check_interval(a, b)
    u, v, w = _ts_unit(_step(levels), tmax, tmax)
    span = b - a
    lo_gap, hi_gap = span * u, span * v
    nodes = np.where(u <= 0.5, a + lo_gap, b - hi_gap)
    return QuadRule(nodes=nodes, weights=span * w, lo=a, hi=b, kind="tanh-sinh",
                    lo_gap=lo_gap, hi_gap=hi_gap)


def tanh_sinh_n(n, a, b, tmax=3.5):
    """Tanh-sinh with exactly n nodes spread over |t| <= tmax (for Nystrom grids)."""
    _check_interval(a, b)
    if n < 2:
        raise ParameterError(f"need n >= 2, got {n}")
    h = 2.0 * tmax / (n - 1)
    t = -tmax + h * np.arange(n)
    s = math.pi * np.sinh(t)
    u, v = expit(s), expit(-s)
    w = h * math.pi * np.cosh(t) * u * v
    span = b - a
    nodes = np.where(u <= 0.5, a + span * u, b - span * v)
    return QuadRule(nodes=nodes, weights=span * w, lo=a, hi=b, kind="tanh-sinh",
                    lo_gap=span * u, hi_gap=span * v)


def half_line(levels=10, a=0.0, scale=1.0, decay=HALF_LINE_DECAY):
    """Rule on [a, inf) via s = a + u/(scale (1-u)) composed with tanh-sinh.

    ``scale`` is the expected exponential decay rate; the upper tail is cut
    once scale*(s - a) exceeds ``decay``.
    """
    if not scale > 0:
        raise ParameterError(f"need scale > 0, got {scale}")
    t_hi = math.asinh(math.log(decay) / math.pi)
    u, v, w = _ts_unit(_step(levels), TMAX, t_hi)
    gap = u / (scale * v)
    return QuadRule(nodes=a + gap, weights=w / (scale * v * v), lo=a, hi=math.inf,
                    kind="tanh-sinh-half-line", lo_gap=gap, hi_gap=np.full_like(gap, np.inf),
                    scale=scale)


# ---- arbitrary precision variants -----------------------------------------

def _mp_step(dps):
    # tanh-sinh error ~ exp(-pi^2/h); ask for a few digits beyond dps
    target = (dps + 10) * math.log(10)
    h = 1.0
    while math.pi ** 2 / h < 1.1 * target:
        h /= 2
    return h


@lru_cache(maxsize=16)
def _mp_unit(dps, t_hi_kind, refine=1):
    with mpmath.workdps(dps + 10):
        h = mpmath.mpf(_mp_step(dps)) / refine
        tlo = math.asinh(2 * (dps + 10) * math.log(10) / math.pi)
        if t_hi_kind == "finite":
            thi = tlo
        else:
            thi = math.asinh(math.log((dps + 10) * math.log(10) + 50) / math.pi)
        k_lo, k_hi = math.floor(tlo / float(h)), math.floor(thi / float(h))
        u, v, w = [], [], []
        for k in range(-k_lo, k_hi + 1):
            t = k * h
            s = mpmath.pi * mpmath.sinh(t)
            e = mpmath.exp(-abs(s))
            small = e / (1 + e)
            big_ = 1 / (1 + e)
            uu, vv = (big_, small) if s > 0 else (small, big_)
            u.append(uu)
            v.append(vv)
            w.append(h * mpmath.pi * mpmath.cosh(t) * uu * vv)
    return tuple(u), tuple(v), tuple(w)


def _obj(seq):
    out = np.empty(len(seq), dtype=object)
    out[:] = [mpmath.mpf(x) for x in seq]
    return out


def tanh_sinh_mp(a=0, b=1, dps=None, refine=1):
    """Tanh-sinh on [a, b] with mpf nodes, step chosen from the precision.

    Integrands with an essential singularity at an endpoint, such as
    e^{-t/x} at x = 0, need ``refine=4``.
    """
    dps = mpmath.mp.dps if dps is None else dps
    a, b = mpmath.mpf(a), mpmath.mpf(b)
    _check_interval(a, b)
    u, v, w = (_obj(x) for x in _mp_unit(dps, "finite", refine))
    span = b - a
    lo_gap, hi_gap = span * u, span * v
    nodes = a + lo_gap
    return QuadRule(nodes=nodes, weights=span * w, lo=a, hi=b, kind="tanh-sinh-mp",
                    lo_gap=lo_gap, hi_gap=hi_gap)


def half_line_mp(a=0, scale=1, dps=None):
    dps = mpmath.mp.dps if dps is None else dps
    a, scale = mpmath.mpf(a), mpmath.mpf(scale)
    if not scale > 0:
        raise ParameterError(f"need scale > 0, got {scale}")
    # the rational map makes the tail triple exponential in t, which narrows
    # the strip of analyticity; a 4x finer step restores full precision
    u, v, w = (_obj(x) for x in _mp_unit(dps, "half", 4))
    gap = u / (scale * v)
    return QuadRule(nodes=a + gap, weights=w / (scale * v * v), lo=a, hi=mpmath.inf,
                    kind="tanh-sinh-half-line-mp", lo_gap=gap,
                    hi_gap=_obj([mpmath.inf] * len(gap)), scale=scale)

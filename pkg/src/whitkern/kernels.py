"""Integral kernels as evaluable objects.

Every kernel exposes ``matrix(x, y=None)`` (values on the outer grid, y
defaulting to x), ``diag(x)`` and a ``symmetric`` flag.  Grid-based callers
(Nystrom, Mercer, sampling) only rely on this interface.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ParameterError
from .moments import WeightSpec, orthopolys, weight
from .quadrature import half_line
from .specfun import WhittakerIndex, whittaker_w

DIAG_SWITCH = 1e-6


def _grid(x, y):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = x if y is None else np.atleast_1d(np.asarray(y, dtype=float))
    return x, y


@dataclass(frozen=True)
class WhittakerKernel:
    """prefactor * (xy)^power * (W_k(x) W_{k-1}(y) - W_{k-1}(x) W_k(y)) / (x - y).

    One family covers the Whittaker kernel with sqrt(xy) weighting, the
    composed R_a R_{-a} closed form and the determinantal kernel; the
    constructors below fix the prefactor and power of each.
    """
    idx: WhittakerIndex
    prefactor: float = 1.0
    power: float = 0.0
    levels: int = 10
    symmetric: bool = field(default=True, init=False)

    def _w(self, x, shift):
        return whittaker_w(self.idx.lowered(shift), None, x, self.levels)

    def _bracket_diag(self, x):
        k, mu2 = self.idx.kappa, self.idx.mu_sq
        w0, w1, w2 = (self._w(x, s) for s in range(3))
        d0 = ((k - x / 2) * w0 - (mu2 - (k - 0.5) ** 2) * w1) / x
        d1 = ((k - 1 - x / 2) * w1 - (mu2 - (k - 1.5) ** 2) * w2) / x
        return d0 * w1 - d1 * w0

    def diag(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return self.prefactor * x ** (2 * self.power) * self._bracket_diag(x)

    def bracket(self, x, y=None):
        x, y = _grid(x, y)
        wx0, wx1 = self._w(x, 0), self._w(x, 1)
        wy0, wy1 = (wx0, wx1) if y is x else (self._w(y, 0), self._w(y, 1))
        num = np.outer(wx0, wy1) - np.outer(wx1, wy0)
        den = x[:, None] - y[None, :]
        near = np.abs(den) < DIAG_SWITCH * np.maximum(x[:, None], y[None, :])
        with np.errstate(divide="ignore", invalid="ignore"):
            out = num / den
        if near.any():
            ii, jj = np.nonzero(near)
            out[ii, jj] = self._bracket_diag(0.5 * (x[ii] + y[jj]))
        return out

    def matrix(self, x, y=None):
        x, y = _grid(x, y)
        scale = np.outer(x ** self.power, y ** self.power)
        return self.prefactor * scale * self.bracket(x, y)


def whittaker_kernel(kappa, mu, levels=10):
    """((k-1/2)^2 - mu^2) sqrt(xy) (W_{k-1}(x) W_k(y) - W_k(x) W_{k-1}(y)) / (x - y)."""
    idx = kappa if isinstance(kappa, WhittakerIndex) else WhittakerIndex.of(kappa, mu)
    pref = (idx.kappa - 0.5) ** 2 - idx.mu_sq
    return WhittakerKernel(idx, -pref, 0.5, levels)


def integrable_kernel(kappa, mu, c=1.0, levels=10):
    """c (W_k(x) W_{k-1}(y) - W_{k-1}(x) W_k(y)) / (x - y)."""
    idx = kappa if isinstance(kappa, WhittakerIndex) else WhittakerIndex.of(kappa, mu)
    return WhittakerKernel(idx, c, 0.0, levels)


def _check_a(a):
    if not abs(a) < 0.5:
        raise ParameterError(f"need |a| < 1/2, got {a}")


def composed_kernel(a, levels=10):
    """Closed form of R_a R_{-a}: Gamma(1-2a) bracket / ((x-y) sqrt(xy)), k = a+1/2, mu = a."""
    _check_a(a)
    return WhittakerKernel(WhittakerIndex(a + 0.5, a), math.gamma(1 - 2 * a), -0.5, levels)


def dpp_prefactor(a):
    return math.cos(math.pi * a) ** 2 / math.pi ** 2


def whittaker_dpp_kernel(a, method="stieltjes", levels=10):
    """Determinantal Whittaker kernel cos^2(pi a)/pi^2 * R_a R_{-a}.

    method "stieltjes" uses the positive integral form (no cancellation,
    robust at small x); "direct" uses the Whittaker-function closed form.
    """
    _check_a(a)
    if method == "stieltjes":
        return StieltjesKernel(a, dpp_prefactor(a))
    if method == "direct":
        return WhittakerKernel(WhittakerIndex(a + 0.5, a),
                               math.gamma(1 - 2 * a) * dpp_prefactor(a), -0.5, levels)
    raise ParameterError(f"unknown method {method!r}")


@dataclass(frozen=True)
class StieltjesKernel:
    """scale * (xy)^a e^{-(x+y)/2} int_0^inf v^{-2a} e^{-v} / ((x+v)(y+v)) dv.

    This is the kernel of R_a R_{-a}.  The integral is a trapezoid rule in
    log v, which converges geometrically since the integrand is analytic in
    a strip of half-width pi/2.
    """
    a: float
    scale: float = 1.0
    step: float = 0.1
    symmetric: bool = field(default=True, init=False)

    def __post_init__(self):
        _check_a(self.a)

    def _nodes(self, xmin):
        a = self.a
        lo = math.log(xmin) - 40.0 / (1 - 2 * a)
        hi = math.log(40.0)
        sig = np.arange(lo, hi + self.step, self.step)
        v = np.exp(sig)
        g = self.step * np.exp((1 - 2 * a) * sig - v)
        return v, g

    def _factor(self, x, v):
        return np.exp(self.a * np.log(x) - x / 2)[:, None] / (x[:, None] + v[None, :])

    def matrix(self, x, y=None):
        x, y = _grid(x, y)
        v, g = self._nodes(min(x.min(), y.min()))
        fx = self._factor(x, v)
        fy = fx if y is x else self._factor(y, v)
        return self.scale * (fx * g) @ fy.T

    def diag(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        v, g = self._nodes(x.min())
        fx = self._factor(x, v)
        return self.scale * (fx * fx) @ g


@dataclass(frozen=True)
class RaKernel:
    """(x/y)^a e^{-(x+y)/2} / (x+y); R_{-a}(y, x) = R_a(x, y)."""
    a: float
    symmetric: bool = field(default=False, init=False)

    def __post_init__(self):
        _check_a(self.a)

    def matrix(self, x, y=None):
        x, y = _grid(x, y)
        return (np.exp(self.a * (np.log(x)[:, None] - np.log(y)[None, :])
                       - 0.5 * (x[:, None] + y[None, :])) / (x[:, None] + y[None, :]))

    def diag(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return np.exp(-x) / (2 * x)


def r_a_kernel(a, x, y):
    return RaKernel(a).matrix(x, y)


@dataclass(frozen=True)
class REpsKernel:
    """Carleman-type kernel on (1/2, inf), written in r = s - 1/2 on (0, inf):

    f(r1) f(r2) / ((r1 + r2 + 1) Gamma(q+1)),
    f(r) = e^{-eps (r+1/2)} (r+1)^{p/2} r^{q/2},  p = k+mu-1/2, q = -k+mu-1/2.
    """
    idx: WhittakerIndex
    eps: float = 0.0
    symmetric: bool = field(default=True, init=False)

    def __post_init__(self):
        if self.idx.mu_im != 0:
            raise DomainError("R_eps kernel needs real mu")
        if not self.idx.margin() > 0:
            raise DomainError(f"R_eps kernel needs -kappa + mu + 1/2 > 0, got {self.idx.margin()}")
        if self.eps < 0:
            raise ParameterError("need eps >= 0")

    def _f(self, r):
        k, mu = self.idx.kappa, self.idx.mu_re
        p, q = k + mu - 0.5, -k + mu - 0.5
        return np.exp(-self.eps * (r + 0.5) + 0.5 * p * np.log1p(r) + 0.5 * q * np.log(r)
                      - 0.5 * math.lgamma(q + 1))

    def matrix(self, x, y=None):
        x, y = _grid(x, y)
        return np.outer(self._f(x), self._f(y)) / (x[:, None] + y[None, :] + 1)

    def diag(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return self._f(x) ** 2 / (2 * x + 1)


def r_eps_kernel(idx, eps, s, u):
    """Value at s, u > 1/2 in the original variable."""
    return REpsKernel(idx, eps).matrix(np.asarray(s) - 0.5, np.asarray(u) - 0.5)


@dataclass(frozen=True)
class CDJacobiKernel:
    """Christoffel-Darboux kernel sum_j P_j(x) P_j(y) / gamma_j of x^b (1-x)^a e^{-t/x}.

    With ``weighted`` (default) the kernel is sqrt(w(x)) J(x,y) sqrt(w(y)),
    i.e. the same operator acting on L^2(dx).
    """
    spec: WeightSpec
    N: int
    weighted: bool = True
    symmetric: bool = field(default=True, init=False)

    def __post_init__(self):
        object.__setattr__(self, "_polys", orthopolys(self.spec, self.N))

    def basis(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        phi = self._polys.orthonormal(x, self.N)
        if self.weighted:
            phi = phi * np.sqrt(weight(self.spec, x))
        return phi

    def matrix(self, x, y=None):
        x, y = _grid(x, y)
        px = self.basis(x)
        py = px if y is x else self.basis(y)
        return px.T @ py

    def diag(self, x):
        return np.sum(self.basis(x) ** 2, axis=0)


def cd_jacobi_kernel(spec, N, x, y):
    return CDJacobiKernel(spec, N, weighted=False).matrix(x, y)


@dataclass(frozen=True)
class ZeroKernel:
    symmetric: bool = field(default=True, init=False)

    def matrix(self, x, y=None):
        x, y = _grid(x, y)
        return np.zeros((len(x), len(y)))

    def diag(self, x):
        return np.zeros(len(np.atleast_1d(x)))


@dataclass(frozen=True)
class SeparableKernel:
    """sum_k c_k f_k(x) f_k(y) for callables f_k; handy for closed-form tests."""
    funcs: tuple
    coefs: tuple = (1.0,)
    symmetric: bool = field(default=True, init=False)

    def matrix(self, x, y=None):
        x, y = _grid(x, y)
        return sum(c * np.outer(f(x), f(y)) for f, c in zip(self.funcs, self.coefs))

    def diag(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return sum(c * f(x) ** 2 for f, c in zip(self.funcs, self.coefs))


def factorization_lhs(kappa, mu, x, y, levels=10):
    """sqrt(xy) (W_k(x) W_{k-1}(y) - W_{k-1}(x) W_k(y)) / (x - y), with its diagonal limit."""
    return WhittakerKernel(WhittakerIndex.of(kappa, mu), 1.0, 0.5, levels).matrix(x, y)


def factorization_rhs(kappa, mu, x, y, levels=10):
    """int_1^inf (sqrt(x) W_k(sx) sqrt(y) W_{k-1}(sy) + sqrt(x) W_{k-1}(sx) sqrt(y) W_k(sy)) ds/(2s).

    Scalar x, y; half-line rule in s with decay rate (x+y)/2.
    """
    idx = WhittakerIndex.of(kappa, mu)
    x, y = float(x), float(y)
    rule = half_line(levels, 1.0, 0.5 * (x + y))
    s = rule.nodes
    wx0, wx1 = whittaker_w(idx, None, s * x, levels), whittaker_w(idx.lowered(), None, s * x, levels)
    wy0, wy1 = whittaker_w(idx, None, s * y, levels), whittaker_w(idx.lowered(), None, s * y, levels)
    integrand = math.sqrt(x * y) * (wx0 * wy1 + wx1 * wy0) / (2 * s)
    return float(rule.weights @ integrand)

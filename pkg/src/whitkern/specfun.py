"""Gamma, Whittaker W, Laguerre functions and modified Bessel K.

W is evaluated from the Laplace-type representation

    W(x) = x^kappa e^{-x/2} / Gamma(q+1) * int_0^inf e^{-r} r^q (1 + r/x)^p dr,
    p = kappa + mu - 1/2,  q = -kappa + mu - 1/2,

which converges for q > -1.  Indices with q <= -1/2 are reached with the
three-term recurrence in kappa from two lower indices.
"""
import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .errors import DomainError, ParameterError
from .quadrature import half_line, half_line_mp

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993, 676.5203681218851, -1259.1392167224028,
    771.32342877765313, -176.61502916214059, 12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)

# recurrence kicks in below this value of -kappa + Re(mu) + 1/2
MIN_MARGIN = 0.5
IMAG_TOL = 1e-10


def log_gamma_complex(z):
    """Principal-branch log Gamma for Re z > 0 (Lanczos, g=7)."""
    z = complex(z)
    if z.real <= 0:
        raise DomainError(f"log_gamma_complex needs Re z > 0, got {z}")
    if z.real < 0.5:
        return log_gamma_complex(z + 1) - cmath.log(z)
    z -= 1
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def gamma(x):
    if isinstance(x, mpmath.mpf):
        return mpmath.gamma(x)
    return math.gamma(x)


@dataclass(frozen=True)
class WhittakerIndex:
    kappa: float
    mu_re: float = 0.0
    mu_im: float = 0.0

    def __post_init__(self):
        if self.mu_re != 0 and self.mu_im != 0:
            raise ParameterError(
                f"mu must be real or purely imaginary, got {self.mu_re}+{self.mu_im}i")

    @classmethod
    def of(cls, kappa, mu):
        mu = complex(mu)
        return cls(float(kappa), mu.real, mu.imag)

    @property
    def mu(self):
        return complex(0.0, self.mu_im) if self.mu_im else self.mu_re

    @property
    def mu_sq(self):
        return self.mu_re ** 2 - self.mu_im ** 2

    def margin(self):
        return -self.kappa + abs(self.mu_re) + 0.5

    def lowered(self, k=1):
        return WhittakerIndex(self.kappa - k, self.mu_re, self.mu_im)


def _as_index(kappa, mu):
    if isinstance(kappa, WhittakerIndex):
        return kappa
    return WhittakerIndex.of(kappa, mu)


@lru_cache(maxsize=8)
def _rule(levels):
    return half_line(levels, 0.0, 1.0)


def _w_integral(kappa, mu, x, levels):
    """Representation integral for one (kappa, mu); complex mu allowed."""
    rule = _rule(levels)
    r = rule.lo_gap
    p = kappa + mu - 0.5
    q = -kappa + mu - 0.5
    lg = log_gamma_complex(q + 1) if isinstance(q, complex) else math.lgamma(q + 1)
    logr = np.log(r)
    # log of x^kappa e^{-x/2} times the integrand, shape (len(x), nodes); the
    # prefactor is folded in so tiny x with negative kappa cannot overflow
    expo = (-r + q * logr)[None, :] + p * np.log1p(r[None, :] / x[:, None])
    expo += (kappa * np.log(x) - 0.5 * x - lg)[:, None]
    return np.exp(expo) @ rule.weights


def _w_direct(idx, x, levels):
    if idx.margin() <= 0:
        raise DomainError(
            f"integral representation needs -kappa + Re(mu) + 1/2 > 0, "
            f"got {idx.margin():.6g} for kappa={idx.kappa}, mu={idx.mu}")
    if idx.mu_im == 0:
        return _w_integral(idx.kappa, abs(idx.mu_re), x, levels)
    mu = complex(0.0, idx.mu_im)
    val = 0.5 * (_w_integral(idx.kappa, mu, x, levels) + _w_integral(idx.kappa, -mu, x, levels))
    if np.any(np.abs(val.imag) > IMAG_TOL * np.maximum(np.abs(val.real), 1e-300)):
        raise DomainError("imaginary residue in W for imaginary mu exceeds tolerance")
    return val.real


def whittaker_w(kappa, mu, x, levels=10, extend=True):
    """Whittaker W_{kappa,mu}(x) for x > 0, vectorized over x.

    ``mu`` is real or purely imaginary.  With ``extend`` false, indices outside
    the integral representation raise DomainError; otherwise they are reached
    by the kappa recurrence
        W_{k+1} = (x - 2k) W_k - ((k - 1/2)^2 - mu^2) W_{k-1}.
    """
    idx = _as_index(kappa, mu)
    scalar = np.ndim(x) == 0
    if isinstance(x, mpmath.mpf):
        return whittaker_w_mp(idx, x)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0):
        raise DomainError("whittaker_w needs x > 0")
    margin = idx.margin()
    if margin >= MIN_MARGIN or (margin > 0 and not extend):
        out = _w_direct(idx, x, levels)
    elif not extend:
        out = _w_direct(idx, x, levels)  # raises with the violated inequality
    else:
        steps = math.ceil(MIN_MARGIN - margin + 1e-12)
        base = idx.lowered(steps)
        w_prev = _w_direct(base.lowered(), x, levels)
        w_cur = _w_direct(base, x, levels)
        k = base.kappa
        for _ in range(steps):
            w_prev, w_cur = w_cur, (x - 2 * k) * w_cur - ((k - 0.5) ** 2 - idx.mu_sq) * w_prev
            k += 1
        out = w_cur
    return out[0] if scalar else out


def whittaker_w_deriv(kappa, mu, x, levels=10):
    """dW/dx from x W' = (kappa - x/2) W_{kappa} - (mu^2 - (kappa-1/2)^2) W_{kappa-1}."""
    idx = _as_index(kappa, mu)
    x = np.asarray(x, dtype=float)
    w0 = whittaker_w(idx, None, x, levels)
    w1 = whittaker_w(idx.lowered(), None, x, levels)
    return ((idx.kappa - x / 2) * w0 - (idx.mu_sq - (idx.kappa - 0.5) ** 2) * w1) / x


def whittaker_w_mp(kappa, mu, x):
    """W at mpmath working precision; real mu only, inside the representation.

    kappa and mu may be mpf values and are kept at full precision.
    """
    if isinstance(kappa, WhittakerIndex):
        if kappa.mu_im != 0:
            raise DomainError("arbitrary-precision W supports real mu only")
        kappa, mu = kappa.kappa, kappa.mu_re
    if isinstance(mu, complex):
        raise DomainError("arbitrary-precision W supports real mu only")
    kappa = mpmath.mpf(kappa)
    mu = abs(mpmath.mpf(mu))
    x = mpmath.mpf(x)
    if x <= 0:
        raise DomainError("whittaker_w needs x > 0")
    q = -kappa + mu - mpmath.mpf(1) / 2
    if q <= -1:
        raise DomainError(
            f"integral representation needs -kappa + Re(mu) + 1/2 > 0, got {mpmath.nstr(q + 1, 6)}")
    p = kappa + mu - mpmath.mpf(1) / 2
    rule = half_line_mp(0, 1)
    acc = mpmath.mpf(0)
    for r, w in zip(rule.lo_gap, rule.weights):
        acc += w * mpmath.exp(-r + q * mpmath.log(r) + p * mpmath.log1p(r / x))
    return x ** kappa * mpmath.exp(-x / 2) * acc / mpmath.gamma(q + 1)


def bessel_k(nu, x, levels=10):
    """K_nu(x) = int_0^inf cosh(nu t) e^{-x cosh t} dt; nu real or purely imaginary."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("bessel_k needs x > 0")
    nu = complex(nu)
    if nu.real != 0 and nu.imag != 0:
        raise ParameterError("nu must be real or purely imaginary")
    # cosh t > 5e25 beyond t = 60, so the integrand is negligible for x >= 1e-6
    rule = half_line(levels, 0.0, 1.0, decay=60.0)
    t = rule.nodes
    cosh_part = np.cos(nu.imag * t) if nu.imag else np.cosh(nu.real * t)
    # e^{-x cosh t} written as e^{-x} e^{-x (cosh t - 1)} to keep the small-t nodes accurate
    ch1 = 2 * np.sinh(t / 2) ** 2
    xs = np.atleast_1d(x)
    vals = np.exp(-xs[:, None] * ch1[None, :]) @ (rule.weights * cosh_part) * np.exp(-xs)
    return vals[0] if x.ndim == 0 else vals


def monic_laguerre(alpha, n, x):
    """Monic generalized Laguerre polynomial of degree n."""
    if alpha <= -1:
        raise ParameterError(f"need alpha > -1, got {alpha}")
    if n < 0:
        raise ParameterError(f"need n >= 0, got {n}")
    x = np.asarray(x, dtype=float)
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for k in range(n):
        prev, cur = cur, (x - (2 * k + alpha + 1)) * cur - k * (k + alpha) * prev
    return cur


def laguerre_fn(alpha, n, x):
    """phi_n(x) = e^{-x/2} x^alpha L_n(x) / n! with L_n monic."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("laguerre_fn needs x > 0")
    return np.exp(-x / 2 + alpha * np.log(x) - math.lgamma(n + 1)) * monic_laguerre(alpha, n, x)


def laguerre_laplace(alpha, n, s):
    """Laplace transform of laguerre_fn at s > -1/2.

    With the monic normalization this is
    (-1)^n Gamma(n+alpha+1)/n! * (s-1/2)^n / (s+1/2)^(n+1+alpha).
    """
    s = np.asarray(s, dtype=float)
    coef = (-1) ** n * math.exp(math.lgamma(n + alpha + 1) - math.lgamma(n + 1))
    return coef * (s - 0.5) ** n / (s + 0.5) ** (n + 1 + alpha)


def incomplete_gamma_stieltjes(a, x, levels=10):
    """int_0^inf y^{-2a} e^{-y} / (x + y) dy for |a| < 1/2, x > 0."""
    if not abs(a) < 0.5:
        raise ParameterError(f"need |a| < 1/2, got {a}")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("need x > 0")
    rule = half_line(levels, 0.0, 1.0)
    y = rule.lo_gap
    f = rule.weights * np.exp(-2 * a * np.log(y) - y)
    xs = np.atleast_1d(x)
    vals = (1.0 / (xs[:, None] + y[None, :])) @ f
    return vals[0] if x.ndim == 0 else vals


def incomplete_gamma_stieltjes_closed(a, x, levels=10):
    """Closed form Gamma(1-2a) x^{-a-1/2} e^{x/2} W_{a-1/2,a}(x)."""
    x = np.asarray(x, dtype=float)
    return math.gamma(1 - 2 * a) * x ** (-a - 0.5) * np.exp(x / 2) * whittaker_w(a - 0.5, a, x, levels)

"""Nystrom discretizations, Fredholm determinants, resolvents, the
Laguerre-basis Hankel matrix and the operator identities built on them."""
import math
from dataclasses import dataclass
from functools import cached_property

import mpmath
import numpy as np
import scipy.special

from . import numerics
from .errors import DomainError, ParameterError
from .kernels import (REpsKernel, RaKernel, StieltjesKernel, WhittakerKernel,
                      dpp_prefactor, integrable_kernel)
from .quadrature import (QuadRule, composite, gauss_legendre, gauss_legendre_log, half_line,
                         tanh_sinh_mp, tanh_sinh_n)
from .results import CheckResult, rel_err
from .specfun import WhittakerIndex, log_gamma_complex, whittaker_w


def half_line_n(n, a=0.0, scale=1.0, tmax=3.5):
    """n-node tanh-sinh rule on (0,1) mapped to (a, inf) by s = a + u/(scale (1-u))."""
    base = tanh_sinh_n(n, 0.0, 1.0, tmax)
    u, v = base.lo_gap, base.hi_gap
    gap = u / (scale * v)
    return QuadRule(nodes=a + gap, weights=base.weights / (scale * v * v), lo=a, hi=math.inf,
                    kind="tanh-sinh-half-line", lo_gap=gap, hi_gap=np.full_like(gap, np.inf),
                    scale=scale)


def make_rule(interval, n, rule="gauss"):
    if isinstance(rule, QuadRule):
        return rule
    lo, hi = interval
    if math.isinf(hi):
        return half_line_n(n, lo)
    if rule == "gauss":
        return gauss_legendre(n, lo, hi)
    if rule == "log-gauss":
        return gauss_legendre_log(n, lo, hi)
    if rule == "tanh-sinh":
        return tanh_sinh_n(n, lo, hi)
    raise ParameterError(f"unknown rule {rule!r}")


@dataclass(frozen=True, eq=False)
class DiscretizedOperator:
    """Nystrom matrix sqrt(w_i) K(x_i, x_j) sqrt(w_j) on a quadrature grid."""
    grid: QuadRule
    matrix: np.ndarray
    kernel: object

    @property
    def sqrt_w(self):
        return np.sqrt(self.grid.weights)

    @property
    def n(self):
        return len(self.grid)

    @cached_property
    def eigenvalues(self):
        if getattr(self.kernel, "symmetric", False):
            return numerics.sym_eig(self.matrix, tol=1e-10)[0]
        return np.sort(np.linalg.eigvals(self.matrix))[::-1]

    def trace(self):
        return float(np.trace(self.matrix))

    def interp_rows(self, x):
        """K(x, x_j) sqrt(w_j) for off-grid points x (rows) ."""
        return self.kernel.matrix(x, self.grid.nodes) * self.sqrt_w[None, :]


def nystrom(kernel, interval, n, rule="gauss"):
    if n < 4:
        raise ParameterError(f"need n >= 4, got {n}")
    grid = make_rule(interval, n, rule)
    x = grid.lo_gap if grid.lo == 0 else grid.nodes
    try:
        k = kernel.matrix(x)
    except Exception as exc:
        raise type(exc)(f"{exc} (kernel on [{x.min():.3g}, {x.max():.3g}])") from exc
    if not np.all(np.isfinite(k)):
        bad = np.argwhere(~np.isfinite(k))[0]
        raise DomainError(f"kernel not finite at ({x[bad[0]]:.6g}, {x[bad[1]]:.6g})")
    sw = np.sqrt(grid.weights)
    m = sw[:, None] * k * sw[None, :]
    if getattr(kernel, "symmetric", False):
        m = 0.5 * (m + m.T)
    return DiscretizedOperator(grid, m, kernel)


def fredholm_det(op, lam=1.0):
    """det(I - lam K) from LU of the Nystrom matrix."""
    return numerics.det(np.eye(op.n) - lam * op.matrix)


def resolvent(op):
    """S = K (I-K)^{-1} on the same grid."""
    ev = op.eigenvalues
    top = float(np.max(np.abs(ev)))
    if top >= 1:
        raise DomainError(f"resolvent needs spectral radius < 1, largest |eigenvalue| {top:.6g}")
    eye = np.eye(op.n)
    s = numerics.solve((eye - op.matrix).T, op.matrix.T).T
    return DiscretizedOperator(op.grid, s, ("resolvent", op.kernel))


@dataclass(frozen=True, eq=False)
class ResolventInterp:
    """Off-grid resolvent S(x,y) = K(x,y) + k_x^T (I-A)^{-1} k_y and
    the functions (I-K)^{-1} f, from a Nystrom discretization A."""
    op: DiscretizedOperator

    @cached_property
    def _inv(self):
        return numerics.inv(np.eye(self.op.n) - self.op.matrix)

    def S(self, x, y=None):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = x if y is None else np.atleast_1d(np.asarray(y, dtype=float))
        kx = self.op.interp_rows(x)
        ky = kx if y is x else self.op.interp_rows(y)
        return self.op.kernel.matrix(x, y) + kx @ self._inv @ (
            self.op.kernel.matrix(self.op.grid.nodes, y) * self.op.sqrt_w[:, None])

    def S_diag(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        kx = self.op.interp_rows(x)
        kt = self.op.kernel.matrix(self.op.grid.nodes, x) * self.op.sqrt_w[:, None]
        return self.op.kernel.diag(x) + np.einsum("ij,jk,ki->i", kx, self._inv, kt)

    def apply_inverse(self, f, x):
        """((I-K)^{-1} f)(x) = f(x) + sum_j K(x,x_j) w_j g_j with g the grid solution."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        fg = f(self.op.grid.nodes) * self.op.sqrt_w
        g = self._inv @ fg
        return f(x) + self.op.interp_rows(x) @ g


# ---- Laguerre-basis matrix of the Hankel operator ---------------------------

@dataclass(frozen=True, eq=False)
class HankelLaguerreMatrix:
    """<Gamma_phi phi_l, phi_n> on the Laguerre functions phi_n = e^{-x/2} x^alpha L_n / n!.

    entries are mpf; ``gram`` is <phi_l, phi_n>, needed because the basis is
    orthonormal only for alpha = 0.
    """
    alpha: float
    size: int
    idx: WhittakerIndex
    eps: float
    entries: np.ndarray
    gram: np.ndarray

    def as_float(self):
        return numerics.as_float(self.entries)

    def fredholm_det(self, lam=1.0, size=None):
        """det(I - lam Gamma_phi) restricted to the span of the first ``size`` functions."""
        size = self.size if size is None else size
        a = self.as_float()[:size, :size]
        g = self.gram[:size, :size]
        return numerics.det(g - lam * a) / numerics.det(g)


def laguerre_gram(alpha, size):
    """<phi_l, phi_n> = int e^{-x} x^{2 alpha} L_l L_n / (l! n!) dx, exact by Gauss-Laguerre."""
    x, w = scipy.special.roots_genlaguerre(size + 2, 2 * alpha)
    from .specfun import monic_laguerre
    vals = np.array([monic_laguerre(alpha, n, x) / math.factorial(n) for n in range(size)])
    return (vals * w) @ vals.T


def hankel_laguerre_matrix(idx, alpha, size, eps=0.0, dps=30):
    idx = idx if isinstance(idx, WhittakerIndex) else WhittakerIndex.of(*idx)
    if idx.mu_im != 0:
        raise DomainError("Laguerre-basis matrix needs real mu")
    q = idx.mu_re - idx.kappa - 0.5
    r = 2 * alpha - 2 * idx.mu_re + 1
    if not (q > -1 and r > -1):
        raise DomainError(f"weight exponents must exceed -1: xi^{q:.4g} (1-xi)^{r:.4g}")
    if alpha <= -1:
        raise DomainError("need alpha > -1")
    with mpmath.workdps(dps):
        rule = tanh_sinh_mp(0, 1, refine=4 if eps else 1)
        qm, rm, em = mpmath.mpf(q), mpmath.mpf(r), mpmath.mpf(eps)
        base = []
        for xi, om, w in zip(rule.lo_gap, rule.hi_gap, rule.weights):
            expo = qm * mpmath.log(xi) + rm * mpmath.log(om)
            if eps:
                expo -= 2 * em * (1 / om - mpmath.mpf(1) / 2)
            base.append((xi, w * mpmath.exp(expo)))
        mom = []
        for m in range(2 * size - 1):
            mom.append(sum(w * xi ** m for xi, w in base))
        coef = [mpmath.gamma(n + alpha + 1) / mpmath.factorial(n) * (-1) ** n for n in range(size)]
        g = mpmath.gamma(mpmath.mpf(idx.mu_re) - mpmath.mpf(idx.kappa) + mpmath.mpf(1) / 2)
        ent = np.empty((size, size), dtype=object)
        for ell in range(size):
            for n in range(size):
                ent[ell, n] = coef[ell] * coef[n] * mom[ell + n] / g
    return HankelLaguerreMatrix(alpha, size, idx, eps, ent, laguerre_gram(alpha, size))


def laguerre_entry_oracle(idx, alpha, ell, n, levels=9):
    """<Gamma_phi phi_ell, phi_n> by direct 2-d quadrature over (0,inf)^2 (test oracle)."""
    from .specfun import laguerre_fn
    rule = half_line(levels, 0.0, 0.5)
    x = rule.nodes
    phi = lambda z: whittaker_w(idx, None, z) * z ** (-idx.mu_re - 0.5)
    xs = (x[:, None] + x[None, :]).ravel()
    vals = phi(xs).reshape(len(x), len(x))
    return float(rule.weights * laguerre_fn(alpha, ell, x) @ vals @ (rule.weights * laguerre_fn(alpha, n, x)))


def det_identity_25(idx, eps=0.1, lam=1.0, sizes=(20, 40, 80), nodes=(60, 120, 240), alpha=0.0,
                    tol=1e-5):
    """det(I - lam R_eps) by Nystrom vs det(I - lam Gamma_phi) in the Laguerre basis."""
    idx = idx if isinstance(idx, WhittakerIndex) else WhittakerIndex.of(*idx)
    if not idx.margin() > 0:
        raise DomainError("identity needs mu > kappa - 1/2")
    if not (eps > 0 or (idx.mu_re < 0.5 and eps == 0)):
        raise DomainError("identity needs eps > 0, or mu < 1/2 with eps = 0")
    kern = REpsKernel(idx, eps)
    scale = max(2 * eps, 0.5)
    lhs = [float(fredholm_det(nystrom(kern, (0.0, math.inf), n, half_line_n(n, 0.0, scale)), lam))
           for n in nodes]
    mat = hankel_laguerre_matrix(idx, alpha, max(sizes), eps)
    rhs = [float(mat.fredholm_det(lam, s)) for s in sizes]
    residuals = [abs(l - r) for l, r in zip(lhs, rhs)]
    return CheckResult("hankel-operator-det", {"kappa": idx.kappa, "mu": idx.mu_re, "eps": eps, "lambda": lam,
                               "alpha": alpha},
                       lhs[-1], rhs[-1], residuals[-1], tol,
                       {"lhs_trend": lhs, "rhs_trend": rhs, "residual_trend": residuals,
                        "decreasing": all(b <= a * 1.5 + 1e-15 for a, b in zip(residuals, residuals[1:]))})


def hankel_operator_trace_check(idx, eps=0.1, levels=10):
    """trace R_eps = int k(r,r) dr vs trace Gamma_phi = int_0^inf phi_eps(2x) dx."""
    idx = idx if isinstance(idx, WhittakerIndex) else WhittakerIndex.of(*idx)
    rule = half_line(levels, 0.0, max(2 * eps, 0.5))
    t_r = float(rule.weights @ REpsKernel(idx, eps).diag(rule.lo_gap))
    z = 2 * rule.lo_gap + 2 * eps
    t_h = float(rule.weights @ (whittaker_w(idx, None, z, levels) * z ** (-idx.mu_re - 0.5)))
    return t_r, t_h


def laguerre_leading_minor(idx, alpha, N, eps=0.0):
    """Leading N x N minor of the Laguerre-basis matrix vs the Hankel determinant of the
    translated Jacobi weight times the scale factor c_N.

    Returns (minor, predicted, literal) where ``literal`` uses the printed
    prefactors Gamma(k+mu+1)^{-N} prod Gamma(j+1+alpha)/j!.
    """
    from .moments import WeightSpec, c_n, hankel_det
    mat = hankel_laguerre_matrix(idx, alpha, N, eps, dps=60)
    with mpmath.workdps(60):
        minor = numerics.det(mat.entries)
    # xi^(mu-k-1/2)(1-xi)^(2alpha-2mu+1) is the Pollaczek-Jacobi weight in x = 1 - xi
    spec = WeightSpec(a=idx.mu_re - idx.kappa - 0.5, b=2 * alpha - 2 * idx.mu_re + 1, t=2 * eps)
    dn = hankel_det(spec, N)
    predicted = c_n(idx.kappa, idx.mu_re, alpha, eps, N) * dn
    lit = dn / mpmath.gamma(idx.kappa + idx.mu_re + 1) ** N
    for j in range(N):
        lit *= mpmath.gamma(j + 1 + alpha) / mpmath.factorial(j)
    return minor, predicted, lit


def cyclic_det_check(idx, eps, lam, n=40, m=50):
    """det(I - lam Xi Theta^T) vs det(I - lam Theta^T Xi) for factorized discretizations."""
    idx = idx if isinstance(idx, WhittakerIndex) else WhittakerIndex.of(*idx)
    rs = half_line_n(n, 0.0, 1.0)
    ts = half_line_n(m, 0.0, 1.0)
    p, q = idx.kappa + idx.mu_re - 0.5, -idx.kappa + idx.mu_re - 0.5
    r = rs.lo_gap
    amp = np.exp(-eps * (r + 0.5) + 0.5 * p * np.log1p(r) + 0.5 * q * np.log(r))
    xi = (amp[:, None] * np.exp(-np.outer(r + 0.5, ts.nodes))) * np.sqrt(rs.weights)[:, None] \
        * np.sqrt(ts.weights)[None, :]
    theta = xi / math.sqrt(math.gamma(q + 1))
    left = numerics.det(np.eye(n) - lam * xi @ theta.T)
    right = numerics.det(np.eye(m) - lam * theta.T @ xi)
    return left, right


# ---- Hankel operators with Whittaker symbols --------------------------------

def det_identity_420(idx, interval=(0.0, 4.0), n=100, tol=1e-6, decay_tol=1e-10):
    """det(I - H1 H2 - H2 H1) vs det(I - T) with T from the W-bracket kernel.

    H1, H2 have kernels phi(t+u), phi_1(t) = W_{k,mu}(e^t), phi_2(t) = W_{k-1,mu}(e^t),
    on (lo, hi).  T(t,u) = 2 bracket(e^{t+lo}, e^{u+lo}) / (e^{t+lo} - e^{u+lo}).
    Also reports det(I + Gamma_Phi) for the 4x4 block symbol.
    """
    idx = idx if isinstance(idx, WhittakerIndex) else WhittakerIndex.of(*idx)
    lo, hi = interval
    tail = max(abs(float(whittaker_w(idx, None, math.exp(lo + hi)))),
               abs(float(whittaker_w(idx.lowered(), None, math.exp(lo + hi)))))
    if tail > decay_tol:
        raise DomainError(f"symbols are {tail:.2e} at t = lo + hi; widen the interval")
    rule = gauss_legendre(n, lo, hi)
    t = rule.nodes
    sw = np.sqrt(rule.weights)
    z = np.exp(t[:, None] + t[None, :])
    h1 = sw[:, None] * whittaker_w(idx, None, z.ravel()).reshape(n, n) * sw[None, :]
    h2 = sw[:, None] * whittaker_w(idx.lowered(), None, z.ravel()).reshape(n, n) * sw[None, :]
    eye = np.eye(n)
    scalar = numerics.det(eye - h1 @ h2 - h2 @ h1)
    zero = np.zeros((n, n))
    block = np.block([[eye, zero, h1, zero], [zero, eye, h2, zero],
                      [h2, h1, eye, zero], [zero, zero, zero, eye]])
    four = numerics.det(block)
    kern = WhittakerKernel(idx, 2.0, 0.0)
    tt = sw[:, None] * kern.matrix(np.exp(t + lo)) * sw[None, :]
    direct = numerics.det(eye - tt)
    return CheckResult("paired-hankel-det", {"kappa": idx.kappa, "mu": idx.mu_re or idx.mu_im,
                                "lo": lo, "hi": hi, "n": n},
                       direct, scalar, abs(direct - scalar), tol,
                       {"det_block_4x4": four, "block_vs_scalar": abs(four - scalar)})


# ---- resolvent identities on a finite interval --------------------------------

def resolvent_kernel_a(a):
    """Integrable kernel c (W_k(x) W_{k-1}(y) - W_{k-1}(x) W_k(y)) / (x-y), k = a+1/2, mu = a,
    c = Gamma(1-2a) cos^2(pi a)/pi^2; the sqrt(xy)-weighted form of the determinantal kernel."""
    return integrable_kernel(a + 0.5, a, math.gamma(1 - 2 * a) * dpp_prefactor(a))


def log_det_endpoint_derivative(kernel, a1, a2, h=None, n=40):
    """Central differences of log det(I-K) on [a1,a2] in each endpoint vs S(a1,a1), -S(a2,a2)."""
    h = 1e-4 * (a2 - a1) if h is None else h

    def logdet(lo, hi):
        return math.log(fredholm_det(nystrom(kernel, (lo, hi), n)))

    d1 = (logdet(a1 + h, a2) - logdet(a1 - h, a2)) / (2 * h)
    d2 = (logdet(a1, a2 + h) - logdet(a1, a2 - h)) / (2 * h)
    res = ResolventInterp(nystrom(kernel, (a1, a2), n))
    s1 = float(res.S_diag([a1])[0])
    s2 = float(res.S_diag([a2])[0])
    return (d1, d2), (s1, -s2)


def diag_identity_412(kernel, interval, x, h=1e-2, n=40, c=None, endpoint_terms=True):
    """x d/dx S(x,x) against -c P(x) Q(x) + S^2(x,x) on a finite interval.

    Q = (I-K)^{-1} W_k, P = (I-K)^{-1} W_{k-1}; kernel must be a WhittakerKernel
    with power 0 (prefactor c).  On [a1, a2] the restriction adds the endpoint
    terms a1 S(x,a1) S(a1,x) - a2 S(x,a2) S(a2,x); ``endpoint_terms=False``
    reports the bare identity.
    Returns (lhs, rhs, residual).
    """
    if not isinstance(kernel, WhittakerKernel) or kernel.power != 0:
        raise ParameterError("diag_identity_412 needs an integrable Whittaker kernel (power 0)")
    c = kernel.prefactor if c is None else c
    a1, a2 = interval
    op = nystrom(kernel, interval, n)
    res = ResolventInterp(op)
    sd = res.S_diag(np.array([x - h, x + h]))
    lhs = x * (sd[1] - sd[0]) / (2 * h)
    q = res.apply_inverse(lambda z: whittaker_w(kernel.idx, None, z), [x])[0]
    p = res.apply_inverse(lambda z: whittaker_w(kernel.idx.lowered(), None, z), [x])[0]
    s_row = res.S([x], op.grid.nodes)[0]
    s_col = res.S(op.grid.nodes, [x])[:, 0]
    s2 = float(np.sum(s_row * op.grid.weights * s_col))
    rhs = -c * p * q + s2
    if endpoint_terms:
        for e, sign in ((a1, 1.0), (a2, -1.0)):
            rhs += sign * e * float(res.S([x], [e])[0, 0] * res.S([e], [x])[0, 0])
    return float(lhs), float(rhs), abs(float(lhs) - float(rhs))


# ---- block operators, spectral facts ----------------------------------------------

def block_r_matrix(a, rule):
    """Nystrom matrix of [[0, R_a], [-R_{-a}, 0]] on a grid; exactly skew-symmetric."""
    sw = np.sqrt(rule.weights)
    ra = sw[:, None] * RaKernel(a).matrix(rule.nodes) * sw[None, :]
    rma = sw[:, None] * RaKernel(-a).matrix(rule.nodes) * sw[None, :]
    zero = np.zeros_like(ra)
    return np.block([[zero, ra], [-rma, zero]]), ra, rma


def block_inverse_check(a, interval=(0.05, 10.0), n=60):
    """max entrywise gap between inv(I+R) and the closed-form blocks; skewness of R."""
    rule = gauss_legendre(n, *interval)
    big, ra, rma = block_r_matrix(a, rule)
    eye = np.eye(n)
    inv = numerics.inv(np.eye(2 * n) + big)
    p = numerics.inv(eye + ra @ rma)
    qm = numerics.inv(eye + rma @ ra)
    closed = np.block([[p, -ra @ qm], [rma @ p, qm]])
    return float(np.max(np.abs(inv - closed))), float(np.max(np.abs(big + big.T)))


def composed_kernel_check(a, x, z, levels=10):
    """int_0^inf R_a(x,y) R_{-a}(y,z) dy by quadrature vs the Whittaker closed form."""
    from .kernels import composed_kernel
    rule = half_line(levels, 0.0, 1.0)
    y = rule.lo_gap
    quad = float((RaKernel(a).matrix([x], y)[0] * rule.weights) @ RaKernel(-a).matrix(y, [z])[:, 0])
    closed = float(composed_kernel(a).matrix([x], [z])[0, 0])
    return quad, closed


def stieltjes_eigenvalue(a, m):
    """Gamma(1/2-a+im) Gamma(1/2-a-im) = |Gamma(1/2-a+im)|^2."""
    return math.exp(2 * log_gamma_complex(complex(0.5 - a, m)).real)


def eigenfunction(kappa, m, x, levels=10):
    """f_{k,m}(x) = W_{k,im}(x) / x."""
    x = np.asarray(x, dtype=float)
    return whittaker_w(kappa, complex(0, m) if m else 0.0, x, levels) / x


def eigenrelation_610(a, m, x_samples=(0.5, 1.0, 2.0), levels=11):
    """max relative residual of R_a f_{-a,m} = |Gamma(1/2-a+im)|^2 f_{a,m} at the samples."""
    lam = stieltjes_eigenvalue(a, m)
    rule = half_line(levels, 0.0, 1.0)
    y = rule.lo_gap
    fy = eigenfunction(-a, m, y, levels)
    xs = np.asarray(x_samples, dtype=float)
    lhs = RaKernel(a).matrix(xs, y) @ (rule.weights * fy)
    rhs = lam * eigenfunction(a, m, xs, levels)
    resid = np.abs(lhs - rhs) / np.maximum(np.abs(rhs), 1e-300)
    return CheckResult("stieltjes-eigenrelation", {"a": a, "m": m}, float(lhs[0]), float(rhs[0]),
                       float(resid.max()), 1e-6 if a == 0 else 1e-5,
                       {"eigenvalue": lam, "residuals": resid.tolist()})


NORM_BASE = 25.0


def norm_rule(b_cutoff, lo=1e-40, per_panel=6):
    """Composite log-Gauss rule on [lo, b] with panels at 25 * 2^k.

    Rules for b in {25, 50, 100, ...} are nested, so the top Nystrom eigenvalue
    is monotone in the cutoff by Cauchy interlacing.
    """
    edges = [NORM_BASE]
    while edges[0] / 2 > lo:
        edges.insert(0, edges[0] / 2)
    edges.insert(0, lo)
    while edges[-1] < b_cutoff * (1 - 1e-12):
        edges.append(edges[-1] * 2)
    if not math.isclose(edges[-1], b_cutoff, rel_tol=1e-12):
        raise ParameterError(f"b_cutoff must be {NORM_BASE} * 2^k, got {b_cutoff}")
    # the lowest panel is merged so that every panel except it spans a factor 2
    return composite([gauss_legendre_log(per_panel, l, h) for l, h in zip(edges, edges[1:])])


def norm_614(a, b_cutoff=200.0, lo=1e-40, per_panel=6):
    """Top eigenvalue of R_a R_{-a} on [lo, b_cutoff] (Nystrom on nested log panels)."""
    rule = norm_rule(b_cutoff, lo, per_panel)
    op = nystrom(StieltjesKernel(a), (rule.lo, rule.hi), len(rule), rule)
    return float(op.eigenvalues[0])


def norm_bound(a):
    return math.pi ** 2 / math.cos(math.pi * a) ** 2


def trace_check(kernel, interval, n=200, levels=10):
    """Nystrom trace vs tanh-sinh quadrature of the diagonal on [lo, hi]."""
    from .quadrature import tanh_sinh
    op = nystrom(kernel, interval, n, "log-gauss" if interval[0] > 0 else "gauss")
    rule = tanh_sinh(levels, *interval)
    diag_int = float(rule.weights @ kernel.diag(rule.nodes))
    return op.trace(), diag_int


def gap_ratio_check(spec, N, s, n=60):
    """Delta_N(s)/Delta_N(0) against det(I - J_N 1_{(0,s)}).

    The Fredholm side is the N x N determinant det(I - G) with
    G_ij = int_0^s phi_i phi_j w dx (tanh-sinh), and, as a second route, the
    Nystrom determinant of the weighted Christoffel-Darboux kernel on
    tanh-sinh nodes.  Returns (ratio, gram_det, nystrom_det).
    """
    from .kernels import CDJacobiKernel
    from .moments import hankel_det_restricted
    from .quadrature import tanh_sinh
    with mpmath.workdps(max(60, 20 + 10 * N)):
        ratio = float(hankel_det_restricted(spec, N, s) / hankel_det_restricted(spec, N, 0))
    kern = CDJacobiKernel(spec, N)
    rule = tanh_sinh(10, 0.0, s)
    phi = kern.basis(rule.lo_gap)
    gram = (phi * rule.weights) @ phi.T
    gram_det = float(numerics.det(np.eye(N) - gram))
    op = nystrom(kern, (0.0, s), n, "tanh-sinh")
    return ratio, gram_det, float(fredholm_det(op))

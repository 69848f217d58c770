"""Determinantal point processes on a bounded interval: Mercer decomposition
of a Nystrom-discretized kernel, exact spectral sampling, correlation and
Janossy densities, gap probabilities and the counting generating function.

The Whittaker kernel has K(x, x) ~ C/x at the origin, so the process on
(0, s] has infinitely many points almost surely and det(I - K 1_{(0,s]}) = 0.
Everything here therefore works on [lo, hi] with lo > 0 (default 1e-3);
the cd_jacobi projection kernels are bounded and may use lo = 0.
"""
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import numerics
from .errors import ContractError, ParameterError
from .operators import make_rule, nystrom
from .quadrature import gauss_legendre, gauss_legendre_log, tanh_sinh

DEFAULT_LO = 1e-3
EIG_TOL = 1e-6
RANK_TOL = 1e-12


def default_rule(interval):
    return "log-gauss" if interval[0] > 0 else "gauss"


@dataclass(frozen=True, eq=False)
class MercerDecomposition:
    """Eigenpairs of a symmetric kernel on [lo, hi].

    ``vectors`` are orthonormal eigenvectors of the weight-symmetrized Nystrom
    matrix; eigenfunction values on the grid are vectors / sqrt(w).
    """
    interval: tuple
    eigenvalues: np.ndarray
    vectors: np.ndarray
    op: object
    rank_cut: int

    @property
    def kernel(self):
        return self.op.kernel

    @property
    def grid(self):
        return self.op.grid

    def eigenfunctions_on_grid(self):
        return self.vectors / self.op.sqrt_w[:, None]

    def eigenfunctions(self, x, k=None):
        """Nystrom interpolation phi_i(x) = lambda_i^{-1} sum_j K(x, x_j) w_j phi_i(x_j).

        Returns an array of shape (k, len(x)) for the leading k = rank_cut
        eigenfunctions.
        """
        k = self.rank_cut if k is None else k
        x = np.atleast_1d(np.asarray(x, dtype=float))
        rows = self.op.interp_rows(x)
        return (rows @ self.vectors[:, :k] / self.eigenvalues[:k]).T

    def trace(self):
        return float(np.sum(self.eigenvalues))

    def orthonormality_error(self):
        v = self.vectors[:, :self.rank_cut]
        return float(np.max(np.abs(v.T @ v - np.eye(v.shape[1])))) if v.size else 0.0


def mercer(kernel, interval, n=200, rule=None):
    """Mercer decomposition of ``kernel`` restricted to ``interval``.

    Raises ContractError if an eigenvalue leaves [-1e-6, 1 + 1e-6], which for
    the Whittaker kernel means the parameters do not give a valid process.
    """
    if not getattr(kernel, "symmetric", False):
        raise ContractError("Mercer decomposition needs a symmetric kernel")
    op = nystrom(kernel, interval, n, rule or default_rule(interval))
    vals, vecs = numerics.sym_eig(op.matrix, tol=1e-10)
    if vals[0] > 1 + EIG_TOL or vals[-1] < -EIG_TOL:
        raise ContractError(f"kernel eigenvalues [{vals[-1]:.3g}, {vals[0]:.6g}] leave [0, 1]; "
                            "not a determinantal kernel")
    vals = np.clip(vals, 0.0, 1.0)
    rank = int(np.sum(vals >= RANK_TOL))
    return MercerDecomposition(tuple(interval), vals, vecs, op, rank)


def gap_probability(kernel, s, lo=DEFAULT_LO, n=120, rule=None):
    """Probability of no points in [lo, s]: det(I - K) there."""
    if not s > lo:
        if s > 0:
            return 1.0
        raise ParameterError(f"need s > 0, got {s}")
    op = nystrom(kernel, (lo, s), n, rule or default_rule((lo, s)))
    return float(numerics.det(np.eye(op.n) - op.matrix))


def gap_curve(kernel, s_values, lo=DEFAULT_LO, n=120):
    return [(float(s), gap_probability(kernel, s, lo, n)) for s in s_values]


# ---- sampling ---------------------------------------------------------------------

@dataclass(frozen=True)
class SampleConfig:
    seed: int
    n_samples: int
    interval: tuple
    kernel: object = None
    n_nodes: int = 200
    grid_size: int = 2048

    def __post_init__(self):
        if self.n_samples < 0:
            raise ParameterError("n_samples must be >= 0")
        if not 0 <= self.seed < 2 ** 64:
            raise ParameterError("seed must be a 64-bit unsigned integer")
        if self.grid_size < 16:
            raise ParameterError("grid_size must be >= 16")


def sample_rngs(seed, n):
    """Independent PCG64 generators, one per sample index."""
    return [np.random.Generator(np.random.PCG64(s)) for s in np.random.SeedSequence(seed).spawn(n)]


@dataclass(frozen=True, eq=False)
class _SampleGrid:
    edges: np.ndarray
    centers: np.ndarray
    widths: np.ndarray
    geometric: bool
    phi: np.ndarray  # eigenfunctions at centers, shape (rank, grid)


def _sample_grid(dec, size):
    lo, hi = dec.interval
    geometric = lo > 0
    edges = np.geomspace(lo, hi, size + 1) if geometric else np.linspace(lo, hi, size + 1)
    centers = np.sqrt(edges[:-1] * edges[1:]) if geometric else 0.5 * (edges[:-1] + edges[1:])
    return _SampleGrid(edges, centers, np.diff(edges), geometric, dec.eigenfunctions(centers))


class Sampler:
    """Spectral (Hough-Krishnapur-Peres-Virag) sampler on a Mercer decomposition.

    Each draw selects eigenfunction i with probability lambda_i and then
    samples the projection process sequentially: the next point has density
    |Q^T phi(x)|^2 / r on a fine grid (inverse CDF over cells, uniform in the
    cell, log-uniform if the grid is geometric), after which the chosen
    direction is projected out of Q.
    """

    def __init__(self, dec, grid_size=2048):
        self.dec = dec
        self.grid = _sample_grid(dec, grid_size)

    def draw(self, rng):
        lam = self.dec.eigenvalues[:self.dec.rank_cut]
        chosen = np.flatnonzero(rng.random(lam.size) < lam)
        if chosen.size == 0:
            return np.empty(0)
        g = self.grid
        phi = g.phi[chosen]
        q = np.eye(chosen.size)
        points = []
        while q.shape[1]:
            amp = q.T @ phi
            dens = np.sum(amp * amp, axis=0) * g.widths
            cdf = np.cumsum(dens)
            cell = min(int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right")), cdf.size - 1)
            u = rng.random()
            lo, hi = g.edges[cell], g.edges[cell + 1]
            x = lo * (hi / lo) ** u if g.geometric else lo + u * (hi - lo)
            points.append(x)
            v = amp[:, cell]
            v = v / np.linalg.norm(v)
            # orthonormal basis of the complement of v inside span(q)
            basis = np.linalg.svd(np.eye(v.size) - np.outer(v, v))[0][:, :v.size - 1]
            q = q @ basis
        return np.sort(np.asarray(points))

    def sample(self, n_samples, seed):
        return [self.draw(rng) for rng in sample_rngs(seed, n_samples)]


def sample(config, dec=None):
    """List of point configurations (sorted numpy arrays), reproducible in the seed."""
    if dec is None:
        if config.kernel is None:
            raise ParameterError("SampleConfig.kernel is required without a decomposition")
        dec = mercer(config.kernel, config.interval, config.n_nodes)
    return Sampler(dec, config.grid_size).sample(config.n_samples, config.seed)


# ---- correlation functions ------------------------------------------------------

def correlation(kernel, points):
    """rho_l(x_1..x_l) = det[K(x_i, x_j)]."""
    x = np.atleast_1d(np.asarray(points, dtype=float))
    if x.size == 0:
        return 1.0
    return float(numerics.det(kernel.matrix(x)))


@dataclass(frozen=True, eq=False)
class JanossyData:
    """T = K (I - K)^{-1} on [lo, hi] via Nystrom, with det(I + T)^{-1} = det(I - K)."""
    op: object
    inv: np.ndarray
    det_i_minus_k: float

    def T(self, x, y=None):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = x if y is None else np.atleast_1d(np.asarray(y, dtype=float))
        rx = self.op.interp_rows(x)
        ry = rx if y is x else self.op.interp_rows(y)
        return self.op.kernel.matrix(x, y) + rx @ self.inv @ ry.T


def janossy_data(kernel, interval, n=200, rule=None):
    op = nystrom(kernel, interval, n, rule or default_rule(interval))
    a = np.eye(op.n) - op.matrix
    return JanossyData(op, numerics.inv(a), float(numerics.det(a)))


def janossy_density(kernel, interval, points, n=200, data=None):
    """det(I + T)^{-1} det[T(x_i, x_j)] with T = K (I - K)^{-1} on the interval.

    This is the density of the event "exactly these points and no others in
    the interval"; integrating the l = 1 case gives P(exactly one point).
    The correlation function is ``correlation`` instead.
    """
    lo, hi = interval
    x = np.atleast_1d(np.asarray(points, dtype=float))
    if x.size and (x.min() < lo or x.max() > hi):
        raise ParameterError("points must lie inside the interval")
    data = data or janossy_data(kernel, interval, n)
    if x.size == 0:
        return data.det_i_minus_k
    return data.det_i_minus_k * float(numerics.det(data.T(x)))


def count_distribution(eigenvalues):
    """P(#points = k), k = 0..len, for independent Bernoulli(lambda_i) counts."""
    p = np.array([1.0])
    for lam in eigenvalues:
        p = np.convolve(p, [1 - lam, lam])
    return p


# ---- counting statistics ----------------------------------------------------------

def counts_in(samples, interval):
    lo, hi = interval
    return np.array([np.count_nonzero((s >= lo) & (s < hi)) for s in samples])


def _interval_op(kernel, interval, n):
    return nystrom(kernel, interval, n, default_rule(interval))


def expected_count(kernel, interval, levels=10):
    rule = tanh_sinh(levels, *interval)
    return float(rule.weights @ kernel.diag(rule.nodes))


def count_variance(kernel, interval, n=200):
    """int_B K(x,x) dx - int int_{BxB} K(x,y)^2 dx dy."""
    m = _interval_op(kernel, interval, n).matrix
    return float(np.trace(m) - np.sum(m * m))


@dataclass(frozen=True)
class CountStats:
    mean: float
    mean_se: float
    var: float
    var_se: float
    n: int


def count_stats(counts):
    c = np.asarray(counts, dtype=float)
    n = c.size
    mean = c.mean()
    var = c.var(ddof=1)
    m4 = np.mean((c - mean) ** 4)
    return CountStats(float(mean), float(math.sqrt(var / n)), float(var),
                      float(math.sqrt(max(m4 - var * var * (n - 3) / (n - 1), 0.0) / n)), n)


def binned_intensity(samples, edges):
    """Per-bin mean counts and their standard errors."""
    counts = np.stack([np.histogram(s, bins=edges)[0] for s in samples]) if len(samples) else \
        np.zeros((0, len(edges) - 1))
    return counts.mean(axis=0), counts.std(axis=0, ddof=1) / math.sqrt(max(len(samples), 1))


# ---- generating function ----------------------------------------------------------

def generating_function_det(kernel, B1, B2, z1, z2, n=80):
    """det(I - sum_j (1 - z_j) K 1_{B_j}) for disjoint B1, B2."""
    if max(B1[0], B2[0]) < min(B1[1], B2[1]):
        raise ParameterError("B1 and B2 must be disjoint")
    if abs(z1) > 1 or abs(z2) > 1:
        raise ParameterError("need |z_j| <= 1")
    rules = [gauss_legendre_log(n, *b) if b[0] > 0 else gauss_legendre(n, *b) for b in (B1, B2)]
    x = np.concatenate([r.nodes for r in rules])
    sw = np.sqrt(np.concatenate([r.weights for r in rules]))
    d = np.sqrt(np.concatenate([np.full(n, 1 - z1), np.full(n, 1 - z2)]))
    m = (d * sw)[:, None] * kernel.matrix(x) * (d * sw)[None, :]
    return float(numerics.det(np.eye(x.size) - m))


def generating_function_mc(samples, B1, B2, z1, z2):
    n1 = counts_in(samples, B1)
    n2 = counts_in(samples, B2)
    vals = np.power(float(z1), n1) * np.power(float(z2), n2)
    return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(vals.size))


def generating_function_check(kernel, interval, B1, B2, z1, z2, samples=None, n=80):
    """Monte Carlo E[z1^{n1} z2^{n2}] against the Fredholm determinant.

    Returns (mc, se, det, residual in units of se).  Without samples only the
    determinant is computed and mc, se are NaN.
    """
    for b in (B1, B2):
        if b[0] < interval[0] or b[1] > interval[1]:
            raise ParameterError("B1, B2 must lie inside the interval")
    rhs = generating_function_det(kernel, B1, B2, z1, z2, n)
    if samples is None:
        return math.nan, math.nan, rhs, math.nan
    mc, se = generating_function_mc(samples, B1, B2, z1, z2)
    return mc, se, rhs, abs(mc - rhs) / se if se > 0 else (0.0 if mc == rhs else math.inf)

"""Precision-generic dense linear algebra.

Matrices are numpy arrays.  A float64 array runs through LAPACK; an object
array holding ``mpmath.mpf`` entries runs through the pure-Python routines
below at the current mpmath working precision.
"""
import os
import warnings
from contextlib import contextmanager

import mpmath
import numpy as np
import scipy.linalg

from .errors import ContractError, DimensionError, SingularityError

DEFAULT_DIGITS = int(os.environ.get("WHITKERN_DIGITS", "120"))


@contextmanager
def digits(dps=None):
    """Run a block at ``dps`` decimal digits (default ``DEFAULT_DIGITS``)."""
    with mpmath.workdps(DEFAULT_DIGITS if dps is None else int(dps)):
        yield


def big(x):
    """Convert to an mpf at the current working precision."""
    if isinstance(x, str):
        return mpmath.mpf(x)
    return mpmath.mpf(x)


def is_big(m):
    return isinstance(m, np.ndarray) and m.dtype == object


def as_big(m):
    m = np.asarray(m)
    out = np.empty(m.shape, dtype=object)
    for idx, v in np.ndenumerate(m):
        out[idx] = mpmath.mpf(v) if not isinstance(v, mpmath.mpf) else v
    return out


def as_float(m):
    m = np.asarray(m)
    if m.dtype == object:
        return np.vectorize(float, otypes=[float])(m)
    return m.astype(float)


def _square(m):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return m


def lu(m):
    """Partial-pivot LU of an object matrix.

    Returns (LU packed, permutation, sign, pivots).  Zero pivots are kept so
    ``det`` can return an exact 0; ``solve`` rejects them.
    """
    a = _square(m).copy()
    n = a.shape[0]
    perm = list(range(n))
    sign = 1
    pivots = []
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(a[i, k]))
        if p != k:
            a[[k, p]] = a[[p, k]]
            perm[k], perm[p] = perm[p], perm[k]
            sign = -sign
        piv = a[k, k]
        pivots.append(piv)
        if piv == 0:
            continue
        for i in range(k + 1, n):
            f = a[i, k] / piv
            a[i, k] = f
            if f:
                a[i, k + 1:] = a[i, k + 1:] - f * a[k, k + 1:]
    return a, perm, sign, pivots


def det(m):
    """Determinant by pivoted LU in the matrix's own scalar type."""
    m = _square(m)
    if m.shape[0] == 0:
        return mpmath.mpf(1) if is_big(m) else 1.0
    if is_big(m):
        _, _, sign, pivots = lu(m)
        out = mpmath.mpf(sign)
        for p in pivots:
            out *= p
        return out
    with warnings.catch_warnings():
        # an exactly singular matrix has determinant 0, which is a valid answer here
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu_, piv = scipy.linalg.lu_factor(m, check_finite=False)
    sign = (-1) ** int(np.sum(piv != np.arange(len(piv))))
    return float(sign * np.prod(np.diag(lu_)))


def slogdet(m):
    """(sign, log|det|) for float matrices; avoids overflow for large n."""
    m = _square(m)
    if is_big(m):
        d = det(m)
        return (0 if d == 0 else (1 if d > 0 else -1)), mpmath.log(abs(d))
    return np.linalg.slogdet(m)


def pivot_ratio(m):
    """max|pivot| / min|pivot| of the LU factorization; inf if singular."""
    m = _square(m)
    if is_big(m):
        pivots = [abs(p) for p in lu(m)[3]]
    else:
        pivots = list(np.abs(np.diag(scipy.linalg.lu_factor(m, check_finite=False)[0])))
    lo = min(pivots)
    return mpmath.inf if lo == 0 else max(pivots) / lo


def solve(m, rhs):
    """Solve m x = rhs (vector or matrix right side)."""
    m = _square(m)
    rhs = np.asarray(rhs)
    if not is_big(m):
        lu_, piv = scipy.linalg.lu_factor(m, check_finite=False)
        d = np.abs(np.diag(lu_))
        if d.min() == 0 or d.min() <= np.finfo(float).eps * d.max() * 1e-2:
            raise SingularityError(
                f"matrix singular to working precision (min pivot {d.min():.3e})", pivot=float(d.min()))
        return scipy.linalg.lu_solve((lu_, piv), rhs, check_finite=False)
    a, perm, _, pivots = lu(m)
    small = min(abs(p) for p in pivots)
    if small == 0:
        raise SingularityError("matrix singular to working precision (zero pivot)", pivot=0)
    n = a.shape[0]
    vec = rhs.ndim == 1
    b = as_big(rhs.reshape(n, -1))[perm]
    for i in range(n):
        for k in range(i):
            if a[i, k]:
                b[i] = b[i] - a[i, k] * b[k]
    for i in range(n - 1, -1, -1):
        for k in range(i + 1, n):
            b[i] = b[i] - a[i, k] * b[k]
        b[i] = b[i] / a[i, i]
    return b[:, 0] if vec else b


def inv(m):
    m = _square(m)
    eye = np.eye(m.shape[0])
    return solve(m, as_big(eye) if is_big(m) else eye)


def _check_symmetric(m, tol=1e-12):
    asym = np.max(np.abs(as_float(m - m.T))) if m.size else 0.0
    scale = np.max(np.abs(as_float(m))) if m.size else 0.0
    if asym > tol * max(scale, np.finfo(float).tiny):
        raise ContractError(f"matrix not symmetric: relative asymmetry {asym / scale:.3e} > {tol:g}")


def sym_eig(m, tol=1e-12):
    """Eigenvalues in descending order and orthonormal eigenvector columns."""
    m = _square(m)
    _check_symmetric(m, tol)
    if is_big(m):
        vals, vecs = mpmath.eigsy(mpmath.matrix(m.tolist()))
        vals = np.array([vals[i] for i in range(m.shape[0])], dtype=object)
        vecs = np.array(vecs.tolist(), dtype=object)
        order = sorted(range(len(vals)), key=lambda i: -vals[i])
        return vals[order], vecs[:, order]
    vals, vecs = np.linalg.eigh(0.5 * (m + m.T))
    return vals[::-1].copy(), vecs[:, ::-1].copy()


def cholesky(m):
    """Lower Cholesky factor; raises ContractError if not positive definite."""
    m = _square(m)
    _check_symmetric(m)
    if not is_big(m):
        try:
            return np.linalg.cholesky(m)
        except np.linalg.LinAlgError as exc:
            raise ContractError("matrix not positive definite") from exc
    n = m.shape[0]
    low = as_big(np.zeros((n, n)))
    for j in range(n):
        s = m[j, j] - sum(low[j, k] ** 2 for k in range(j))
        if s <= 0:
            raise ContractError(f"matrix not positive definite (pivot {j})")
        low[j, j] = mpmath.sqrt(s)
        for i in range(j + 1, n):
            low[i, j] = (m[i, j] - sum(low[i, k] * low[j, k] for k in range(j))) / low[j, j]
    return low

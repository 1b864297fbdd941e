"""Small dense symmetric eigensolver and helpers on the mass-zero hyperplane.

The eigensolver is a cyclic Jacobi iteration. It is compiled with numba when
available; the pure-Python path runs the identical algorithm.
"""
import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

EIG_TOL = 1e-8


def _jacobi_sweeps(a, v, max_sweeps):
    n = a.shape[0]
    norm2 = 0.0
    for i in range(n):
        for j in range(n):
            norm2 += a[i, j] * a[i, j]
    stop = (1e-16 * 1e-16) * norm2
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if off <= stop:
            return sweep
        for p in range(n):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(1.0 + theta * theta))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return max_sweeps


if numba is not None:
    _jacobi_sweeps_fast = numba.njit(cache=True)(_jacobi_sweeps)
else:  # pragma: no cover
    _jacobi_sweeps_fast = _jacobi_sweeps


def jacobi_eigh(a, max_sweeps=100, compiled=True):
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    a : (n, n) array_like
        Symmetric matrix. Only its symmetric part is used.
    max_sweeps : int
        Upper bound on full sweeps over the off-diagonal pairs.
    compiled : bool
        Use the numba-compiled kernel when it is available.

    Returns
    -------
    w : (n,) ndarray
        Eigenvalues in ascending order.
    v : (n, n) ndarray
        Orthonormal eigenvectors as columns, matching ``w``.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0))
    work = np.ascontiguousarray(0.5 * (a + a.T))
    v = np.eye(n)
    kernel = _jacobi_sweeps_fast if compiled else _jacobi_sweeps
    sweeps = kernel(work, v, max_sweeps)
    if sweeps >= max_sweeps:
        raise np.linalg.LinAlgError("Jacobi iteration did not converge")
    w = np.diag(work).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def numerical_rank(w, tol=EIG_TOL):
    """Count eigenvalues with ``|w| > tol * max|w|``."""
    w = np.asarray(w, dtype=float)
    if w.size == 0:
        return 0
    scale = np.abs(w).max()
    if scale == 0.0:
        return 0
    return int(np.count_nonzero(np.abs(w) > tol * scale))


def helmert_basis(n):
    """Orthonormal basis (as columns) of the hyperplane ``sum(alpha) == 0`` in R^n."""
    basis = np.zeros((n, max(n - 1, 0)))
    for k in range(1, n):
        basis[:k, k - 1] = 1.0
        basis[k, k - 1] = -float(k)
        basis[:, k - 1] /= np.sqrt(k * (k + 1.0))
    return basis


def hyperplane_spectrum(d):
    """Spectrum of the quadratic form ``alpha @ d @ alpha`` on mass-zero vectors.

    Returns eigenvalues (ascending) and the matching eigenvectors expressed
    as mass-zero vectors in R^n, each of unit Euclidean norm.
    """
    d = np.asarray(d, dtype=float)
    basis = helmert_basis(d.shape[0])
    w, u = jacobi_eigh(basis.T @ d @ basis)
    return w, basis @ u

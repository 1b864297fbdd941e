"""Signed measures on a finite space and the constant M(X).

A measure is a weight vector ``alpha`` (weight of each point mass); its total
mass is ``alpha.sum()``. The energy is ``alpha @ d @ alpha`` and the potential
is ``d @ alpha``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import MetricError
from .linalg import EIG_TOL, helmert_basis, jacobi_eigh
from .metric import require_metric

FINITE = "finite"
INFINITE = "infinite"
NOT_QH = "not_quasihypermetric"


def _check(d, *vectors):
    d = np.asarray(d, dtype=float)
    out = []
    for v in vectors:
        v = np.asarray(v, dtype=float)
        if v.shape != (d.shape[0],):
            raise MetricError(f"weight vector of shape {v.shape} does not match {d.shape[0]} points")
        out.append(v)
    return d, out


def energy(d, mu):
    d, (mu,) = _check(d, mu)
    return float(mu @ d @ mu)


def energy_pair(d, mu, nu):
    d, (mu, nu) = _check(d, mu, nu)
    return float(mu @ d @ nu)


def potential(d, mu):
    d, (mu,) = _check(d, mu)
    return d @ mu


def inner(d, mu, nu):
    """Semi-inner product ``-I(mu, nu)`` on mass-zero measures of a
    quasihypermetric space."""
    return -energy_pair(d, mu, nu)


def seminorm(d, mu):
    return float(np.sqrt(max(-energy(d, mu), 0.0)))


@dataclass(frozen=True)
class MValue:
    status: str
    value: float = float("nan")
    invariant: object = None  # mass-1 weight vector when finite

    @property
    def finite(self):
        return self.status == FINITE

    def to_dict(self):
        return {
            "status": self.status,
            "m": self.value if self.finite else None,
            "invariant": None if self.invariant is None else [float(x) for x in self.invariant],
        }


def _solve_ones(d, tol):
    """Minimum-norm least-squares solution of ``d @ alpha = 1`` through the
    eigendecomposition, and the relative residual."""
    n = d.shape[0]
    w, v = jacobi_eigh(d)
    ones = np.ones(n)
    coeff = v.T @ ones
    keep = np.abs(w) > tol * np.abs(w).max()
    alpha = v[:, keep] @ (coeff[keep] / w[keep])
    residual = np.linalg.norm(v[:, ~keep] @ coeff[~keep]) / np.sqrt(n)
    return alpha, float(residual)


def _massless(alpha, mass, tol):
    return abs(mass) <= tol * np.abs(alpha).sum()


def invariant_measure(d, tol=EIG_TOL):
    """Mass-1 measure with constant potential, or ``None`` if there is none.

    Returns ``(alpha, c)`` where ``d @ alpha == c`` everywhere and
    ``alpha.sum() == 1``. Solves ``d @ alpha = 1`` in the minimum-norm
    least-squares sense; no mass-1 invariant measure exists when that system
    is inconsistent or its solution carries zero total mass.
    """
    d = require_metric(d)
    n = d.shape[0]
    if n == 1:
        return np.ones(1), 0.0
    alpha, residual = _solve_ones(d, tol)
    mass = alpha.sum()
    if residual > tol or _massless(alpha, mass, tol):
        return None
    return alpha / mass, float(1.0 / mass)


def m_value(d, tol=EIG_TOL):
    """M(X) = sup of the energy over mass-1 measures.

    Writes a mass-1 measure as ``1/n + V beta`` with ``V`` an orthonormal
    basis of the mass-zero hyperplane. The energy is then the concave
    quadratic ``a + 2 b.beta + beta.A.beta`` (``A = V^T d V``,
    ``b = V^T d 1/n``), bounded above exactly when ``b`` has no component
    along the kernel of ``A``; the maximizer is the invariant measure and its
    potential value is M. A kernel component above ``tol * diameter`` means
    M is infinite.
    """
    d = require_metric(d)
    n = d.shape[0]
    if n == 1:
        return MValue(FINITE, 0.0, np.ones(1))
    basis = helmert_basis(n)
    w, u = jacobi_eigh(basis.T @ d @ basis)
    scale = np.abs(w).max()
    if w[-1] > tol * scale:
        return MValue(NOT_QH)
    base = np.full(n, 1.0 / n)
    b = u.T @ (basis.T @ (d @ base))
    null = np.abs(w) <= tol * scale
    if np.linalg.norm(b[null]) > tol * d.max():
        return MValue(INFINITE, float("inf"))
    beta = -(b[~null] / w[~null])
    alpha = base + basis @ (u[:, ~null] @ beta)
    return MValue(FINITE, float(np.mean(d @ alpha)), alpha)


def m_value_oracle(d, budget=10_000, restarts=32, seed=0, tol=1e-10):
    """Lower bound for M(X) by projected gradient ascent on ``sum(alpha) == 1``.

    Uses only energy gradients, no linear solves: Nesterov-accelerated ascent
    with step ``1/L``, ``L`` twice the max absolute row sum of ``d``. All
    ``restarts`` random starts run together for at most ``budget``
    iterations; the best final energy is returned.
    """
    d = np.asarray(d, dtype=float)
    n = d.shape[0]
    if n == 1:
        return 0.0
    lip = 2.0 * np.abs(d).sum(axis=1).max()
    step = 1.0 / lip
    rng = np.random.default_rng(seed)
    # one column per restart; every column stays on the affine set sum == 1
    alpha = rng.normal(size=(n, restarts))
    alpha += (1.0 - alpha.sum(axis=0)) / n
    prev = alpha.copy()
    for k in range(budget):
        look = alpha + (k / (k + 3.0)) * (alpha - prev)
        grad = 2.0 * (d @ look)
        grad -= grad.mean(axis=0)
        prev, alpha = alpha, look + step * grad
        if np.linalg.norm(grad, axis=0).max() < tol:
            break
    values = np.einsum("ir,ij,jr->r", alpha, d, alpha)
    return float(values.max())

"""Quasihypermetric / strictly quasihypermetric / bounded hypermetric tests."""
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import MetricError, NumericalFault
from .linalg import EIG_TOL, hyperplane_spectrum, jacobi_eigh, numerical_rank
from .metric import METRIC_TOL, require_metric

HYPERMETRIC_CAP = 2_000_000


def _orient(v):
    """Fix the sign of a vector so its first clearly nonzero entry is positive."""
    v = np.asarray(v, dtype=float)
    big = np.flatnonzero(np.abs(v) > 1e-9 * np.abs(v).max())
    if big.size and v[big[0]] < 0:
        v = -v
    return v


@dataclass(frozen=True)
class FormVerdict:
    quasihypermetric: bool
    strict: bool
    spectrum: np.ndarray
    witness: object  # mass-zero vector or None


def form_verdict(d, tol=EIG_TOL):
    """Sign pattern of ``alpha @ d @ alpha`` on the mass-zero hyperplane.

    An eigenvalue counts as zero when ``|lambda| <= tol * max|lambda|``.
    """
    d = np.asarray(d, dtype=float)
    if d.shape[0] == 1:
        return FormVerdict(True, True, np.zeros(0), None)
    w, vecs = hyperplane_spectrum(d)
    thr = tol * np.abs(w).max()
    top = w[-1]
    if top > thr:
        return FormVerdict(False, False, w, _orient(vecs[:, -1]))
    if top >= -thr:
        return FormVerdict(True, False, w, _orient(vecs[:, -1]))
    return FormVerdict(True, True, w, None)


def is_quasihypermetric(d, tol=EIG_TOL):
    """Return ``(verdict, witness)``; on failure the witness is a mass-zero
    vector with positive energy."""
    d = require_metric(d)
    v = form_verdict(d, tol)
    return v.quasihypermetric, (None if v.quasihypermetric else v.witness)


def is_strictly_quasihypermetric(d, tol=EIG_TOL):
    """Return ``(verdict, witness)``.

    For a non-strict quasihypermetric space the witness is a nonzero
    mass-zero vector of (numerically) zero energy; for a non-quasihypermetric
    space it is the positive-energy witness.
    """
    d = require_metric(d)
    v = form_verdict(d, tol)
    return v.strict, v.witness


def rank_distance_matrix(d, tol=EIG_TOL):
    w, _ = jacobi_eigh(np.asarray(d, dtype=float))
    return numerical_rank(w, tol)


@dataclass(frozen=True)
class HypermetricVerdict:
    bound: int
    checked: int
    violation: object = None  # integer vector b with sum 1 and b @ d @ b > 0
    value: float = 0.0

    @property
    def ok(self):
        return self.violation is None


def hypermetric_check_bounded(d, bound, tol=METRIC_TOL, cap=HYPERMETRIC_CAP):
    """Search Kelly's hypermetric inequalities over integer weights.

    Enumerates every integer ``b`` with ``sum(b) == 1`` and ``|b_i| <= bound``,
    ordered by ``|b|_1`` then lexicographically, and returns the first one with
    ``b @ d @ b > tol * diameter``. Passing is only a necessary condition.
    """
    d = require_metric(d)
    n = d.shape[0]
    if bound < 1:
        raise MetricError("hypermetric bound must be >= 1")
    total = (2 * bound + 1) ** n
    if total > cap:
        raise MetricError(f"enumeration of {total} vectors exceeds the cap {cap}")
    vals = np.arange(-bound, bound + 1)
    grid = np.array(list(itertools.product(vals, repeat=n)), dtype=np.int64).reshape(-1, n)
    grid = grid[grid.sum(axis=1) == 1]
    order = np.lexsort(tuple(grid[:, i] for i in range(n - 1, -1, -1)) + (np.abs(grid).sum(axis=1),))
    grid = grid[order]
    forms = np.einsum("ij,jk,ik->i", grid, d, grid)
    bad = np.flatnonzero(forms > tol * max(float(d.max()), 1e-300))
    if bad.size:
        k = int(bad[0])
        return HypermetricVerdict(bound, k + 1, grid[k].copy(), float(forms[k]))
    return HypermetricVerdict(bound, len(grid))


@dataclass(frozen=True)
class Classification:
    n: int
    quasihypermetric: bool
    strictly_quasihypermetric: bool
    m_finite: str  # "finite" | "infinite" | "not_applicable"
    rank: int
    spectrum: tuple
    certificate: object = None
    hypermetric: HypermetricVerdict = None

    def to_dict(self):
        out = {
            "n": self.n,
            "quasihypermetric": self.quasihypermetric,
            "strictly_quasihypermetric": self.strictly_quasihypermetric,
            "m_finite": self.m_finite,
            "rank": self.rank,
            "spectrum": [float(x) for x in self.spectrum],
            "certificate": None if self.certificate is None else [float(x) for x in self.certificate],
        }
        if self.hypermetric is not None:
            h = self.hypermetric
            out["hypermetric"] = {
                "bound": h.bound,
                "checked": h.checked,
                "violation": None if h.violation is None else [int(x) for x in h.violation],
                "value": h.value,
            }
        return out


def classify(d, tol=EIG_TOL, hypermetric_bound=None):
    """Full classification of a finite metric space.

    For ``n > 1`` quasihypermetric spaces the spectral strictness verdict is
    cross-checked against "M finite and D non-singular"; disagreement raises
    :class:`NumericalFault`.
    """
    from .measures import m_value

    d = require_metric(d)
    n = d.shape[0]
    v = form_verdict(d, tol)
    rank = rank_distance_matrix(d, tol)
    if v.quasihypermetric:
        m_finite = "finite" if m_value(d, tol).finite else "infinite"
    else:
        m_finite = "not_applicable"
    if n > 1 and v.quasihypermetric:
        other = m_finite == "finite" and rank == n
        if other != v.strict:
            raise NumericalFault(
                f"strictness verdict {v.strict} disagrees with (M finite and rank == n) = {other}"
                f" (rank {rank}, M {m_finite}, spectrum {v.spectrum})"
            )
    hyper = None
    if hypermetric_bound is not None:
        hyper = hypermetric_check_bounded(d, hypermetric_bound)
    return Classification(
        n=n,
        quasihypermetric=v.quasihypermetric,
        strictly_quasihypermetric=v.strict,
        m_finite=m_finite,
        rank=rank,
        spectrum=tuple(float(x) for x in v.spectrum),
        certificate=v.witness,
        hypermetric=hyper,
    )

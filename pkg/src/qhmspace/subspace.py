"""Maximal strictly quasihypermetric subspaces of a finite quasihypermetric space."""
import itertools
from dataclasses import dataclass

import numpy as np

from .classify import form_verdict, rank_distance_matrix
from .errors import MetricError, NotQuasihypermetricError, NumericalFault
from .linalg import EIG_TOL
from .measures import m_value, potential
from .metric import require_metric, submatrix

ENUMERATE_CAP = 12


@dataclass(frozen=True)
class SubspaceResult:
    indices: tuple
    rank: int
    m_finite: bool
    predicted_cardinality: int

    @property
    def cardinality(self):
        return len(self.indices)

    def to_dict(self):
        return {
            "indices": list(self.indices),
            "cardinality": self.cardinality,
            "rank": self.rank,
            "m_finite": self.m_finite,
            "predicted_cardinality": self.predicted_cardinality,
        }


def _strict(d, idx, tol):
    return form_verdict(submatrix(d, idx), tol).strict


def _require_qh(d, tol):
    v = form_verdict(d, tol)
    if not v.quasihypermetric:
        raise NotQuasihypermetricError("space is not quasihypermetric", witness=v.witness)


def predicted_cardinality(n, rank, m_finite):
    """Size of every maximal strict subspace: the rank of ``d`` when M is
    finite, one less when M is infinite (one point always counts for n == 1)."""
    if n == 1:
        return 1
    return rank if m_finite else rank - 1


def maximal_strict_subspace(d, tol=EIG_TOL):
    """Greedy maximal strict subspace, scanning points in index order.

    The cardinality is checked against the rank prediction; a mismatch means
    the numerical rank and the spectral tests disagree and is raised.
    """
    d = require_metric(d)
    _require_qh(d, tol)
    n = d.shape[0]
    chosen = []
    for i in range(n):
        if _strict(d, chosen + [i], tol):
            chosen.append(i)
    rank = rank_distance_matrix(d, tol)
    finite = m_value(d, tol).finite
    pred = predicted_cardinality(n, rank, finite)
    if len(chosen) != pred:
        raise NumericalFault(
            f"greedy maximal strict subspace has {len(chosen)} points, rank law predicts {pred}"
        )
    return SubspaceResult(tuple(chosen), rank, finite, pred)


def enumerate_maximal_strict_subspaces(d, tol=EIG_TOL, cap=ENUMERATE_CAP):
    """Every maximal strict subset, by brute force over all subsets.

    Strictness is inherited by subsets, so a strict set is maximal iff no
    one-point extension is strict.
    """
    d = require_metric(d)
    n = d.shape[0]
    if n > cap:
        raise MetricError(f"subset enumeration over {n} points exceeds the cap {cap}")
    _require_qh(d, tol)
    strict = set()
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            # prune: all one-smaller subsets must already be strict
            if size > 1 and any(combo[:j] + combo[j + 1:] not in strict for j in range(size)):
                continue
            if _strict(d, combo, tol):
                strict.add(combo)
    maximal = []
    for s in sorted(strict, key=lambda c: (len(c), c)):
        ext = (tuple(sorted(s + (x,))) for x in range(n) if x not in s)
        if not any(e in strict for e in ext):
            maximal.append(s)
    return maximal


def extension_measure(d, subset, x, tol=EIG_TOL):
    """The unique mass-1 weight vector ``mu`` on ``subset`` with
    ``I(mu - delta_x) == 0``.

    Taken from the zero-energy direction of the non-strict space
    ``subset + {x}``. Returned as a full-length vector (zero off ``subset``).
    """
    d = require_metric(d)
    subset = sorted(int(i) for i in subset)
    x = int(x)
    if x in subset:
        raise MetricError("x must lie outside the subspace")
    if not _strict(d, subset, tol):
        raise MetricError("subspace is not strictly quasihypermetric")
    idx = subset + [x]
    v = form_verdict(submatrix(d, idx), tol)
    if v.strict or not v.quasihypermetric:
        raise MetricError(f"subspace plus point {x} is strict; the subspace is not maximal")
    nu = v.witness
    weight_x = nu[-1]
    if abs(weight_x) <= tol * np.abs(nu).max():
        raise NumericalFault("zero-energy witness has no weight at the added point")
    mu = np.zeros(d.shape[0])
    mu[subset] = -nu[:-1] / weight_x
    return mu


@dataclass(frozen=True)
class PreservationReport:
    m_subspace: float
    m_space: float
    potential_spread: float  # max - min of the extended invariant potential on X
    ok: bool


def verify_m_preservation(d, subset, tol=EIG_TOL, rtol=1e-8):
    """Check M(Y) == M(X) and that Y's invariant measure stays invariant on X."""
    d = require_metric(d)
    subset = sorted(int(i) for i in subset)
    whole = m_value(d, tol)
    if not whole.finite:
        raise MetricError("M(X) must be finite")
    part = m_value(submatrix(d, subset), tol)
    if not part.finite:
        raise NumericalFault("M(Y) is not finite although M(X) is")
    mu = np.zeros(d.shape[0])
    mu[subset] = part.invariant
    pot = potential(d, mu)
    spread = float(pot.max() - pot.min())
    scale = max(abs(whole.value), 1.0)
    ok = abs(part.value - whole.value) <= rtol * scale and spread <= rtol * scale
    return PreservationReport(part.value, whole.value, spread, ok)

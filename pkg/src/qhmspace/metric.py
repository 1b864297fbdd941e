"""Finite metric spaces as dense distance matrices."""
from dataclasses import dataclass, field

import numpy as np

from .errors import MetricError

METRIC_TOL = 1e-9


@dataclass(frozen=True)
class Violation:
    kind: str  # "diagonal" | "symmetry" | "positivity" | "triangle"
    index: tuple
    magnitude: float


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self):
        return not self.violations


def as_distance_matrix(d):
    """Return ``d`` as a read-only float array, checking only the shape."""
    arr = np.array(d, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MetricError(f"distance matrix must be square and non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MetricError("distance matrix has non-finite entries")
    arr.setflags(write=False)
    return arr


def validate_metric(d, tol=METRIC_TOL):
    """Check the metric axioms, reporting every violation larger than ``tol * diameter``.

    Positivity violations carry the offending distance as magnitude; the other
    kinds carry the amount by which the axiom fails. Triangle violations are
    indexed ``(i, j, k)`` for ``d[i, k] > d[i, j] + d[j, k]``.
    """
    d = as_distance_matrix(d)
    n = d.shape[0]
    scale = float(np.abs(d).max()) or 1.0
    thr = tol * scale
    out = []
    for i in range(n):
        if abs(d[i, i]) > thr:
            out.append(Violation("diagonal", (i,), abs(d[i, i])))
    iu, ju = np.triu_indices(n, 1)
    for i, j in zip(iu, ju):
        gap = abs(d[i, j] - d[j, i])
        if gap > thr:
            out.append(Violation("symmetry", (int(i), int(j)), float(gap)))
        if d[i, j] <= thr:
            out.append(Violation("positivity", (int(i), int(j)), float(d[i, j])))
    # excess[i, j, k] = d[i, k] - d[i, j] - d[j, k]
    excess = d[:, None, :] - d[:, :, None] - d[None, :, :]
    for i, j, k in np.argwhere(excess > thr):
        if i < k and j != i and j != k:
            out.append(Violation("triangle", (int(i), int(j), int(k)), float(excess[i, j, k])))
    return ValidationReport(tuple(out))


def require_metric(d, tol=METRIC_TOL):
    """``as_distance_matrix`` plus a hard failure on any metric violation."""
    d = as_distance_matrix(d)
    report = validate_metric(d, tol)
    if not report.ok:
        first = report.violations[0]
        raise MetricError(
            f"not a metric: {len(report.violations)} violation(s), first is "
            f"{first.kind} at {first.index} (magnitude {first.magnitude:.3g})"
        )
    return d


def diameter(d):
    return float(np.max(d))


def normalize_diameter(d):
    """Rescale ``d`` to diameter 1. M scales by the same factor."""
    d = as_distance_matrix(d)
    if d.shape[0] < 2:
        raise MetricError("cannot normalize a one-point space")
    diam = diameter(d)
    if diam <= 0.0:
        raise MetricError("cannot normalize a space of zero diameter")
    out = d / diam
    out.setflags(write=False)
    return out


def submatrix(d, indices):
    idx = np.asarray(list(indices), dtype=int)
    return np.asarray(d)[np.ix_(idx, idx)]

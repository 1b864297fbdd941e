"""Finite subsets of (R^n, |.|_1): coordinate projections and upper bounds on M."""
from dataclasses import dataclass

import numpy as np

from .embed import PointConfig
from .errors import MetricError, NumericalFault
from .linalg import EIG_TOL
from .measures import m_value
from .metric import diameter, require_metric

LOW = "low"
HIGH = "high"


def _coords(p):
    x = p.points if isinstance(p, PointConfig) else np.atleast_2d(np.asarray(p, dtype=float))
    return x


def l1_metric(p):
    x = _coords(p)
    d = np.abs(x[:, None, :] - x[None, :, :]).sum(axis=2)
    off = d[~np.eye(len(x), dtype=bool)]
    if off.size and off.min() <= 0.0:
        raise MetricError("L1 configuration has coincident points")
    return require_metric(d)


def coordinate_diameters(p):
    x = _coords(p)
    return x.max(axis=0) - x.min(axis=0)


@dataclass(frozen=True)
class BoundsReport:
    k: int
    n: int
    diameter: float
    m_actual: float
    sum_proj_bound: float
    dim_bound: float
    card_bound: float
    refined_bound: float = None  # when n >= 2 and k <= 2n
    four_point_bound: float = None  # when k <= 4

    def bounds(self):
        out = {
            "sum_proj_bound": self.sum_proj_bound,
            "dim_bound": self.dim_bound,
            "card_bound": self.card_bound,
        }
        if self.refined_bound is not None:
            out["refined_bound"] = self.refined_bound
        if self.four_point_bound is not None:
            out["four_point_bound"] = self.four_point_bound
        return out

    def to_dict(self):
        return {"k": self.k, "n": self.n, "diameter": self.diameter, "m_actual": self.m_actual, **self.bounds()}


def l1_upper_bounds(p, tol=1e-9):
    """All applicable upper bounds on M for a point set with the L1 metric,
    with the actual M. A violated bound raises :class:`NumericalFault`."""
    x = _coords(p)
    k, n = x.shape
    d = l1_metric(x)
    diam = diameter(d)
    mv = m_value(d, EIG_TOL)
    if not mv.finite:
        raise NumericalFault(f"L1 space reported with M status {mv.status}")
    report = BoundsReport(
        k=k,
        n=n,
        diameter=diam,
        m_actual=mv.value,
        sum_proj_bound=0.5 * float(coordinate_diameters(x).sum()),
        dim_bound=n * diam / 2.0,
        card_bound=k * diam / 4.0,
        refined_bound=min(k / 4.0, n / 2.0 - 0.25) * diam if (n >= 2 and k <= 2 * n) else None,
        four_point_bound=0.75 * diam if k <= 4 else None,
    )
    slack = tol * max(diam, 1.0)
    for name, bound in report.bounds().items():
        if report.m_actual > bound + slack:
            raise NumericalFault(f"M = {report.m_actual!r} exceeds {name} = {bound!r}")
    return report


def l1_necessary_condition(d, tol=EIG_TOL):
    """Necessary condition for L1-embeddability of an abstract space:
    M <= (k/4) D. Returns ``(holds, m, bound)``; ``holds`` False proves the
    space is not L1-embeddable."""
    d = require_metric(d)
    k = d.shape[0]
    mv = m_value(d, tol)
    bound = k * diameter(d) / 4.0
    if not mv.finite:
        return False, mv.value, bound
    return mv.value <= bound * (1 + 1e-12), mv.value, bound


def energy_1d(xs, alphas):
    """``sum_ij alpha_i alpha_j |x_i - x_j|`` for points on a line."""
    xs = np.asarray(xs, dtype=float)
    a = np.asarray(alphas, dtype=float)
    return float(np.sum(np.outer(a, a) * np.abs(xs[:, None] - xs[None, :])))


def fold_negative_weight(xs, alphas, side):
    """Merge a negative extreme weight into its neighbour.

    With ``xs`` ascending and ``sum(alphas) == 1``: on the low side a negative
    ``alpha_1`` is added to ``alpha_2`` and ``x_1`` dropped; the high side is
    symmetric. The 1-D energy does not decrease.
    """
    xs = np.asarray(xs, dtype=float)
    a = np.asarray(alphas, dtype=float)
    if len(xs) != len(a) or len(xs) < 2:
        raise MetricError("need at least two points with matching weights")
    if np.any(np.diff(xs) < 0):
        raise MetricError("xs must be ascending")
    if side == LOW:
        if not a[0] < 0:
            raise MetricError("low-side fold needs a negative first weight")
        beta = a[1:].copy()
        beta[0] += a[0]
        return xs[1:].copy(), beta
    if side == HIGH:
        if not a[-1] < 0:
            raise MetricError("high-side fold needs a negative last weight")
        beta = a[:-1].copy()
        beta[-1] += a[-1]
        return xs[:-1].copy(), beta
    raise MetricError(f"side must be {LOW!r} or {HIGH!r}")


def fold_all(xs, alphas):
    """Fold negative extreme weights until both ends are nonnegative."""
    xs = np.asarray(xs, dtype=float)
    a = np.asarray(alphas, dtype=float)
    while len(a) > 1 and (a[0] < 0 or a[-1] < 0):
        xs, a = fold_negative_weight(xs, a, LOW if a[0] < 0 else HIGH)
    return xs, a


def one_dim_energy_bound(xs, alphas, tol=1e-9):
    """``(x_s - x_r) / 2`` where ``r``/``s`` are the first/last indices with
    nonnegative weight; the 1-D energy is asserted not to exceed it."""
    xs = np.asarray(xs, dtype=float)
    a = np.asarray(alphas, dtype=float)
    if not np.isclose(a.sum(), 1.0, rtol=0, atol=1e-9):
        raise MetricError("weights must sum to 1")
    if np.any(np.diff(xs) < 0):
        raise MetricError("xs must be ascending")
    nonneg = np.flatnonzero(a >= 0)
    if nonneg.size == 0:
        raise MetricError("no nonnegative weight")
    bound = 0.5 * (xs[nonneg[-1]] - xs[nonneg[0]])
    e = energy_1d(xs, a)
    if e > bound + tol * max(1.0, float(np.abs(xs).max())) * max(1.0, float(np.abs(a).sum()) ** 2):
        raise NumericalFault(f"1-D energy {e!r} exceeds bound {bound!r}")
    return float(bound)

"""Schoenberg embeddings: finite quasihypermetric spaces as non-obtuse point sets.

A space is quasihypermetric exactly when ``(X, sqrt(d))`` embeds isometrically
in Euclidean space. Conversely the squared distances of a point set form a
metric exactly when no angle of the set is obtuse.
"""
from dataclasses import dataclass

import numpy as np

from .classify import _orient
from .errors import MetricError, NotQuasihypermetricError, ObtuseConfigurationError
from .linalg import EIG_TOL, jacobi_eigh
from .metric import METRIC_TOL, require_metric

ACUTE = "acute"
NON_OBTUSE = "nonobtuse"
OBTUSE = "obtuse"


@dataclass(frozen=True)
class PointConfig:
    points: np.ndarray  # (k, dim)
    labels: tuple = None
    norm: str = "l2"  # "l2" or "l1"

    def __post_init__(self):
        pts = np.atleast_2d(np.array(self.points, dtype=float))
        if pts.ndim != 2:
            raise MetricError("points must be a (k, dim) array")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != len(pts):
                raise MetricError("one label per point required")
            object.__setattr__(self, "labels", labels)
        if self.norm not in ("l1", "l2"):
            raise MetricError(f"unknown norm {self.norm!r}")

    @property
    def k(self):
        return self.points.shape[0]

    @property
    def dim(self):
        return self.points.shape[1]

    def names(self):
        return self.labels if self.labels is not None else tuple(f"p{i}" for i in range(self.k))


@dataclass(frozen=True)
class AngleClass:
    kind: str
    witness: tuple = None  # (i, j, k) with the obtuse angle at j


@dataclass(frozen=True)
class SphereFit:
    center: np.ndarray
    radius: float
    max_residual: float


def _points(p):
    return p.points if isinstance(p, PointConfig) else np.atleast_2d(np.asarray(p, dtype=float))


def schoenberg_embed(d, tol=EIG_TOL):
    """Coordinates ``x`` with ``|x_i - x_j|^2 == d[i, j]``.

    Classical multidimensional scaling of ``d`` itself (not of ``d**2``):
    the Gram matrix ``-P d P / 2`` is factored by eigendecomposition. The
    dimension is its numerical rank, axes are ordered by decreasing
    eigenvalue and each axis is oriented so its first clearly nonzero
    coordinate is positive.
    """
    d = require_metric(d)
    n = d.shape[0]
    if n == 1:
        return PointConfig(np.zeros((1, 0)).reshape(1, 0))
    center = np.eye(n) - 1.0 / n
    gram = -0.5 * center @ d @ center
    w, v = jacobi_eigh(gram)
    top = max(w[-1], 0.0)
    if w[0] < -tol * top:
        raise NotQuasihypermetricError(
            f"Gram matrix has eigenvalue {w[0]:.3g} < 0; the space is not quasihypermetric",
            witness=_orient(v[:, 0]),
        )
    keep = w > tol * top
    w, v = w[keep][::-1], v[:, keep][:, ::-1]
    coords = v * np.sqrt(w)
    for j in range(coords.shape[1]):
        coords[:, j] = _orient(coords[:, j])
    return PointConfig(coords)


def angle_classification(p, tol=METRIC_TOL):
    """Classify all angles of a point set.

    The angle at ``j`` in ``(i, j, k)`` is obtuse when
    ``(x_i - x_j) . (x_k - x_j) < -tol * diam^2`` and right when the dot
    product is within that band of zero. The obtuse witness is the
    lexicographically first ``(i, j, k)`` with ``i < k``.
    """
    x = _points(p)
    k = len(x)
    if k < 2:
        return AngleClass(ACUTE)
    gram = x @ x.T
    sq = np.diag(gram)
    dist2 = sq[:, None] + sq[None, :] - 2.0 * gram
    if k and np.any(dist2[~np.eye(k, dtype=bool)] <= 1e-24 * max(dist2.max(), 1e-300)):
        raise MetricError("point configuration has coincident points")
    if k < 3:
        return AngleClass(ACUTE)
    scale = dist2.max()
    # dots[i, j, k] = (x_i - x_j) . (x_k - x_j)
    dots = gram[:, None, :] - gram[:, :, None] - gram[None, :, :] + sq[None, :, None]
    mask = np.ones((k, k, k), dtype=bool)
    idx = np.arange(k)
    mask[idx, idx, :] = False
    mask[:, idx, idx] = False
    mask[idx, :, idx] = False
    bad = np.argwhere((dots < -tol * scale) & mask)
    bad = bad[bad[:, 0] < bad[:, 2]]
    if len(bad):
        i, j, kk = (int(v) for v in bad[0])
        return AngleClass(OBTUSE, (i, j, kk))
    if np.any((np.abs(dots) <= tol * scale) & mask):
        return AngleClass(NON_OBTUSE)
    return AngleClass(ACUTE)


def config_to_metric(p, tol=METRIC_TOL):
    """Squared Euclidean distances of a non-obtuse configuration."""
    x = _points(p)
    cls = angle_classification(x, tol)
    if cls.kind == OBTUSE:
        raise ObtuseConfigurationError(
            f"obtuse angle at point {cls.witness[1]} in triple {cls.witness}", witness=cls.witness
        )
    diff = x[:, None, :] - x[None, :, :]
    d = np.einsum("ijk,ijk->ij", diff, diff)
    return require_metric(d, tol)


def affine_rank(p, tol=EIG_TOL):
    """Dimension of the affine hull plus one (size of a maximal affinely
    independent subset)."""
    x = _points(p)
    if len(x) == 0:
        return 0
    s = np.linalg.svd(x - x.mean(axis=0), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 1
    return 1 + int(np.count_nonzero(s > tol * s[0]))


def circumsphere(p, tol=1e-9):
    """Sphere through all points, taken inside their affine hull.

    The center is constrained to the affine hull, so the fit is the unique
    sphere of minimal dimension when it exists. Returns ``None`` when the
    worst residual exceeds ``tol * radius``.
    """
    x = _points(p)
    if len(x) < 2:
        raise MetricError("circumsphere needs at least two points")
    base = x[0]
    rel = x - base
    _, s, vt = np.linalg.svd(rel - rel.mean(axis=0), full_matrices=False)
    basis = vt[s > EIG_TOL * s[0]].T  # (dim, h)
    # |x_i - c|^2 == |x_0 - c|^2 with c = base + basis @ t
    a = 2.0 * rel[1:] @ basis
    b = np.einsum("ij,ij->i", rel[1:], rel[1:])
    t, *_ = np.linalg.lstsq(a, b, rcond=None)
    center = base + basis @ t
    dist = np.linalg.norm(x - center, axis=1)
    radius = float(dist.mean())
    resid = float(np.abs(dist - radius).max())
    if resid > tol * radius:
        return None
    return SphereFit(center, radius, resid)


def antipodal_pair(p, sphere, tol=1e-9):
    """First pair ``(i, j)`` (lexicographic) of diametrically opposite points."""
    x = _points(p)
    k = len(x)
    for i in range(k):
        for j in range(i + 1, k):
            if np.linalg.norm(x[i] + x[j] - 2.0 * sphere.center) <= tol * sphere.radius:
                return i, j
    return None

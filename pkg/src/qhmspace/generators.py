"""Constructors for the example spaces and the random test corpus."""
import itertools
from dataclasses import dataclass

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

from .embed import PointConfig, affine_rank, config_to_metric
from .errors import MetricError
from .l1geom import l1_metric
from .metric import diameter, require_metric


def gen_discrete(n):
    if n < 1:
        raise MetricError("n must be >= 1")
    return require_metric(np.ones((n, n)) - np.eye(n))


def gen_circle(k, radius):
    """``k`` equally spaced points on a circle with the arc-length metric."""
    if k < 2 or radius <= 0:
        raise MetricError("need k >= 2 and radius > 0")
    i = np.arange(k)
    gap = np.abs(i[:, None] - i[None, :])
    return require_metric(2.0 * np.pi * radius / k * np.minimum(gap, k - gap))


def box_sign_patterns(m):
    """Sign patterns of the 2^m box corners.

    Index 0 is all-plus and index ``i`` (1..m) flips coordinate ``i - 1``; these
    first ``m + 1`` corners are affinely independent. The rest follow in
    ``itertools.product`` order.
    """
    first = [np.ones(m)]
    for i in range(m):
        s = np.ones(m)
        s[i] = -1.0
        first.append(s)
    seen = {tuple(s) for s in first}
    rest = [np.array(s) for s in itertools.product((1.0, -1.0), repeat=m) if s not in seen]
    return np.array(first + rest).reshape(-1, m)


def gen_box_corners(half_sides, subset=None):
    """Corners ``(+-a_1, ..., +-a_m)`` of a rectangular box and their metric.

    ``subset`` selects corner indices (see :func:`box_sign_patterns`); the
    first ``m + 1`` indices are the canonical affinely independent corners.
    """
    a = np.asarray(half_sides, dtype=float).ravel()
    if a.size == 0 or np.any(a <= 0):
        raise MetricError("half-sides must be positive")
    corners = box_sign_patterns(a.size) * a
    if subset is not None:
        subset = [int(i) for i in subset]
        if len(set(subset)) != len(subset) or any(i < 0 or i >= len(corners) for i in subset):
            raise MetricError(f"invalid corner subset {subset}")
        corners = corners[subset]
    cfg = PointConfig(corners)
    return cfg, config_to_metric(cfg)


def gen_star(n):
    """``{+-e_1, ..., +-e_n, 0}`` in (R^n, L1), its metric, and the invariant
    weights (1/2 on each ``+-e_i``, ``-(n - 1)`` at the origin)."""
    if n < 2:
        raise MetricError("star needs n >= 2")
    pts = []
    labels = []
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        pts += [e, -e]
        labels += [f"+e{i + 1}", f"-e{i + 1}"]
    pts.append(np.zeros(n))
    labels.append("z")
    cfg = PointConfig(np.array(pts), labels, norm="l1")
    weights = np.full(2 * n + 1, 0.5)
    weights[-1] = -(n - 1.0)
    return cfg, l1_metric(cfg), weights


@dataclass(frozen=True)
class JoinSpec:
    d1: np.ndarray
    d2: np.ndarray
    c: float

    def __post_init__(self):
        big = max(diameter(self.d1), diameter(self.d2))
        if self.c <= 0 or 2 * self.c < big:
            raise MetricError(f"cross distance {self.c} too small for component diameter {big}")


def gen_join(spec):
    """Disjoint union with constant distance ``c`` between the two parts."""
    d1 = np.asarray(spec.d1, dtype=float)
    d2 = np.asarray(spec.d2, dtype=float)
    n1, n2 = len(d1), len(d2)
    d = np.full((n1 + n2, n1 + n2), float(spec.c))
    d[:n1, :n1] = d1
    d[n1:, n1:] = d2
    return require_metric(d)


def _check_eps(eps, top):
    if not 0 < eps <= top:
        raise MetricError(f"epsilon {eps} outside (0, {top}]: the join would not have diameter 1")


def join_discrete_space(m, eps):
    """Discrete m-point space joined to a discrete 2-point space; strictly
    quasihypermetric with diameter 1 and M growing like 1/eps."""
    if m < 3:
        raise MetricError("m must be >= 3")
    _check_eps(eps, (m + 2) / (4.0 * m))
    c = (m - 1) / (2.0 * m) + 0.25 + eps
    return gen_join(JoinSpec(gen_discrete(m), gen_discrete(2), c))


def join_discrete_value(m, eps):
    return ((m - 2) / m) ** 2 / (32.0 * eps) + (m - 1) / (2.0 * m) + 0.25 + eps / 2.0


def join_circle_space(m, eps):
    """Discrete m-point space joined to four equally spaced circle points of
    radius 2/(pi m); quasihypermetric, not strict, diameter 1."""
    if m < 3:
        raise MetricError("m must be >= 3")
    _check_eps(eps, 0.5)
    return gen_join(JoinSpec(gen_discrete(m), gen_circle(4, 2.0 / (np.pi * m)), 0.5 + eps))


def join_circle_value(m, eps):
    return ((m - 2) / m) ** 2 / (8.0 * eps) + 0.5 + eps / 2.0


def gen_regular_simplex(n):
    """Vertices of a regular simplex on the unit sphere in R^(n-1)."""
    if n < 2:
        raise MetricError("simplex needs n >= 2")
    e = np.eye(n) - 1.0 / n
    u, s, _ = np.linalg.svd(e)
    pts = e @ u[:, : n - 1]
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


# --- random non-obtuse configurations -------------------------------------

def _dots(x):
    g = x @ x.T
    sq = np.diag(g)
    dots = g[:, None, :] - g[:, :, None] - g[None, :, :] + sq[None, :, None]
    k = len(x)
    idx = np.arange(k)
    dots[idx, idx, :] = np.inf
    dots[:, idx, idx] = np.inf
    dots[idx, :, idx] = np.inf
    dist2 = sq[:, None] + sq[None, :] - 2 * g
    return dots, dist2


def _repair_steps(x, iters, margin):
    """Thales-sphere moves in place until no angle is below ``margin``.

    Returns ``(steps, status)``: status 0 means repaired, 1 means out of
    steps, 2 means the vertex to move sits at the midpoint and needs a random
    direction (drawn by the caller, who then resumes).
    """
    k, dim = x.shape
    for step in range(iters):
        g = x @ x.T
        scale = 0.0
        for i in range(k):
            for j in range(k):
                d2 = g[i, i] + g[j, j] - 2.0 * g[i, j]
                if d2 > scale:
                    scale = d2
        best = np.inf
        bi = bj = bk = 0
        for i in range(k):
            for j in range(k):
                if j == i:
                    continue
                for kk in range(k):
                    if kk == i or kk == j:
                        continue
                    v = g[i, kk] - g[i, j] - g[j, kk] + g[j, j]
                    if v < best:
                        best = v
                        bi, bj, bk = i, j, kk
        if best >= margin * scale:
            return step, 0
        rad = 0.0
        nv = 0.0
        for c in range(dim):
            rad += (x[bi, c] - x[bk, c]) ** 2
            nv += (x[bj, c] - 0.5 * (x[bi, c] + x[bk, c])) ** 2
        rad = 0.5 * np.sqrt(rad)
        nv = np.sqrt(nv)
        if nv < 1e-12 * rad:
            return step, 2
        for c in range(dim):
            mid = 0.5 * (x[bi, c] + x[bk, c])
            x[bj, c] = mid + (x[bj, c] - mid) / nv * rad * (1.0 + 4.0 * margin)
    return iters, 1


if numba is not None:
    _repair_steps = numba.njit(cache=True)(_repair_steps)


def _repair(x, rng, iters=400, margin=1e-6):
    """Move obtuse vertices onto the Thales sphere of the opposite side."""
    x = np.array(x, dtype=float)
    if len(x) < 3:
        return x
    left = iters
    while left > 0:
        used, status = _repair_steps(x, left, margin)
        if status == 0:
            return x
        if status == 1:
            return None
        left -= used
        # degenerate: push the midpoint vertex off in a random direction
        dots, _ = _dots(x)
        i, j, k = np.unravel_index(np.argmin(dots), dots.shape)
        mid = 0.5 * (x[i] + x[k])
        rad = 0.5 * np.linalg.norm(x[i] - x[k])
        v = rng.normal(size=x.shape[1])
        x[j] = mid + v / np.linalg.norm(v) * rad * (1.0 + 4.0 * margin)
        left -= 1
    return None


def _random_rotation(dim, rng):
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)))
    return q * np.sign(np.diag(r))


def _init_box(n, dim, rng):
    a = rng.uniform(0.3, 1.0, size=dim)
    corners = box_sign_patterns(dim) * a
    pick = rng.choice(len(corners), size=n, replace=False)
    return corners[np.sort(pick)] @ _random_rotation(dim, rng).T


def _init_prism(n, dim, rng):
    base_n = (n + 1) // 2
    if dim < 2 or base_n > 2 ** (dim - 1):
        return None
    base = _repair(rng.uniform(-1, 1, size=(base_n, dim - 1)), rng)
    if base is None:
        return None
    h = rng.uniform(0.2, 1.5)
    pts = np.vstack([np.hstack([base, np.zeros((base_n, 1))]), np.hstack([base, np.full((base_n, 1), h)])])
    pick = rng.choice(len(pts), size=n, replace=False)
    return pts[np.sort(pick)] @ _random_rotation(dim, rng).T


def gen_random_nonobtuse(n, dim, seed, attempts=200, families=("uniform", "box", "prism", "jitter")):
    """Random non-obtuse configuration of ``n`` points in R^dim, deterministic in ``seed``.

    Each attempt draws a starting set from one of ``families`` (uniform
    points, a subset of random box corners, a subset of a right prism over a
    random non-obtuse base, or jittered box corners) and repairs obtuse
    angles by moving the vertex onto the sphere having the opposite side as
    diameter.
    """
    if n < 1 or dim < 1:
        raise MetricError("need n >= 1 and dim >= 1")
    if n > 2 ** dim:
        raise MetricError(f"no non-obtuse set of {n} points exists in R^{dim} (max {2 ** dim})")
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        family = families[rng.integers(len(families))]
        if family == "box":
            x = _init_box(n, dim, rng)
        elif family == "prism":
            x = _init_prism(n, dim, rng)
        elif family == "jitter":
            x = _repair(_init_box(n, dim, rng) + rng.normal(scale=0.05, size=(n, dim)), rng)
        else:
            x = _repair(rng.uniform(-1.0, 1.0, size=(n, dim)), rng)
        if x is None:
            continue
        _, dist2 = _dots(x)
        off = dist2[~np.eye(n, dtype=bool)]
        if off.size and off.min() < 1e-3 * off.max():
            continue
        return PointConfig(x)
    raise MetricError(f"no non-obtuse configuration of {n} points in R^{dim} after {attempts} attempts")


@dataclass(frozen=True)
class CorpusItem:
    config: PointConfig
    d: np.ndarray
    n: int
    dim: int
    seed: int


def _well_conditioned(cfg, band=(1e-7, 1e-3)):
    x = cfg.points
    s = np.linalg.svd(x - x.mean(axis=0), compute_uv=False)
    if s.size and s[0] > 0:
        rel = s / s[0]
        if np.any((rel > band[0]) & (rel < band[1])):
            return False
    if len(x) >= 3 and affine_rank(x) > 1:
        from .embed import circumsphere

        loose = circumsphere(x, tol=band[1])
        tight = circumsphere(x, tol=band[0])
        if loose is not None and tight is None:
            return False
    return True


def _dim_weights(dim_max):
    # R^1 only holds 2-point sets; keep them rare
    w = np.ones(dim_max)
    w[0] = 0.1
    return w / w.sum()


def random_corpus(count, seed=0, n_max=8, dim_max=4):
    """Seeded corpus of diameter-1 spaces from random non-obtuse configurations.

    Configurations that sit numerically between two rank or sphericity
    verdicts (relative singular values or circumsphere residuals in
    ``(1e-7, 1e-3)``) are skipped so every verdict is unambiguous.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        dim = int(rng.choice(np.arange(1, dim_max + 1), p=_dim_weights(dim_max)))
        n = int(rng.integers(2, min(n_max, 2 ** dim) + 1))
        item_seed = int(rng.integers(2**31))
        try:
            cfg = gen_random_nonobtuse(n, dim, item_seed)
        except MetricError:
            continue
        if not _well_conditioned(cfg):
            continue
        d = config_to_metric(cfg)
        scale = diameter(d)
        cfg = PointConfig(cfg.points / np.sqrt(scale))
        out.append(CorpusItem(cfg, config_to_metric(cfg), n, dim, item_seed))
    return out

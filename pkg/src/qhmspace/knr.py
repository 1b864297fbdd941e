"""Empirical lower bounds for K(n, r).

K(n, r) is the supremum of M over diameter-1 quasihypermetric spaces with
``n`` points, finite M and maximal strict subspaces of size ``r``. Through the
Schoenberg correspondence such a space is a non-obtuse set of ``n`` points
spanning R^(r-1) and lying on a sphere; with the sphere of radius ``rho`` the
normalized value is ``M / D = 2 rho^2 / max|p_i - p_j|^2``. The search
hill-climbs point positions on the unit sphere to maximize that ratio.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .classify import form_verdict
from .embed import PointConfig, affine_rank, circumsphere, config_to_metric
from .errors import MetricError, NumericalFault
from .generators import _dots, _repair, box_sign_patterns, gen_regular_simplex
from .measures import m_value
from .metric import normalize_diameter
from .subspace import maximal_strict_subspace

ANGLE_TOL = 1e-12
RANK_TOL = 1e-6
MIN_SEPARATION = 1e-6


@dataclass
class KnrResult:
    n: int
    r: int
    best_ratio: float
    config: PointConfig = None
    history: list = field(default_factory=list)
    known_infinite: bool = False
    verified: bool = False
    moves: int = 0
    seed: int = 0

    def to_dict(self):
        return {
            "n": self.n,
            "r": self.r,
            "best_ratio": self.best_ratio,
            "known_infinite": self.known_infinite,
            "verified": self.verified,
            "moves": self.moves,
            "seed": self.seed,
            "config": None if self.config is None else self.config.points.tolist(),
        }


def is_feasible(n, r):
    """Cells where spaces of type (n, r) exist: ``r <= n <= 2^(r-1)``, n >= 2."""
    return n >= 2 and r >= 2 and r <= n <= 2 ** (r - 1)


def is_known_infinite(n, r):
    return is_feasible(n, r) and n >= 5 and r >= math.ceil((n + 5) / 2)


def _valid(x, rank):
    """Non-obtuse, pairwise separated and affinely spanning ``rank`` points."""
    dots, dist2 = _dots(x)
    scale = dist2.max()
    if dots.min() < -ANGLE_TOL * scale:
        return False
    off = dist2[~np.eye(len(x), dtype=bool)]
    if off.min() < MIN_SEPARATION * scale:
        return False
    return affine_rank(x, RANK_TOL) == rank


def _chords(x):
    diff = x[:, None, :] - x[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _sphere_ratio(x):
    """``2 rho^2 / max chord^2`` for points on the unit sphere centred at 0."""
    return 2.0 / _chords(x).max()


def _score(x):
    """Ratio plus a tie-break: the long chords measured by a high power sum.

    Many configurations have several chords of maximal length, and a single
    point move cannot shorten all of them; the power sum still rewards
    shortening one, which moves the climb across such plateaus.
    """
    c = _chords(x)
    top = c.max()
    return 2.0 / top, float(np.sum((c / top) ** 16))


def certify(config, n, r, tol=1e-8):
    """Re-derive the normalized M of a configuration through the metric
    machinery and check its type (n, r). Returns the normalized M."""
    d = normalize_diameter(config_to_metric(config))
    if d.shape[0] != n:
        raise NumericalFault(f"configuration has {d.shape[0]} points, expected {n}")
    if not form_verdict(d, tol).quasihypermetric:
        raise NumericalFault("configuration space is not quasihypermetric")
    mv = m_value(d, tol)
    if not mv.finite:
        raise NumericalFault("configuration space has infinite M")
    size = maximal_strict_subspace(d, tol).cardinality
    if size != r:
        raise NumericalFault(f"maximal strict subspaces have {size} points, expected {r}")
    return mv.value


def _prism(n, r, rng, tries=50):
    """Subset of a right prism over a random acute base, on its circumsphere.

    Returns ``None`` when no acute base of the needed size turns up.
    """
    dim = r - 1
    base_n = (n + 1) // 2
    if dim < 2 or base_n > dim:
        return None
    for _ in range(tries):
        base = _repair(rng.uniform(-1.0, 1.0, size=(base_n, dim - 1)), rng, margin=1e-3)
        if base is not None:
            break
    else:
        return None
    h = rng.uniform(0.1, 0.8) * np.sqrt(_dots(base)[1].max())
    pts = np.vstack([np.hstack([base, np.zeros((base_n, 1))]), np.hstack([base, np.full((base_n, 1), h)])])
    x = pts[np.sort(rng.choice(len(pts), size=n, replace=False))]
    sphere = circumsphere(x)
    if sphere is None:
        return None
    return (x - sphere.center) / sphere.radius


def _initial(n, r, rng, attempt):
    dim = r - 1
    if n == r and attempt == 0:
        return gen_regular_simplex(n)
    if attempt % 2 == 1:
        x = _prism(n, r, rng)
        if x is not None and _valid(x, r):
            return x
    a = rng.uniform(0.3, 1.0, size=dim)
    corners = box_sign_patterns(dim) * a
    extra = rng.choice(np.arange(r, len(corners)), size=n - r, replace=False)
    x = corners[np.concatenate([np.arange(r), np.sort(extra)])]
    return x / np.linalg.norm(a)


def _stretch(x, rng, sigma):
    """Rescale along one principal axis and refit onto the unit sphere.

    Right angles between principal directions survive, so prisms and boxes
    keep their shape class; ``None`` when the result is not cospherical.
    """
    centred = x - x.mean(axis=0)
    _, _, vt = np.linalg.svd(centred, full_matrices=False)
    u = vt[rng.integers(len(vt))]
    y = x + (np.exp(rng.normal(scale=sigma)) - 1.0) * np.outer(centred @ u, u)
    sphere = circumsphere(y)
    if sphere is None:
        return None
    return (y - sphere.center) / sphere.radius


def _climb(n, r, moves, seed, attempt, stretch=0.25):
    rng = np.random.default_rng(seed)
    x = _initial(n, r, rng, attempt)
    if not _valid(x, r):
        raise NumericalFault("initial configuration is not of the required type")
    ratio, tie = _score(x)
    history = [(0, ratio)]
    sigma = 0.05
    for move in range(1, moves + 1):
        if rng.random() < stretch:
            y = _stretch(x, rng, sigma)
            if y is None:
                sigma = max(sigma * 0.98, 1e-7)
                continue
        else:
            i = rng.integers(n)
            step = rng.normal(scale=sigma, size=r - 1)
            step -= (step @ x[i]) * x[i]
            y = x.copy()
            y[i] = x[i] + step
            y[i] /= np.linalg.norm(y[i])
        new, new_tie = _score(y)
        if (new > ratio or (new == ratio and new_tie <= tie)) and _valid(y, r):
            if new > ratio:
                history.append((move, new))
            x, ratio, tie = y, new, new_tie
            sigma = min(sigma * 1.2, 0.5)
        else:
            sigma = max(sigma * 0.98, 1e-7)
    return ratio, x, history


def lifted_acute_configuration(n, r, rng, threshold, max_radius=1e6, attempts=200):
    """Acute n-point set in R^(r-2) pushed onto a sphere of growing radius in
    R^(r-1) until the normalized M exceeds ``threshold``.

    Only meaningful for the known-infinite cells, where ``n <= 2(r-2) - 1``.
    Returns ``(ratio, points)`` with the points rescaled to the unit sphere.
    """
    flat = r - 2
    base = None
    for _ in range(attempts):
        cand = _repair(rng.uniform(-1.0, 1.0, size=(n, flat)), rng, iters=2000, margin=1e-2)
        if cand is not None:
            base = cand
            break
    if base is None:
        raise MetricError(f"no acute {n}-point set found in R^{flat}")
    _, dist2 = _dots(base)
    base = (base - base.mean(axis=0)) / np.sqrt(dist2.max())
    rho = 1.0
    while rho <= max_radius:
        center = np.zeros(r - 1)
        center[-1] = rho
        lifted = np.hstack([base, np.zeros((n, 1))]) - center
        lifted = lifted / np.linalg.norm(lifted, axis=1, keepdims=True)
        if _valid(lifted, r):
            ratio = _sphere_ratio(lifted)
            if ratio > threshold:
                return ratio, lifted
        rho *= 1.5
    raise MetricError(f"lifting did not exceed threshold {threshold}")


def knr_lower_bound_search(n, r, budget=100_000, seed=0, restarts=8, threshold=5.0, threads=1, verify=True):
    """Best normalized M found among spaces of type (n, r).

    Hill climbing on the unit sphere of R^(r-1): one point moves along a
    random tangent direction, and the move is kept when the configuration
    stays non-obtuse and spanning and the ratio does not drop. Restarts begin
    at the regular simplex (when ``n == r``) or at random box-corner subsets
    containing an affinely independent r-set, and share ``budget`` moves.
    Cells known to be unbounded are instead lifted until the ratio exceeds
    ``threshold``. The winning configuration is re-certified through the
    metric machinery when ``verify`` is set.
    """
    if not is_feasible(n, r):
        raise MetricError(f"no spaces of type ({n}, {r}): need r <= n <= 2^(r-1)")
    if is_known_infinite(n, r):
        rng = np.random.default_rng(seed)
        ratio, x = lifted_acute_configuration(n, r, rng, threshold)
        result = KnrResult(n, r, ratio, PointConfig(x), [(0, ratio)], known_infinite=True, seed=seed)
    else:
        per = max(budget // restarts, 1)
        seeds = np.random.SeedSequence(seed).spawn(restarts)
        jobs = [(n, r, per, s, k) for k, s in enumerate(seeds)]
        if threads > 1:
            with ThreadPoolExecutor(threads) as pool:
                outs = list(pool.map(lambda job: _climb(*job), jobs))
        else:
            outs = [_climb(*job) for job in jobs]
        # max ratio, ties to the lowest restart index
        k = max(range(len(outs)), key=lambda j: (outs[j][0], -j))
        ratio, x, history = outs[k]
        result = KnrResult(n, r, ratio, PointConfig(x), history, moves=per * restarts, seed=seed)
    if verify:
        m = certify(result.config, n, r)
        if abs(m - result.best_ratio) > 1e-6 * max(1.0, m):
            raise NumericalFault(f"sphere ratio {result.best_ratio!r} disagrees with certified M {m!r}")
        result.verified = True
    return result


@dataclass
class MonotonicityReport:
    r: int
    results: list
    consistent: bool  # empirical bounds weakly decrease in n


def knr_monotonicity_probe(r, n_range, budget=100_000, seed=0, **kwargs):
    """Run the search for each n and report whether the empirical lower
    bounds decrease weakly with n. Informational: lower bounds need not."""
    ns = list(n_range)
    for n in ns:
        if not is_feasible(n, r):
            raise MetricError(f"cell ({n}, {r}) is infeasible")
    results = [knr_lower_bound_search(n, r, budget, seed, **kwargs) for n in ns]
    ratios = [res.best_ratio for res in results]
    consistent = all(a >= b - 1e-9 for a, b in zip(ratios, ratios[1:]))
    return MonotonicityReport(r, results, consistent)

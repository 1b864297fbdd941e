import numpy as np
import pytest

from qhmspace.embed import angle_classification, config_to_metric
from qhmspace.errors import MetricError
from qhmspace.knr import (
    certify,
    is_feasible,
    is_known_infinite,
    knr_lower_bound_search,
    knr_monotonicity_probe,
)
from qhmspace.metric import normalize_diameter
from qhmspace.subspace import maximal_strict_subspace


def test_feasibility():
    assert is_feasible(4, 3) and is_feasible(8, 4)
    assert not is_feasible(5, 3) and not is_feasible(3, 4)
    with pytest.raises(MetricError):
        knr_lower_bound_search(5, 3, budget=10)


def test_known_infinite_cells():
    assert is_known_infinite(5, 5) and is_known_infinite(7, 6)
    assert not is_known_infinite(6, 5) and not is_known_infinite(4, 4)


@pytest.mark.parametrize("n, r", [(2, 2), (4, 3)])
def test_box_cells_reach_half_and_never_exceed(n, r):
    res = knr_lower_bound_search(n, r, budget=2000, seed=1)
    assert res.verified
    assert res.best_ratio == pytest.approx(0.5, abs=1e-9)
    assert all(v <= 0.5 + 1e-9 for _, v in res.history)


def test_triangle_cell_reaches_two_thirds():
    res = knr_lower_bound_search(3, 3, budget=800, seed=0)
    assert res.best_ratio == pytest.approx(2 / 3, abs=1e-12)


def test_reported_configuration_has_the_type():
    res = knr_lower_bound_search(5, 4, budget=4000, seed=2)
    assert angle_classification(res.config).kind != "obtuse"
    d = normalize_diameter(config_to_metric(res.config))
    assert maximal_strict_subspace(d).cardinality == 4
    assert certify(res.config, 5, 4) == pytest.approx(res.best_ratio, rel=1e-8)
    assert 0.5 < res.best_ratio < 1.0


def test_known_infinite_cell_exceeds_threshold():
    res = knr_lower_bound_search(5, 5, budget=100, seed=0, threshold=5.0)
    assert res.known_infinite and res.verified and res.best_ratio > 5.0


def test_search_deterministic_and_thread_independent():
    a = knr_lower_bound_search(5, 4, budget=2000, seed=3)
    b = knr_lower_bound_search(5, 4, budget=2000, seed=3)
    c = knr_lower_bound_search(5, 4, budget=2000, seed=3, threads=4)
    assert a.best_ratio == b.best_ratio == c.best_ratio
    assert np.array_equal(a.config.points, c.config.points)


def test_to_dict():
    out = knr_lower_bound_search(3, 3, budget=100).to_dict()
    assert out["n"] == 3 and len(out["config"]) == 3


def test_monotonicity_probe():
    rep = knr_monotonicity_probe(3, [3, 4], budget=800, seed=0)
    assert rep.consistent
    assert rep.results[1].best_ratio <= rep.results[0].best_ratio
    assert knr_monotonicity_probe(3, [4], budget=100).consistent
    with pytest.raises(MetricError):
        knr_monotonicity_probe(3, [3, 5], budget=10)

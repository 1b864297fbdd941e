import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import qh_oracle, rank_oracle, sampled_form_max
from qhmspace.classify import (
    classify,
    form_verdict,
    hypermetric_check_bounded,
    is_quasihypermetric,
    is_strictly_quasihypermetric,
    rank_distance_matrix,
)
from qhmspace.embed import config_to_metric
from qhmspace.errors import MetricError
from qhmspace.generators import gen_circle, gen_discrete, gen_random_nonobtuse, gen_star, join_circle_space
from qhmspace.l1geom import l1_metric
from qhmspace.measures import energy

# complete bipartite K_{2,3} with its path metric: a metric, but not QH
K23 = np.array(
    [
        [0, 2, 1, 1, 1],
        [2, 0, 1, 1, 1],
        [1, 1, 0, 2, 2],
        [1, 1, 2, 0, 2],
        [1, 1, 2, 2, 0],
    ],
    dtype=float,
)

PATH4 = np.array([[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]], dtype=float)


def test_discrete_is_strict():
    for n in range(1, 7):
        ok, w = is_strictly_quasihypermetric(gen_discrete(n))
        assert ok and w is None


def test_circle4_is_not_strict_with_alternating_witness():
    d = gen_circle(4, 1.0)
    assert is_quasihypermetric(d) == (True, None)
    strict, w = is_strictly_quasihypermetric(d)
    assert not strict
    assert np.allclose(w / w[0], [1, -1, 1, -1])
    assert abs(energy(d, w)) <= 1e-9


def test_square_cycle_verdict_matches_sampling_oracle():
    # 4-cycle path metric = circle of 4 points up to scale
    assert sampled_form_max(PATH4) <= 1e-12
    v = form_verdict(PATH4)
    assert v.quasihypermetric and not v.strict


def test_non_qh_witness_has_positive_energy():
    ok, w = is_quasihypermetric(K23)
    assert not ok
    assert abs(w.sum()) < 1e-12
    assert energy(K23, w) > 0
    assert sampled_form_max(K23) > 0


def test_l1_spaces_are_qh():
    rng = np.random.default_rng(3)
    for _ in range(20):
        x = rng.normal(size=(int(rng.integers(2, 9)), 3))
        assert is_quasihypermetric(l1_metric(x))[0]


def test_rank_examples():
    assert rank_distance_matrix(gen_discrete(5)) == 5
    assert rank_distance_matrix(gen_circle(4, 1.0)) == 3
    assert rank_distance_matrix(np.zeros((1, 1))) == 0


def test_hypermetric_bounded_examples():
    assert hypermetric_check_bounded(gen_discrete(3), 1).ok
    _, d, _ = gen_star(2)
    assert hypermetric_check_bounded(d, 2).ok
    v = hypermetric_check_bounded(K23, 1)
    assert not v.ok
    b = v.violation
    assert b.sum() == 1 and b @ K23 @ b == pytest.approx(v.value) and v.value > 0
    # smallest l1 norm first: a violation of K_{2,3} needs five nonzero entries
    assert np.abs(b).sum() == 5


def test_hypermetric_cap_and_bound_errors():
    with pytest.raises(MetricError):
        hypermetric_check_bounded(gen_discrete(3), 0)
    with pytest.raises(MetricError):
        hypermetric_check_bounded(gen_discrete(12), 3, cap=1000)


def test_classify_examples():
    c = classify(gen_discrete(4))
    assert (c.quasihypermetric, c.strictly_quasihypermetric, c.m_finite, c.rank) == (True, True, "finite", 4)
    c = classify(gen_circle(4, 1.0))
    assert (c.quasihypermetric, c.strictly_quasihypermetric, c.m_finite) == (True, False, "finite")
    c = classify(join_circle_space(3, 0.1))
    assert (c.quasihypermetric, c.strictly_quasihypermetric, c.m_finite) == (True, False, "finite")
    c = classify(K23)
    assert (c.quasihypermetric, c.m_finite) == (False, "not_applicable")


def test_classify_to_dict_and_hypermetric():
    out = classify(gen_discrete(3), hypermetric_bound=1).to_dict()
    assert out["hypermetric"]["violation"] is None
    assert out["n"] == 3 and len(out["spectrum"]) == 2


@st.composite
def configuration_spaces(draw, n_max=6, dim_max=4):
    dim = draw(st.integers(1, dim_max))
    n = draw(st.integers(2, min(n_max, 2**dim)))
    seed = draw(st.integers(0, 2**31))
    return config_to_metric(gen_random_nonobtuse(n, dim, seed))


@given(configuration_spaces())
def test_spectral_verdict_matches_numpy_oracle(d):
    v = form_verdict(d)
    assert (v.quasihypermetric, v.strict) == qh_oracle(d)
    assert rank_distance_matrix(d) == rank_oracle(d)


@given(configuration_spaces(), st.integers(0, 2**31))
def test_random_mass_zero_energy_nonpositive(d, seed):
    a = np.random.default_rng(seed).normal(size=len(d))
    a -= a.mean()
    assert energy(d, a) <= 1e-9 * np.abs(a).sum() ** 2 * d.max()


@given(configuration_spaces())
def test_witness_reproduces_claimed_energy(d):
    strict, w = is_strictly_quasihypermetric(d)
    if not strict:
        assert abs(w.sum()) <= 1e-12
        assert abs(energy(d, w)) <= 1e-9 * d.max()

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import strict_subsets_brute
from qhmspace.classify import form_verdict, rank_distance_matrix
from qhmspace.embed import config_to_metric
from qhmspace.errors import MetricError, NotQuasihypermetricError
from qhmspace.generators import (
    gen_box_corners,
    gen_circle,
    gen_discrete,
    gen_random_nonobtuse,
    join_circle_space,
)
from qhmspace.measures import energy, m_value
from qhmspace.metric import submatrix
from qhmspace.subspace import (
    enumerate_maximal_strict_subspaces,
    extension_measure,
    maximal_strict_subspace,
    predicted_cardinality,
    verify_m_preservation,
)
from test_classify import K23


def test_discrete_whole_space():
    r = maximal_strict_subspace(gen_discrete(5))
    assert r.indices == (0, 1, 2, 3, 4) and r.rank == 5 and r.m_finite


def test_circle4_three_points():
    r = maximal_strict_subspace(gen_circle(4, 1.0))
    assert r.cardinality == 3 == r.predicted_cardinality


def test_box_corners_r4():
    _, d = gen_box_corners([0.3, 0.6, 0.8])
    assert maximal_strict_subspace(d).cardinality == 4


def test_predicted_cardinality():
    assert predicted_cardinality(1, 0, True) == 1
    assert predicted_cardinality(5, 5, True) == 5
    assert predicted_cardinality(5, 5, False) == 4


def test_non_qh_rejected():
    with pytest.raises(NotQuasihypermetricError):
        maximal_strict_subspace(K23)


def test_enumerate_examples():
    assert enumerate_maximal_strict_subspaces(gen_circle(4, 1.0)) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    assert enumerate_maximal_strict_subspaces(gen_discrete(3)) == [(0, 1, 2)]
    with pytest.raises(MetricError):
        enumerate_maximal_strict_subspaces(gen_discrete(13))


def test_join_with_circle_has_non_strict_subsets_of_maximal_size():
    d = join_circle_space(3, 0.1)  # points 0..2 discrete, 3..6 circle
    maximal = enumerate_maximal_strict_subspaces(d)
    assert {len(s) for s in maximal} == {6}
    # dropping a circle point gives a strict set, dropping a discrete point does not
    assert (0, 1, 2, 3, 4, 5) in maximal
    assert not form_verdict(submatrix(d, [1, 2, 3, 4, 5, 6])).strict


def test_extension_measure_circle4():
    d = gen_circle(4, 1.0)
    mu = extension_measure(d, [0, 1, 2], 3)
    assert np.allclose(mu, [1, -1, 1, 0])
    delta = np.eye(4)[3]
    assert energy(d, mu - delta) == pytest.approx(0.0, abs=1e-12)


def test_extension_measure_square_parallelogram():
    _, d = gen_box_corners([0.5, 0.7])  # corners: ++, -+, +-, --
    mu = extension_measure(d, [0, 1, 2], 3)
    assert np.allclose(mu, [-1, 1, 1, 0])


def test_extension_measure_is_unique():
    d = gen_circle(4, 1.0)
    mu = extension_measure(d, [0, 1, 2], 3)
    rng = np.random.default_rng(0)
    for _ in range(20):
        nu = np.zeros(4)
        nu[:3] = rng.normal(size=3)
        nu[:3] -= nu[:3].mean()
        assert abs(energy(d, mu + nu - np.eye(4)[3])) > 1e-9


def test_extension_measure_errors():
    d = gen_discrete(4)
    with pytest.raises(MetricError):
        extension_measure(d, [0, 1, 2], 3)  # the union is strict
    with pytest.raises(MetricError):
        extension_measure(d, [0, 1], 1)


@pytest.mark.parametrize(
    "d, subset, value",
    [
        (gen_circle(4, 1.0), [0, 1, 2], np.pi / 2),
        (gen_box_corners([0.5, 0.5, 0.5])[1], [0, 1, 2, 3], 1.5),
        (gen_box_corners([0.5, 0.5])[1], [0, 1, 2], 1.0),
    ],
)
def test_m_preserved_on_maximal_subspace(d, subset, value):
    rep = verify_m_preservation(d, subset)
    assert rep.ok
    assert rep.m_space == pytest.approx(value)


def test_m_preserved_for_join_with_circle():
    d = join_circle_space(4, 0.05)
    rep = verify_m_preservation(d, maximal_strict_subspace(d).indices)
    assert rep.ok


@st.composite
def configuration_spaces(draw, n_max=7, dim_max=4):
    dim = draw(st.integers(1, dim_max))
    n = draw(st.integers(2, min(n_max, 2**dim)))
    return config_to_metric(gen_random_nonobtuse(n, dim, draw(st.integers(0, 2**31))))


@given(configuration_spaces())
def test_greedy_cardinality_law_and_maximality(d):
    r = maximal_strict_subspace(d)
    finite = m_value(d).finite
    rank = rank_distance_matrix(d)
    assert r.cardinality == (rank if finite else rank - 1)
    assert form_verdict(submatrix(d, r.indices)).strict
    for x in set(range(len(d))) - set(r.indices):
        assert not form_verdict(submatrix(d, sorted(r.indices + (x,)))).strict
    assert len(d) <= 2 ** (r.cardinality - 1)


@given(configuration_spaces(n_max=6))
def test_enumeration_matches_brute_force(d):
    found = enumerate_maximal_strict_subspaces(d)
    assert found == strict_subsets_brute(d)
    assert len({len(s) for s in found}) == 1

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qanova.depth import DegenerateCloudError, depth_pvalue, marginal_medians, projection_distances

from oracles import Degenerate, brute_projection_distances, one_dim_distances, random_cloud


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([(0, 0), (2, 2), (4, 4)], [2, 2]),
        ([(1.5, -2)] * 4, [1.5, -2]),
        ([(1, 10), (3, 30), (5, 50), (7, 70)], [4, 40]),
    ],
)
def test_marginal_medians(rows, expected):
    assert marginal_medians(rows).tolist() == expected


def test_cross_cloud_against_brute_force():
    Y = np.array([(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)], dtype=float)
    rep = projection_distances(Y)
    np.testing.assert_allclose(rep.distances, brute_projection_distances(Y), rtol=1e-12, atol=1e-12)
    assert rep.distances[0] == 0.0
    assert rep.center.tolist() == [0.0, 0.0]


def test_one_dimensional_reduction():
    y = np.array([3.1, -0.4, 7.7, 2.0, 2.0, 5.5, -3.3, 0.9])
    np.testing.assert_allclose(projection_distances(y).distances, one_dim_distances(y), rtol=1e-12)


def test_row_at_center_has_zero_distance():
    Y = np.array([[0.0, 1.0], [2.0, 5.0], [1.0, 3.0], [4.0, -1.0], [-3.0, 3.0]])
    assert marginal_medians(Y).tolist() == [1.0, 3.0]
    d = projection_distances(Y).distances
    assert d[2] == 0.0
    assert np.all(d[[0, 1, 3, 4]] > 0)


def test_random_clouds_match_brute_force():
    rng = np.random.default_rng(2024)
    checked = 0
    for _ in range(300):
        Y = random_cloud(rng)
        try:
            ref = brute_projection_distances(Y)
        except Degenerate:
            with pytest.raises(DegenerateCloudError):
                projection_distances(Y)
            continue
        got = projection_distances(Y).distances
        np.testing.assert_allclose(got, ref, rtol=1e-10, atol=1e-10)
        checked += 1
    assert checked > 200


def test_degenerate_clouds():
    with pytest.raises(DegenerateCloudError):
        projection_distances(np.ones((5, 2)))
    # central half of every direction tied: zero interquartile range
    Y = np.zeros((9, 1))
    Y[0] = 1.0
    with pytest.raises(DegenerateCloudError):
        projection_distances(Y)


def test_cloud_validation():
    with pytest.raises(ValueError):
        projection_distances(np.zeros((1, 3)))
    with pytest.raises(ValueError):
        projection_distances([[0.0, np.inf], [1.0, 2.0], [3.0, 4.0]])
    with pytest.raises(ValueError):
        projection_distances([[0.0], [1.0]])


clouds = st.integers(0, 2**32 - 1).map(lambda s: np.random.default_rng(s).normal(size=(int(s % 12) + 3, int(s % 3) + 1)))


@settings(max_examples=60, deadline=None)
@given(clouds, st.floats(-100, 100), st.floats(0.01, 100))
def test_affine_invariance(Y, shift, c):
    base = projection_distances(Y).distances
    np.testing.assert_allclose(projection_distances(Y + shift).distances, base, rtol=1e-9, atol=1e-9)
    np.testing.assert_allclose(projection_distances(c * Y).distances, base, rtol=1e-9, atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(clouds, st.randoms(use_true_random=False))
def test_row_permutation_equivariance(Y, rnd):
    perm = list(range(Y.shape[0]))
    rnd.shuffle(perm)
    base = projection_distances(Y).distances
    np.testing.assert_allclose(projection_distances(Y[perm]).distances, base[perm], rtol=1e-12, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(clouds)
def test_distances_nonnegative_zero_only_at_center(Y):
    rep = projection_distances(Y)
    assert np.all(rep.distances >= 0)
    at_center = np.all(Y == rep.center, axis=1)
    assert np.all((rep.distances <= 1e-12) == at_center)


def test_depth_pvalue_cases():
    assert depth_pvalue([1, 2, 3], 5) == 0.0
    assert depth_pvalue([1, 2, 3], 0.5) == 1.0
    assert depth_pvalue([1, 2, 3, 4], 2.5) == 0.5
    # ties count as "at least as far"
    assert depth_pvalue([1, 2, 2, 4], 2) == 0.25
    with pytest.raises(ValueError):
        depth_pvalue([], 1.0)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0, 10), min_size=1, max_size=50), st.floats(0, 10), st.floats(0, 10))
def test_depth_pvalue_nonincreasing(K, k0, k1):
    lo, hi = sorted((k0, k1))
    assert depth_pvalue(K, hi) <= depth_pvalue(K, lo)
    assert 0.0 <= depth_pvalue(K, lo) <= 1.0

# -*- coding: utf-8 -*-
import numpy as np
import pytest
from numpy.testing import assert_array_equal

from SWARDS.datagen import uniform_segment, uniform_square
from SWARDS.dimension import DimEstimatorConfig, dimension_by_k, mle_dimension, neighbour_distances
from SWARDS.dissimilarity import Euclidean, build_matrix
from SWARDS.errors import InputError, DegenerateDataError


def euclidean(points):
    return build_matrix(points, Euclidean())


def test_config_validation():
    with pytest.raises(InputError):
        DimEstimatorConfig(k_min=1)
    with pytest.raises(InputError):
        DimEstimatorConfig(k_min=8, k_max=6)
    with pytest.raises(InputError):
        DimEstimatorConfig(zero_distance_policy="ignore")
    assert DimEstimatorConfig().as_dict() == {"k_min": 5, "k_max": 12, "zero_distance_policy": "skip"}


def test_neighbour_distances():
    matrix = euclidean(np.array([[0.0], [1.0], [3.0], [7.0]]))
    T = neighbour_distances(matrix, 2)
    assert_array_equal(T, [[1.0, 3.0], [1.0, 2.0], [2.0, 3.0], [4.0, 6.0]])


def test_segment():
    N = mle_dimension(euclidean(uniform_segment(2000, seed=1)))
    assert abs(N - 1.0) <= 0.25


def test_square():
    N = mle_dimension(euclidean(uniform_square(2000, seed=2)))
    assert abs(N - 2.0) <= 0.35


def test_table():
    matrix = euclidean(uniform_square(300, seed=3))
    table = dimension_by_k(matrix, DimEstimatorConfig(k_min=3, k_max=6))
    assert [k for k, Nk in table] == [3, 4, 5, 6]
    assert all(Nk > 0.0 for k, Nk in table)
    assert mle_dimension(matrix, DimEstimatorConfig(k_min=3, k_max=6)) == pytest.approx(np.mean([Nk for k, Nk in table]))


@pytest.mark.parametrize("lam", [0.01, 3.0, 100.0])
def test_scale_invariance(lam):
    points = uniform_square(200, seed=4)
    N = mle_dimension(euclidean(points))
    assert mle_dimension(euclidean(lam * points)) == pytest.approx(N, rel=1e-9)


def test_permutation_invariance(rng):
    points = uniform_square(200, seed=5)
    N = mle_dimension(euclidean(points))
    assert mle_dimension(euclidean(points[rng.permutation(200)])) == pytest.approx(N, rel=1e-9)


def test_too_few_points():
    with pytest.raises(InputError):
        mle_dimension(euclidean(uniform_square(12, seed=0)))


def test_duplicates():
    points = uniform_square(200, seed=6)
    points = np.vstack([points, points[:10]])
    matrix = euclidean(points)
    N = mle_dimension(matrix)
    assert np.isfinite(N) and N > 0.0
    with pytest.raises(DegenerateDataError):
        mle_dimension(matrix, DimEstimatorConfig(zero_distance_policy="error"))


def test_all_equal():
    with pytest.raises(DegenerateDataError):
        mle_dimension(euclidean(np.zeros((20, 2))))

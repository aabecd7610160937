# -*- coding: utf-8 -*-
import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from SWARDS.dissimilarity import (DissimilarityMatrix, Euclidean, Precomputed, RbfInduced, build_matrix,
                                  euclidean_d2, get_measure, median_sigma2, rbf_d2, barrier_d)
from SWARDS.environment import Environment
from SWARDS.errors import InputError, DegenerateDataError, UnreachableError


def enclosure_env():
    # square of barriers around the origin
    return Environment(barriers=[[-0.5, -0.5, 0.5, -0.5], [0.5, -0.5, 0.5, 0.5],
                                 [0.5, 0.5, -0.5, 0.5], [-0.5, 0.5, -0.5, -0.5]],
                       bbox=[-1.0, -1.0, 1.0, 1.0])


def test_euclidean_d2():
    assert euclidean_d2([0.0, 0.0], [3.0, 4.0]) == 25.0
    assert euclidean_d2([1.0], [1.0]) == 0.0
    with pytest.raises(InputError):
        euclidean_d2([0.0, 0.0], [1.0, 2.0, 3.0])


def test_rbf_d2():
    assert rbf_d2([1.0, 2.0], [1.0, 2.0], 1.0) == 0.0
    assert rbf_d2([0.0], [100.0], 1.0) == pytest.approx(2.0)
    assert rbf_d2([0.0], [1.0], 0.5) == pytest.approx(2.0 * (1.0 - np.exp(-1.0)))
    with pytest.raises(InputError):
        rbf_d2([0.0], [1.0], 0.0)


def test_median_sigma2():
    # squared distances 9, 1, 4
    assert median_sigma2([[0.0], [3.0], [1.0]]) == 4.0
    with pytest.raises(DegenerateDataError):
        median_sigma2(np.zeros((5, 2)))
    with pytest.raises(InputError):
        median_sigma2([[1.0, 2.0]])


def test_build_matrix_line(line_matrix):
    assert_array_equal(line_matrix.entries, [[0.0, 9.0, 100.0], [9.0, 0.0, 49.0], [100.0, 49.0, 0.0]])
    assert line_matrix.total() == 2 * (9.0 + 100.0 + 49.0)
    assert_array_equal(line_matrix.distances()[0], [0.0, 3.0, 10.0])


def test_build_matrix_symmetric(rng):
    points = rng.standard_normal((30, 3))
    for measure in [Euclidean(), RbfInduced(2.0)]:
        M = build_matrix(points, measure).entries
        assert_array_equal(M, M.T)
        assert_array_equal(np.diag(M), 0.0)
        assert np.all(M >= 0.0)


def test_scaled(line_matrix):
    assert_array_equal(line_matrix.scaled(2.0).entries, 4.0 * line_matrix.entries)


@pytest.mark.parametrize("entries, where", [
    ([[0.0, 1.0], [2.0, 0.0]], "(0,1)"),
    ([[0.0, -1.0], [-1.0, 0.0]], "(0,1)"),
    ([[0.0, 1.0], [1.0, 0.5]], "(1,1)"),
    ([[0.0, np.nan], [np.nan, 0.0]], "(0,1)"),
])
def test_matrix_validation(entries, where):
    with pytest.raises(InputError) as excinfo:
        DissimilarityMatrix(entries)
    assert where in str(excinfo.value)


def test_matrix_not_square():
    with pytest.raises(InputError):
        DissimilarityMatrix(np.zeros((2, 3)))


def test_get_measure():
    assert isinstance(get_measure("euclidean"), Euclidean)
    rbf = get_measure("rbf", points=[[0.0], [3.0], [1.0]])
    assert rbf.sigma2 == 4.0
    assert get_measure("rbf", sigma2=0.3).sigma2 == 0.3
    with pytest.raises(InputError):
        get_measure("manhattan")
    with pytest.raises(InputError):
        get_measure("barrier")
    with pytest.raises(InputError):
        get_measure("region", env=Environment())
    barrier = get_measure("barrier", env={"bbox": [0, 0, 1, 1]})
    assert barrier.env.barriers.shape == (0, 4)


def test_precomputed(line_matrix):
    measure = Precomputed(line_matrix)
    assert measure.d2(0, 2) == 100.0
    assert_array_equal(build_matrix(np.arange(3), measure).entries, line_matrix.entries)
    with pytest.raises(InputError):
        measure.cross_d2([0], [3])


def test_barrier_without_barriers_is_euclidean(rng):
    env = Environment(bbox=[-3.0, -3.0, 3.0, 3.0])
    points = rng.uniform(-2.0, 2.0, size=(20, 2))
    measure = get_measure("barrier", env=env)
    assert_allclose(build_matrix(points, measure).entries,
                    build_matrix(points, Euclidean()).entries, rtol=1e-12, atol=1e-12)


def test_barrier_detour():
    env = Environment(barriers=[[0.0, -1.0, 0.0, 1.0]], bbox=[-2.0, -2.0, 2.0, 2.0])
    assert barrier_d([-1.0, 0.0], [1.0, 0.0], env) == pytest.approx(2.0 * np.sqrt(2.0), rel=1e-6)
    measure = get_measure("barrier", env=env)
    assert measure.d2([-1.0, 0.0], [1.0, 0.0]) == pytest.approx(8.0, rel=1e-6)
    # points on the same side see each other
    assert measure.d2([-1.0, 0.0], [-1.0, 1.5]) == pytest.approx(2.25, rel=1e-12)


def test_barrier_unreachable():
    measure = get_measure("barrier", env=enclosure_env())
    assert np.isinf(measure.cross_d2([[0.0, 0.0]], [[0.9, 0.9]])[0, 0])
    with pytest.raises(UnreachableError):
        build_matrix(np.array([[0.0, 0.0], [0.9, 0.9]]), measure)
    with pytest.raises(UnreachableError):
        barrier_d([0.0, 0.0], [0.9, 0.9], enclosure_env())

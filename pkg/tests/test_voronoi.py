# -*- coding: utf-8 -*-
import numpy as np
import pytest
from numpy.testing import assert_array_equal

from SWARDS import Constants
from SWARDS.clusterstate import (SWARDS, WARDS, ClusterStats, CriterionParams, Partition, ss, swards_energy,
                                 wards_energy)
from SWARDS.dissimilarity import Euclidean, Precomputed, build_matrix, get_measure
from SWARDS.environment import Environment
from SWARDS.errors import InputError, DegenerateClusterError
from SWARDS.voronoi import (VoronoiGrid, WeightedCluster, cell_centers, derivative_check, rasterize,
                            swards_point_score, wards_point_score, weighted_energy)


PAIR = np.array([[0.0, 0.0], [2.0, 0.0]])


def pair_stats():
    return ClusterStats(2, ss([0, 1], build_matrix(PAIR, Euclidean())))


def test_wards_point_score():
    measure = Euclidean()
    assert wards_point_score([1.0, 1.0], PAIR, measure, pair_stats()) == pytest.approx(1.0)
    # at the mean
    assert wards_point_score([1.0, 0.0], PAIR, measure, pair_stats()) == pytest.approx(0.0, abs=1e-12)
    assert wards_point_score([3.0, 4.0], [[0.0, 0.0]], measure, ClusterStats(1, 0.0)) == 25.0
    with pytest.raises(InputError):
        wards_point_score([0.0, 0.0], [], measure, ClusterStats(0, 0.0))


def test_wards_point_score_is_distance_to_mean(rng):
    Y = rng.standard_normal((30, 3))
    stats = ClusterStats(30, ss(np.arange(30), build_matrix(Y, Euclidean())))
    for x in rng.standard_normal((10, 3)):
        expected = np.sum((x - Y.mean(axis=0))**2)
        assert wards_point_score(x, Y, Euclidean(), stats) == pytest.approx(expected, rel=1e-9)


def test_swards_point_score():
    value = swards_point_score([1.0, 1.0], PAIR, Euclidean(), pair_stats(), 2.0)
    assert value == pytest.approx(1.0 - np.log(2.0), abs=1e-12)
    # further away is worse
    assert swards_point_score([1.0, 3.0], PAIR, Euclidean(), pair_stats(), 2.0) > value
    with pytest.raises(DegenerateClusterError):
        swards_point_score([1.0, 1.0], [[0.0, 0.0]], Euclidean(), ClusterStats(1, 0.0), 2.0)
    assert np.isfinite(swards_point_score([1.0, 1.0], [[0.0, 0.0]], Euclidean(), ClusterStats(1, 0.0), 2.0,
                                          floor=1e-6))
    with pytest.raises(InputError):
        swards_point_score([1.0, 1.0], PAIR, Euclidean(), pair_stats(), 0.0)


def test_weighted_energy_unit_weights(rng):
    points = rng.standard_normal((40, 2))
    matrix = build_matrix(points, Euclidean())
    partition = Partition(rng.integers(0, 3, size=40), k=3)
    clusters = [WeightedCluster(partition.members(i)) for i in range(3)]
    params = CriterionParams(2.0)
    assert weighted_energy(clusters, matrix, WARDS) == pytest.approx(wards_energy(partition, matrix), rel=1e-12)
    assert weighted_energy(clusters, matrix, SWARDS, params) == \
        pytest.approx(swards_energy(partition, matrix, params), rel=1e-12)
    doubled = [WeightedCluster(c.members, 2.0 * c.weights) for c in clusters]
    assert weighted_energy(doubled, matrix, WARDS) == pytest.approx(2.0 * weighted_energy(clusters, matrix, WARDS))


def test_weighted_cluster():
    matrix = build_matrix(PAIR, Euclidean())
    assert WeightedCluster([1], [7.5]).ss(matrix) == 0.0
    assert WeightedCluster([0, 1], [1.0, 1.0]).ss(matrix) == pytest.approx(2.0)
    grown = WeightedCluster([0]).with_point(1, 0.5)
    assert grown.size == 1.5
    with pytest.raises(InputError):
        WeightedCluster([0, 1], [1.0])
    with pytest.raises(InputError):
        WeightedCluster([0], [-1.0])
    with pytest.raises(InputError):
        weighted_energy([WeightedCluster([0], [0.0])], matrix, WARDS)


def small_clustering(rng):
    points = np.vstack([rng.standard_normal((15, 2)), rng.standard_normal((15, 2)) + [6.0, 0.0],
                        rng.standard_normal((10, 2)) + [0.0, 6.0]])
    labels = np.repeat([0, 1, 2], [15, 15, 10])
    return points, Partition(labels)


def test_derivative_wards(rng):
    points, partition = small_clustering(rng)
    for x in rng.uniform(-2.0, 8.0, size=(5, 2)):
        numeric, closed, shift = derivative_check(x, partition, points, Euclidean(), WARDS)
        assert shift == 0.0
        assert np.all(np.abs(numeric - closed) <= 1e-4 * (1.0 + np.abs(closed)))


def test_derivative_swards(rng):
    points, partition = small_clustering(rng)
    for N in (1.0, 2.0, 3.5):
        for x in rng.uniform(-2.0, 8.0, size=(5, 2)):
            numeric, closed, shift = derivative_check(x, partition, points, Euclidean(), SWARDS, N=N)
            assert np.all(np.abs(numeric - (closed + shift)) <= 1e-4 * (1.0 + np.abs(closed)))
            # the common shift does not change the assignment
            assert np.argmin(numeric) == np.argmin(closed)


def test_derivative_first_order(rng):
    points, partition = small_clustering(rng)
    x = points[3]
    errors = []
    for h in (1e-3, 1e-4):
        numeric, closed, shift = derivative_check(x, partition, points, Euclidean(), WARDS, h=h)
        errors.append(np.abs(numeric[0] - closed[0]))
    assert errors[1] < 0.2 * errors[0]


def test_derivative_errors(rng):
    points, partition = small_clustering(rng)
    with pytest.raises(InputError):
        derivative_check([0.0, 0.0], partition, points, Euclidean(), WARDS, h=0.1)
    with pytest.raises(InputError):
        derivative_check([0.0, 0.0], partition, points, Euclidean(), SWARDS)


def test_cell_centers():
    centers = cell_centers([-2.0, -2.0, 2.0, 2.0], 4, 2)
    assert centers.shape == (2, 4, 2)
    assert_array_equal(centers[0, :, 0], [-1.5, -0.5, 0.5, 1.5])
    assert_array_equal(centers[:, 0, 1], [-1.0, 1.0])
    with pytest.raises(InputError):
        cell_centers([0.0, 0.0, 0.0, 1.0], 2, 2)
    with pytest.raises(InputError):
        cell_centers([0.0, 0.0, 1.0, 1.0], 0, 2)


def test_rasterize_single_cluster(rng):
    points = rng.standard_normal((20, 2))
    grid = rasterize(Partition(np.zeros(20, dtype=int)), Euclidean(), points, [-3, -3, 3, 3], 5, 4, SWARDS, N=2.0)
    assert grid.labels.shape == (4, 5)
    assert_array_equal(grid.labels, 0)
    assert grid.n_labels() == 1


def test_rasterize_bisector():
    points = np.array([[-1.0, 0.0], [1.0, 0.0]])
    grid = rasterize(Partition([0, 1]), Euclidean(), points, [-2.0, -2.0, 2.0, 2.0], 4, 2, WARDS)
    assert_array_equal(grid.labels, [[0, 0, 1, 1], [0, 0, 1, 1]])
    assert grid.label_at([1.9, 1.9]) == 1
    assert grid.label_at([-2.0, -2.0]) == 0


def test_rasterize_relabel(rng):
    points, partition = small_clustering(rng)
    bbox = [-3.0, -3.0, 9.0, 9.0]
    grid = rasterize(partition, Euclidean(), points, bbox, 12, 12, WARDS)
    perm = np.array([2, 0, 1])
    other = rasterize(Partition(perm[partition.labels]), Euclidean(), points, bbox, 12, 12, WARDS)
    assert_array_equal(other.labels, perm[grid.labels])


def test_rasterize_errors(line_matrix):
    with pytest.raises(InputError):
        rasterize(Partition([0, 0, 1]), Precomputed(line_matrix), np.arange(3), [0, 0, 1, 1], 2, 2, WARDS)
    with pytest.raises(InputError):
        rasterize(Partition([0, 1]), Euclidean(), np.zeros((3, 2)), [0, 0, 1, 1], 2, 2, WARDS)
    with pytest.raises(InputError):
        rasterize(Partition([0, 1]), Euclidean(), [[0.0, 0.0], [1.0, 1.0]], [0, 0, 1, 1], 2, 2, "kmeans")


def test_rasterize_unreachable():
    env = Environment(barriers=[[-0.5, -0.5, 0.5, -0.5], [0.5, -0.5, 0.5, 0.5],
                                [0.5, 0.5, -0.5, 0.5], [-0.5, 0.5, -0.5, -0.5]],
                      bbox=[-1.0, -1.0, 1.0, 1.0])
    points = np.array([[-0.3, 0.0], [-0.2, 0.1], [0.3, 0.0], [0.2, -0.1]])
    grid = rasterize(Partition([0, 0, 1, 1]), get_measure("barrier", env=env), points, env.bbox, 4, 4, WARDS)
    inner = grid.labels[1:3, 1:3]
    assert_array_equal(inner, [[0, 1], [0, 1]])
    outer = grid.labels.copy()
    outer[1:3, 1:3] = Constants.UNREACHABLE
    assert_array_equal(outer, Constants.UNREACHABLE)
    assert grid.n_labels() == 2


def test_grid_shape_check():
    with pytest.raises(InputError):
        VoronoiGrid([0, 0, 1, 1], 3, 2, np.zeros((3, 2)), WARDS)

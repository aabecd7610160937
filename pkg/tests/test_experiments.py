# -*- coding: utf-8 -*-
"""
long running experiments on synthetic and real data, run with --runslow
"""
import numpy as np
import pytest

from SWARDS import datagen
from SWARDS.Analyse import cluster_size_ratio, compare_with_wards
from SWARDS.clusterstate import SWARDS, WARDS, Partition
from SWARDS.dimension import mle_dimension
from SWARDS.dissimilarity import Euclidean, build_matrix, get_measure
from SWARDS.metrics import rand_index
from SWARDS.solver import ClusteringConfig, cluster
from SWARDS.voronoi import derivative_check

pytestmark = pytest.mark.slow


def mixture_ratio(spec):
    points, truth = datagen.sample_mixture(spec)
    matrix = build_matrix(points, Euclidean())
    N = mle_dimension(matrix)
    res = cluster(matrix, ClusteringConfig(SWARDS, N=N, restarts=10, seed=spec.seed))
    return cluster_size_ratio(res.labels, truth)


def test_different_spread():
    rs = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
    ratios = [mixture_ratio(datagen.mixture_scale(r, n=800, seed=i)) for i, r in enumerate(rs)]
    assert sum(0.4 <= q <= 0.6 for q in ratios) >= 7


def test_different_size():
    omegas = [0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]
    ratios = [mixture_ratio(datagen.mixture_unbalanced(w, n=800, seed=i)) for i, w in enumerate(omegas)]
    assert sum(abs(q - w) <= 0.1 for q, w in zip(ratios, omegas)) >= 6


def test_mouse_clusters_grow_with_N():
    points, truth, env = datagen.mouse_dataset(800, 200, seed=0)
    matrix = build_matrix(points, Euclidean())
    means = []
    for N in (0.5, 1.5, 4.0):
        counts = [cluster(matrix, ClusteringConfig(SWARDS, N=N, n_init_clusters=100, restarts=1, seed=s)).n_clusters
                  for s in range(5)]
        means.append(np.mean(counts))
    assert means[0] <= means[1] <= means[2]
    assert means[0] < means[2]


def test_iris():
    datasets = pytest.importorskip("sklearn.datasets")
    iris = datasets.load_iris()
    matrix = build_matrix(iris.data, Euclidean())
    N = mle_dimension(matrix)
    assert 2.0 <= N <= 3.0
    res = cluster(matrix, ClusteringConfig(SWARDS, N=N, n_init_clusters=6, seed=0))
    assert 3 <= res.n_clusters <= 5
    assert rand_index(res.labels, iris.target) >= 0.75


def test_region_populations():
    points, truth, env = datagen.region_scenario(seed=3)
    matrix = build_matrix(points, get_measure("region", env=env))
    comparison = compare_with_wards(matrix, ClusteringConfig(SWARDS, N=2.0, restarts=5, seed=3), truth=truth)
    assert comparison.swards.n_clusters >= 2
    assert comparison.rand_swards >= comparison.rand_wards - 0.05


def test_derivatives_random_instances():
    rng = np.random.default_rng(2024)
    for trial in range(10):
        points = rng.standard_normal((200, 2)) * rng.uniform(0.5, 3.0)
        partition = Partition(rng.integers(0, 4, size=200), k=4)
        for x in rng.uniform(-4.0, 4.0, size=(5, 2)):
            for criterion in (WARDS, SWARDS):
                numeric, closed, shift = derivative_check(x, partition, points, Euclidean(), criterion, N=2.0)
                assert np.all(np.abs(numeric - (closed + shift)) <= 1e-4 * (1.0 + np.abs(closed)))

"""
experiments on top of the solver

  energy_profile      spherical Wards energy of the Wards k-means partitions for several k
  dimension_sweep     number of clusters (and accuracy) as a function of N
  compare_with_wards  spherical Wards against Wards k-means with the same number of clusters
"""
from __future__ import division

import logging

import numpy as np

from SWARDS import Constants
from SWARDS.clusterstate import WARDS, swards_energy
from SWARDS.metrics import rand_index
from SWARDS.solver import ClusteringConfig, cluster
from SWARDS.errors import InputError
from SWARDS.utils import dotdic

logger = logging.getLogger(__name__)


def cluster_size_ratio(labels, truth):
    """
    fraction of all points that lie in the cluster sharing most points with
    true class 0, 1.0 if there is only one cluster
    """
    labels = np.asarray(labels)
    truth = np.asarray(truth)
    if len(labels) != len(truth):
        raise InputError("%d labels but %d true classes" % (len(labels), len(truth)))
    clusters, idx = np.unique(labels, return_inverse=True)
    if len(clusters) == 1:
        return 1.0
    overlap = np.bincount(idx[truth == 0], minlength=len(clusters))
    best = np.argmax(overlap)
    return np.count_nonzero(idx == best) / len(labels)


def energy_profile(matrix, ks, params, restarts=Constants.restarts, seed=0):
    """
    partition the data with Wards k-means for every k in ks and evaluate both criteria

    Returns:
    ========
    list of tuples (k, wards energy, spherical Wards energy)
    """
    table = []
    for k in ks:
        if not 1 <= k <= matrix.n:
            raise InputError("cannot form %d clusters out of %d points" % (k, matrix.n))
        res = cluster(matrix, ClusteringConfig(WARDS, k=k, restarts=restarts, seed=seed))
        E_sw = swards_energy(res.partition, matrix, params)
        logger.info("k = %d: Wards %.10g, spherical Wards %.10g", k, res.energy, E_sw)
        table.append((k, res.energy, E_sw))
    return table


def dimension_sweep(matrix, dims, config, truth=None):
    """
    run the spherical Wards clustering for several values of N, all other
    options taken from config

    Returns:
    ========
    list of tuples (N, number of clusters, energy, Rand index or None)
    """
    table = []
    for N in dims:
        res = cluster(matrix, config.copy(N=N))
        rand = rand_index(res.labels, truth) if truth is not None else None
        table.append((N, res.n_clusters, res.energy, rand))
    return table


def compare_with_wards(matrix, config, truth=None):
    """
    spherical Wards clustering, then Wards k-means with the number of
    clusters found by the former

    Returns:
    ========
    dotdic with the results 'swards' and 'wards' and, if the true classes are
    given, the Rand indices 'rand_swards' and 'rand_wards'
    """
    sw = cluster(matrix, config)
    wd = cluster(matrix, config.copy(criterion=WARDS, k=sw.n_clusters))
    comparison = dotdic(swards=sw, wards=wd)
    if truth is not None:
        comparison.rand_swards = rand_index(sw.labels, truth)
        comparison.rand_wards = rand_index(wd.labels, truth)
    return comparison


def table2txt(header, rows):
    """CSV text of a table, floats with 17 significant digits, None as empty field"""
    def fmt(v):
        if v is None:
            return ""
        if isinstance(v, (int, np.integer)):
            return "%d" % v
        return Constants.float_format % v
    txt = ",".join(header) + "\n"
    for row in rows:
        txt += ",".join(fmt(v) for v in row) + "\n"
    return txt

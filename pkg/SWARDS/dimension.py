"""
maximum likelihood estimate of the intrinsic dimension of a data set

For a point x with nearest neighbours at distances T_1 <= T_2 <= ... the
inverse of the local estimate is

  1/N_k(x) = 1/(k-1) sum_{j=1}^{k-1} log(T_k / T_j)

The inverses are averaged over all points, N_k = 1/mean_x(1/N_k(x)), and the
estimates for k = k_min..k_max are averaged.
"""
from __future__ import division

import logging

import numpy as np

from SWARDS import Constants
from SWARDS.errors import InputError, DegenerateDataError

logger = logging.getLogger(__name__)

SKIP = "skip"
ERROR = "error"


class DimEstimatorConfig(object):
    """
    Optional:
    =========
    k_min, k_max: range of neighbour counts the estimates are averaged over
    zero_distance_policy: 'skip' drops terms with zero neighbour distance,
       'error' raises DegenerateDataError
    """
    def __init__(self, k_min=Constants.k_min, k_max=Constants.k_max, zero_distance_policy=SKIP):
        if not 2 <= k_min <= k_max:
            raise InputError("neighbour range has to satisfy 2 <= k_min <= k_max, got %s..%s" % (k_min, k_max))
        if zero_distance_policy not in (SKIP, ERROR):
            raise InputError("Unknown zero distance policy '%s'" % zero_distance_policy)
        self.k_min = int(k_min)
        self.k_max = int(k_max)
        self.zero_distance_policy = zero_distance_policy

    def as_dict(self):
        return {"k_min": self.k_min, "k_max": self.k_max,
                "zero_distance_policy": self.zero_distance_policy}


def neighbour_distances(matrix, k_max):
    """
    distances to the k_max nearest neighbours of every point, ascending,
    ties ranked by index

    Returns:
    ========
    array of shape (n, k_max)
    """
    d = matrix.distances().copy()
    np.fill_diagonal(d, np.inf)
    order = np.argsort(d, axis=1, kind="stable")[:, :k_max]
    return np.take_along_axis(d, order, axis=1)


def dimension_by_k(matrix, config=None):
    """
    Returns:
    ========
    list of pairs (k, N_k) for k = k_min..k_max
    """
    if config is None:
        config = DimEstimatorConfig()
    n = matrix.n
    if n <= config.k_max:
        raise InputError("the dimension estimate with k_max = %d needs more than %d points, got %d"
                         % (config.k_max, config.k_max, n))
    T = neighbour_distances(matrix, config.k_max)
    zeros = T == 0.0
    if np.any(zeros):
        if config.zero_distance_policy == ERROR:
            i = np.flatnonzero(np.any(zeros, axis=1))[0]
            raise DegenerateDataError("point %d has a duplicate among its %d nearest neighbours"
                                      % (i, config.k_max))
        logger.warning("%d zero neighbour distances are skipped in the dimension estimate",
                       np.count_nonzero(zeros))
    table = []
    for k in range(config.k_min, config.k_max + 1):
        Tk = T[:, k - 1, None]
        Tj = T[:, :k - 1]
        valid = (Tj > 0.0) & (Tk > 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            logs = np.where(valid, np.log(Tk / Tj), 0.0)
        counts = np.count_nonzero(valid, axis=1)
        used = counts > 0
        if not np.any(used):
            raise DegenerateDataError("all neighbour distances vanish for k = %d" % k)
        inverse = np.sum(logs[used], axis=1) / counts[used]
        mean_inverse = np.mean(inverse)
        if not mean_inverse > 0.0:
            raise DegenerateDataError("neighbour distances do not grow for k = %d, "
                                      "the dimension estimate diverges" % k)
        table.append((k, 1.0 / mean_inverse))
    return table


def mle_dimension(matrix, config=None):
    """
    intrinsic dimension of the data set, the mean of N_k over k = k_min..k_max

    Parameters:
    ===========
    matrix: DissimilarityMatrix of squared dissimilarities

    Optional:
    =========
    config: DimEstimatorConfig

    Returns:
    ========
    positive float
    """
    table = dimension_by_k(matrix, config)
    N = float(np.mean([Nk for k, Nk in table]))
    logger.info("estimated intrinsic dimension N = %.6g", N)
    return N

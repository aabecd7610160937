"""
partitions, within-cluster sums of squares and the two criterion functions

For a cluster Y of a data set X with squared dissimilarities d^2

  D(Y,Z) = sum_{y in Y} sum_{z in Z} d^2(y,z)          (linkage sum)
  ss(Y)  = D(Y,Y) / (2|Y|)                             (within-cluster sum of squares)

Wards criterion:            E_W  = sum_i ss(Y_i)
spherical Wards criterion:  E_SW = N/2 ln(2 pi e/N)
                                   + sum_i p_i [ N/2 ln ss(Y_i) - (N+2)/2 ln p_i ],  p_i = |Y_i|/|X|

ss(Y) enters a logarithm, therefore it is floored at
ss_floor_rel * D(X,X)/|X|^2 in the spherical criterion.
"""
from __future__ import division

import numpy as np

from SWARDS import Constants
from SWARDS.errors import InputError, DegenerateClusterError

SWARDS = "swards"
WARDS = "wards"


class Partition(object):
    """
    assignment of data indices to clusters 0..k-1 (or UNASSIGNED)

    Parameters:
    ===========
    labels: integer array with one cluster id per data index

    Optional:
    =========
    k: number of cluster ids, defaults to max(labels)+1
    """
    def __init__(self, labels, k=None):
        labels = np.array(labels, dtype=int).ravel()
        if np.any(labels < Constants.UNASSIGNED):
            raise InputError("invalid cluster id %d" % labels.min())
        if k is None:
            k = int(labels.max()) + 1 if len(labels) > 0 else 0
        if len(labels) > 0 and labels.max() >= k:
            raise InputError("cluster id %d out of range 0..%d" % (labels.max(), k - 1))
        self.labels = labels
        self.k = int(k)

    def __len__(self):
        return len(self.labels)

    def is_complete(self):
        return not np.any(self.labels == Constants.UNASSIGNED)

    def sizes(self):
        assigned = self.labels[self.labels != Constants.UNASSIGNED]
        return np.bincount(assigned, minlength=self.k)

    def members(self, i):
        return np.flatnonzero(self.labels == i)

    def compact(self):
        """relabel the non-empty clusters to 0..k'-1 keeping their order"""
        used = np.flatnonzero(self.sizes() > 0)
        relabel = np.full(self.k + 1, Constants.UNASSIGNED, dtype=int)
        relabel[used] = np.arange(len(used))
        # UNASSIGNED = -1 picks the last element of relabel
        return Partition(relabel[self.labels], k=len(used))

    def n_clusters(self):
        return int(np.count_nonzero(self.sizes()))

    def __repr__(self):
        return "Partition(n=%d, k=%d)" % (len(self.labels), self.k)


class ClusterStats(object):
    """size |Y| and within-cluster sum of squares ss(Y) of a cluster"""
    def __init__(self, size=0, ss=0.0):
        if size < 0 or ss < 0.0:
            raise InputError("invalid cluster statistics size=%s ss=%s" % (size, ss))
        if size <= 1:
            ss = 0.0
        self.size = int(size)
        self.ss = float(ss)

    def __repr__(self):
        return "ClusterStats(size=%d, ss=%r)" % (self.size, self.ss)


class CriterionParams(object):
    """
    Parameters:
    ===========
    N: dimension parameter of the spherical criterion (> 0)

    Optional:
    =========
    ss_floor_rel: relative floor for ss (0 disables the floor)
    """
    def __init__(self, N, ss_floor_rel=Constants.ss_floor_rel):
        if not N > 0.0:
            raise InputError("dimension parameter N has to be positive, got %s" % N)
        if ss_floor_rel < 0.0:
            raise InputError("ss floor has to be nonnegative, got %s" % ss_floor_rel)
        self.N = float(N)
        self.ss_floor_rel = float(ss_floor_rel)

    def constant(self):
        """N/2 ln(2 pi e/N)"""
        return 0.5 * self.N * np.log(2.0 * np.pi * np.e / self.N)

    def floor(self, matrix):
        return self.ss_floor_rel * matrix.total() / matrix.n**2

    def as_dict(self):
        return {"N": self.N, "ss_floor_rel": self.ss_floor_rel}


def linkage_D(Y, Z, matrix):
    """D(Y,Z) = sum_{y in Y} sum_{z in Z} d^2(y,z)"""
    Y = np.asarray(Y, dtype=int).ravel()
    Z = np.asarray(Z, dtype=int).ravel()
    return float(np.sum(matrix.entries[np.ix_(Y, Z)]))


def ss(Y, matrix):
    """generalized within-cluster sum of squares D(Y,Y)/(2|Y|)"""
    Y = np.asarray(Y, dtype=int).ravel()
    if len(Y) == 0:
        raise InputError("ss of an empty cluster is undefined")
    return linkage_D(Y, Y, matrix) / (2.0 * len(Y))


def _ss_after_add(size, ss_, Dx):
    return (size * ss_ + Dx) / (size + 1.0)


def _ss_after_remove(size, ss_, Dx):
    # size >= 2 expected, the result of a one-element cluster is 0
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (size * ss_ - Dx) / (size - 1.0)
    out = np.where(size > 1, np.maximum(out, 0.0), 0.0)
    return out


def ss_add(x, Y, Dx):
    """
    statistics of Y + {x} for x not in Y, Dx = D({x},Y)

      ss(Y + {x}) = |Y|/(|Y|+1) ss(Y) + 1/(|Y|+1) D({x},Y)
    """
    return ClusterStats(Y.size + 1, float(_ss_after_add(Y.size, Y.ss, Dx)))


def ss_remove(x, Y, Dx):
    """
    statistics of Y - {x} for x in Y, Dx = D({x},Y)

      ss(Y - {x}) = |Y|/(|Y|-1) ss(Y) - 1/(|Y|-1) D({x},Y)

    negative round-off is clamped to 0, removing the only member leaves an
    empty cluster.
    """
    if Y.size < 1:
        raise InputError("cannot remove a point from an empty cluster")
    return ClusterStats(Y.size - 1, float(_ss_after_remove(Y.size, Y.ss, Dx)))


def cluster_stats(partition, matrix):
    """arrays with sizes and ss of all clusters of a partition"""
    if len(partition) != matrix.n:
        raise InputError("partition has %d labels but the data set has %d elements"
                         % (len(partition), matrix.n))
    if not partition.is_complete():
        raise InputError("partition leaves %d points unassigned"
                         % np.count_nonzero(partition.labels == Constants.UNASSIGNED))
    sizes = partition.sizes()
    onehot = np.zeros((matrix.n, partition.k))
    onehot[np.arange(matrix.n), partition.labels] = 1.0
    # D(Y_i,Y_i) for all clusters at once
    within = np.sum(onehot * matrix.entries.dot(onehot), axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ss_ = np.where(sizes > 0, within / (2.0 * sizes), 0.0)
    return sizes, ss_


def wards_energy(partition, matrix):
    """sum_i ss(Y_i)"""
    sizes, ss_ = cluster_stats(partition, matrix)
    return float(np.sum(ss_))


def _swards_terms(sizes, ss_, n, params, floor, strict=True):
    """
    contributions p_i [N/2 ln ss_i - (N+2)/2 ln p_i] of the clusters,
    zero for empty clusters

    With strict=False a non-empty cluster with vanishing ss gets +inf
    instead of raising DegenerateClusterError.
    """
    sizes = np.asarray(sizes, dtype=float)
    ss_f = np.maximum(ss_, floor)
    occupied = sizes > 0
    degenerate = occupied & (ss_f <= 0.0)
    if strict and np.any(degenerate):
        bad = np.flatnonzero(degenerate)[0]
        raise DegenerateClusterError("cluster %d of size %d has a vanishing within-cluster sum of squares "
                                     "and the ss floor is disabled" % (bad, np.ravel(sizes)[bad]))
    N = params.N
    with np.errstate(divide="ignore", invalid="ignore"):
        p = sizes / n
        terms = p * (0.5 * N * np.log(ss_f) - 0.5 * (N + 2.0) * np.log(p))
    terms = np.where(degenerate, np.inf, terms)
    return np.where(occupied, terms, 0.0)


def swards_energy(partition, matrix, params):
    """spherical Wards criterion of a complete partition"""
    sizes, ss_ = cluster_stats(partition, matrix)
    terms = _swards_terms(sizes, ss_, matrix.n, params, params.floor(matrix))
    return params.constant() + float(np.sum(terms))


def energy(partition, matrix, criterion, params=None):
    if criterion == SWARDS:
        return swards_energy(partition, matrix, params)
    elif criterion == WARDS:
        return wards_energy(partition, matrix)
    else:
        raise InputError("Unknown criterion '%s'" % criterion)


class ClusterState(object):
    """
    mutable clustering state for the Hartigan iteration

    Per cluster only the size and ss are cached. D({x},Y) is recomputed as a
    row sum of the dissimilarity matrix whenever x is considered for a move.
    Empty clusters keep (0,0) statistics until `compact` is called.

    Parameters:
    ===========
    matrix: DissimilarityMatrix
    partition: complete Partition
    criterion: 'swards' or 'wards'

    Optional:
    =========
    params: CriterionParams, required by 'swards'
    """
    def __init__(self, matrix, partition, criterion, params=None):
        if criterion == SWARDS and params is None:
            raise InputError("the spherical Wards criterion needs CriterionParams")
        self.matrix = matrix
        self.n = matrix.n
        self.criterion = criterion
        self.params = params
        self.labels = partition.labels.copy()
        self.sizes, self.ss = cluster_stats(partition, matrix)
        self.floor = params.floor(matrix) if params is not None else 0.0

    @property
    def k(self):
        return len(self.sizes)

    def partition(self):
        return Partition(self.labels.copy(), k=self.k)

    def row_sums(self, x):
        """D({x},Y_j) for all clusters j"""
        return np.bincount(self.labels, weights=self.matrix.entries[x], minlength=self.k)

    def _terms(self, sizes, ss_, strict=True):
        if self.criterion == SWARDS:
            return _swards_terms(sizes, ss_, self.n, self.params, self.floor, strict=strict)
        return np.asarray(ss_, dtype=float)

    def energy(self):
        """criterion value from the cached statistics"""
        total = float(np.sum(self._terms(self.sizes, self.ss)))
        if self.criterion == SWARDS:
            total += self.params.constant()
        return total

    def deltas(self, x, Dx=None):
        """
        energy changes for moving x from its cluster to every cluster,
        +inf for moves that would create a cluster with vanishing ss while
        the floor is disabled

        Returns:
        ========
        array of length k, 0 for the own cluster of x
        """
        a = self.labels[x]
        if Dx is None:
            Dx = self.row_sums(x)
        size_a = self.sizes[a]
        ss_a_new = _ss_after_remove(size_a, self.ss[a], Dx[a])
        removal = self._terms(size_a - 1, ss_a_new, strict=False) - self._terms(size_a, self.ss[a])
        ss_new = _ss_after_add(self.sizes, self.ss, Dx)
        addition = self._terms(self.sizes + 1, ss_new, strict=False) - self._terms(self.sizes, self.ss)
        delta = float(removal) + addition
        delta[a] = 0.0
        return delta

    def move(self, x, b, Dx=None):
        """reassign x to cluster b and update the statistics of both clusters"""
        a = self.labels[x]
        if a == b:
            return
        if Dx is None:
            Dx = self.row_sums(x)
        self.ss[a] = _ss_after_remove(self.sizes[a], self.ss[a], Dx[a])
        self.sizes[a] -= 1
        self.ss[b] = _ss_after_add(self.sizes[b], self.ss[b], Dx[b])
        self.sizes[b] += 1
        self.labels[x] = b

    def compact(self):
        """drop empty clusters and relabel the others to 0..k'-1"""
        used = np.flatnonzero(self.sizes > 0)
        relabel = np.full(self.k, Constants.UNASSIGNED, dtype=int)
        relabel[used] = np.arange(len(used))
        self.labels = relabel[self.labels]
        self.sizes = self.sizes[used]
        self.ss = self.ss[used]
        return self.k


def move_delta(x, from_, to, state):
    """
    change of the criterion when x is moved from cluster `from_` to cluster `to`,
    computed incrementally from the cached statistics. The criterion and its
    CriterionParams are those the ClusterState was created with.
    """
    if state.labels[x] != from_:
        raise InputError("point %d is in cluster %d, not in %d" % (x, state.labels[x], from_))
    if from_ == to:
        return 0.0
    return float(state.deltas(x)[to])


def euclidean_trace_oracle(Y):
    """sum_{y in Y} |y - m_Y|^2 for points of R^N"""
    Y = np.asarray(Y, dtype=float)
    if Y.ndim == 1:
        Y = Y[:, None]
    m = np.mean(Y, axis=0)
    return float(np.sum((Y - m)**2))

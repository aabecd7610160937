"""
generalized Voronoi diagrams of a clustering

A point x of the data space is attached to the cluster whose energy grows
least when x is adjoined with an infinitesimal weight. For the Wards
criterion this is the cluster minimizing

  d^2(x;Y) = (D({x},Y) - ss(Y)) / |Y|

and for the spherical Wards criterion the cluster minimizing

  ln ss(Y) + |Y| d^2(x;Y) / ss(Y) - (1 + 2/N) ln |Y|

The derivative of the weighted energies behind both rules can be checked
by finite differences with `derivative_check`.
"""
from __future__ import division

import logging

import numpy as np

from SWARDS import Constants
from SWARDS.clusterstate import SWARDS, WARDS, CriterionParams, cluster_stats
from SWARDS.dissimilarity import DissimilarityMatrix, Precomputed, build_matrix
from SWARDS.errors import InputError, DegenerateClusterError
from SWARDS.utils import forward_difference

logger = logging.getLogger(__name__)


class VoronoiGrid(object):
    """
    labels of the cells of a regular grid over a rectangle

    labels[j,i] belongs to the cell with center
      (xmin + (i+0.5)/width*(xmax-xmin), ymin + (j+0.5)/height*(ymax-ymin)),
    so row 0 is at the bottom of the rectangle. Cells that no data point can
    reach carry the label UNREACHABLE.
    """
    def __init__(self, bbox, width, height, labels, criterion, N=None):
        labels = np.asarray(labels, dtype=int)
        if labels.shape != (height, width):
            raise InputError("grid labels have shape %s, expected (%d,%d)" % (labels.shape, height, width))
        self.bbox = np.asarray(bbox, dtype=float)
        self.width = int(width)
        self.height = int(height)
        self.labels = labels
        self.criterion = criterion
        self.N = N

    def n_labels(self):
        reachable = self.labels[self.labels != Constants.UNREACHABLE]
        return int(reachable.max()) + 1 if len(reachable) > 0 else 0

    def label_at(self, point):
        """label of the cell containing a point of the rectangle"""
        x, y = point
        xmin, ymin, xmax, ymax = self.bbox
        i = min(int((x - xmin) / (xmax - xmin) * self.width), self.width - 1)
        j = min(int((y - ymin) / (ymax - ymin) * self.height), self.height - 1)
        return self.labels[j, i]

    def __repr__(self):
        return "VoronoiGrid(%dx%d, criterion=%s)" % (self.width, self.height, self.criterion)


class WeightedCluster(object):
    """
    cluster whose members carry nonnegative weights

    Parameters:
    ===========
    members: data indices
    weights: one weight per member, defaults to 1
    """
    def __init__(self, members, weights=None):
        members = np.asarray(members, dtype=int).ravel()
        if weights is None:
            weights = np.ones(len(members))
        weights = np.asarray(weights, dtype=float).ravel()
        if weights.shape != members.shape:
            raise InputError("%d members but %d weights" % (len(members), len(weights)))
        if np.any(weights < 0.0):
            raise InputError("weights have to be nonnegative")
        self.members = members
        self.weights = weights

    @property
    def size(self):
        """|Y^w| = sum of the weights"""
        return float(np.sum(self.weights))

    def D(self, matrix):
        """D(Y^w,Y^w) = sum_{y,z} w(y) w(z) d^2(y,z)"""
        M = matrix.entries[np.ix_(self.members, self.members)]
        return float(self.weights.dot(M).dot(self.weights))

    def ss(self, matrix):
        return self.D(matrix) / (2.0 * self.size)

    def with_point(self, x, weight):
        return WeightedCluster(np.append(self.members, x), np.append(self.weights, weight))


def cell_centers(bbox, width, height):
    """
    Returns:
    ========
    array (height, width, 2) with the cell centers
    """
    if width < 1 or height < 1:
        raise InputError("grid needs at least one cell, got %dx%d" % (width, height))
    xmin, ymin, xmax, ymax = bbox
    if not (xmin < xmax and ymin < ymax):
        raise InputError("bounding box %s is not a proper rectangle" % list(bbox))
    xs = xmin + (np.arange(width) + 0.5) / width * (xmax - xmin)
    ys = ymin + (np.arange(height) + 0.5) / height * (ymax - ymin)
    X, Y = np.meshgrid(xs, ys)
    return np.stack([X, Y], axis=-1)


def _wards_scores(Dx, sizes, ss_):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(sizes > 0, (Dx - ss_) / sizes, np.inf)


def _swards_scores(Dx, sizes, ss_, N, floor):
    ss_f = np.maximum(ss_, floor)
    occupied = sizes > 0
    if np.any(occupied & (ss_f <= 0.0)):
        bad = np.flatnonzero(occupied & (ss_f <= 0.0))[0]
        raise DegenerateClusterError("cluster %d has a vanishing within-cluster sum of squares "
                                     "and the ss floor is disabled" % bad)
    with np.errstate(divide="ignore", invalid="ignore"):
        score = (np.log(ss_f) + sizes * _wards_scores(Dx, sizes, ss_) / ss_f
                 - (1.0 + 2.0 / N) * np.log(sizes))
    return np.where(occupied, score, np.inf)


def _stats_or_fail(stats):
    if stats.size < 1:
        raise InputError("point score of an empty cluster is undefined")


def wards_point_score(x, Y, measure, stats):
    """
    (D({x},Y) - ss(Y)) / |Y|, equal to |x - m_Y|^2 for the Euclidean measure

    Parameters:
    ===========
    x: point
    Y: the members of the cluster (points, or data indices for a precomputed measure)
    measure: DissimilarityMeasure
    stats: ClusterStats of Y
    """
    _stats_or_fail(stats)
    Dx = float(np.sum(measure.cross_d2([x], Y)))
    return float(_wards_scores(Dx, stats.size, stats.ss))


def swards_point_score(x, Y, measure, stats, N, floor=0.0):
    """
    ln ss(Y) + |Y| d^2(x;Y)/ss(Y) - (1 + 2/N) ln|Y|

    ss(Y) is floored at `floor`, a singleton cluster without floor raises
    DegenerateClusterError.
    """
    _stats_or_fail(stats)
    if not N > 0.0:
        raise InputError("dimension parameter N has to be positive, got %s" % N)
    Dx = float(np.sum(measure.cross_d2([x], Y)))
    return float(_swards_scores(np.array([Dx]), np.array([stats.size]), np.array([stats.ss]), N, floor)[0])


def weighted_energy(clusters, matrix, criterion, params=None):
    """
    criterion of a partition into weighted clusters

    Wards:           sum_i ss(Y_i^w)
    spherical Wards: the spherical criterion with |Y_i| replaced by |Y_i^w|
                     and |X| by sum_i |Y_i^w|; the ss floor is taken
                     relative to D(X^w,X^w)/|X^w|^2
    """
    sizes = np.array([c.size for c in clusters])
    if np.any(sizes <= 0.0):
        raise InputError("cluster %d has zero total weight" % np.flatnonzero(sizes <= 0.0)[0])
    ss_ = np.array([c.ss(matrix) for c in clusters])
    if criterion == WARDS:
        return float(np.sum(ss_))
    elif criterion != SWARDS:
        raise InputError("Unknown criterion '%s'" % criterion)
    total = np.sum(sizes)
    union = WeightedCluster(np.concatenate([c.members for c in clusters]),
                            np.concatenate([c.weights for c in clusters]))
    floor = params.ss_floor_rel * union.D(matrix) / total**2
    ss_f = np.maximum(ss_, floor)
    if np.any(ss_f <= 0.0):
        raise DegenerateClusterError("cluster %d has a vanishing within-cluster sum of squares "
                                     "and the ss floor is disabled" % np.flatnonzero(ss_f <= 0.0)[0])
    N = params.N
    p = sizes / total
    return params.constant() + float(np.sum(p * (0.5 * N * np.log(ss_f) - 0.5 * (N + 2.0) * np.log(p))))


def _extended_matrix(x, points, measure, matrix):
    # data set with x appended as element n
    n = matrix.n
    ext = np.zeros((n + 1, n + 1))
    ext[:n, :n] = matrix.entries
    dx = measure.cross_d2(points, [x])[:, 0]
    ext[:n, n] = dx
    ext[n, :n] = dx
    return DissimilarityMatrix(ext, check=False)


def derivative_check(x, partition, points, measure, criterion, h=1.0e-6, N=None, params=None, matrix=None):
    """
    compare the finite difference derivative of the weighted energy with
    respect to the weight of a new point x with its closed form

    Parameters:
    ===========
    x: new point
    partition: complete Partition of the data points
    points: data points
    measure: DissimilarityMeasure
    criterion: 'wards' or 'swards'

    Optional:
    =========
    h: weight increment, 0 < h <= 1e-3
    N or params: parameters of the spherical criterion
    matrix: DissimilarityMatrix of the data points, built if not given

    Returns:
    ========
    numeric: array (k,), [E(x added to cluster i with weight h) - E] / h
    closed_form: array (k,), d^2(x;Y_i) for Wards or
       1/|X| [N/2 (ln ss_i + |Y_i| d^2(x;Y_i)/ss_i) - (N+2)/2 (ln|Y_i| + 1)]
       for spherical Wards
    shift: the part of the derivative that is the same for every cluster and
       comes from the growth of the total weight,
       1/|X| [(N+2)/2 - S/|X|] with S = sum_j |Y_j| [N/2 ln ss_j - (N+2)/2 ln|Y_j|],
       0 for Wards. numeric = closed_form + shift up to O(h).
    """
    if not 0.0 < h <= 1.0e-3:
        raise InputError("weight increment h has to lie in (0, 1e-3], got %s" % h)
    if criterion == SWARDS and params is None:
        if N is None:
            raise InputError("the spherical Wards criterion needs the dimension parameter N")
        params = CriterionParams(N)
    if matrix is None:
        matrix = build_matrix(points, measure)
    partition = partition.compact()
    ext = _extended_matrix(x, points, measure, matrix)
    n = matrix.n
    base = [WeightedCluster(partition.members(i)) for i in range(partition.k)]

    def energy_with(i):
        def f(w):
            clusters = list(base)
            clusters[i] = base[i].with_point(n, w)
            return weighted_energy(clusters, ext, criterion, params)
        return f

    numeric = np.array([forward_difference(energy_with(i), 0.0, h) for i in range(partition.k)])

    sizes, ss_ = cluster_stats(partition, matrix)
    Dx = np.bincount(partition.labels, weights=ext.entries[n, :n], minlength=partition.k)
    d2 = _wards_scores(Dx, sizes, ss_)
    if criterion == WARDS:
        return numeric, d2, 0.0
    Nc = params.N
    ss_f = np.maximum(ss_, params.floor(matrix))
    closed = (0.5 * Nc * (np.log(ss_f) + sizes * d2 / ss_f)
              - 0.5 * (Nc + 2.0) * (np.log(sizes) + 1.0)) / n
    S = np.sum(sizes * (0.5 * Nc * np.log(ss_f) - 0.5 * (Nc + 2.0) * np.log(sizes)))
    shift = (0.5 * (Nc + 2.0) - S / n) / n
    return numeric, closed, float(shift)


def rasterize(partition, measure, points, bbox, width, height, criterion, N=None, params=None, matrix=None):
    """
    label every cell of a width x height grid over `bbox` with the cluster
    minimizing the point score of the criterion, ties to the lowest id

    Parameters:
    ===========
    partition: complete Partition of the data points
    measure: DissimilarityMeasure, evaluated between every cell center and every data point
    points: data points
    bbox: [xmin,ymin,xmax,ymax]
    width, height: number of cells
    criterion: 'wards' or 'swards'

    Optional:
    =========
    N or params: parameters of the spherical criterion
    matrix: DissimilarityMatrix of the data points, built if not given

    Returns:
    ========
    VoronoiGrid
    """
    if isinstance(measure, Precomputed):
        raise InputError("a precomputed dissimilarity matrix cannot be evaluated at grid cells")
    if criterion not in (SWARDS, WARDS):
        raise InputError("Unknown criterion '%s'" % criterion)
    if criterion == SWARDS and params is None:
        if N is None:
            raise InputError("the spherical Wards criterion needs the dimension parameter N")
        params = CriterionParams(N)
    points = np.asarray(points, dtype=float)
    if len(points) != len(partition):
        raise InputError("%d labels for %d points" % (len(partition), len(points)))
    if matrix is None:
        matrix = build_matrix(points, measure)
    sizes, ss_ = cluster_stats(partition, matrix)
    if not np.any(sizes > 0):
        raise InputError("partition has no clusters")
    onehot = np.zeros((len(points), partition.k))
    onehot[np.arange(len(points)), partition.labels] = 1.0
    floor = params.floor(matrix) if criterion == SWARDS else 0.0
    centers = cell_centers(bbox, width, height)
    labels = np.empty((height, width), dtype=int)
    for j in range(height):
        Dc = measure.cross_d2(centers[j], points)
        finite = np.isfinite(Dc)
        Dx = np.where(finite, Dc, 0.0).dot(onehot)
        Dx[(~finite).astype(float).dot(onehot) > 0.0] = np.inf
        if criterion == WARDS:
            scores = _wards_scores(Dx, sizes, ss_)
        else:
            scores = _swards_scores(Dx, sizes, ss_, params.N, floor)
        row = np.argmin(scores, axis=1)
        row[~np.any(np.isfinite(scores), axis=1)] = Constants.UNREACHABLE
        labels[j] = row
    logger.debug("rasterized %dx%d grid with the %s rule", width, height, criterion)
    return VoronoiGrid(bbox, width, height, labels, criterion,
                       N=params.N if criterion == SWARDS else None)

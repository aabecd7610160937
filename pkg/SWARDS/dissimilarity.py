"""
dissimilarity measures and matrices of squared dissimilarities

All clustering formulas consume squared dissimilarities d^2(x,y). Measures
based on path lengths (barrier and region metrics) compute d and square it.
The axioms required of a measure are d(y,y) = 0 and d(y,z) = d(z,y); the
triangle inequality is not assumed.
"""
from __future__ import division

import logging

import numpy as np
from scipy.spatial.distance import cdist, pdist

from SWARDS.environment import Environment, barrier_distance, region_distance, region_distances
from SWARDS.errors import InputError, DegenerateDataError, UnreachableError

logger = logging.getLogger(__name__)


def euclidean_d2(x, y):
    """squared Euclidean distance sum_k (x_k - y_k)^2"""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if x.shape != y.shape or x.ndim != 1 or len(x) < 1:
        raise InputError("points of different dimension: %s and %s" % (x.shape, y.shape))
    return float(np.sum((x - y)**2))


def rbf_d2(x, y, sigma2):
    """
    squared distance induced by the Gaussian kernel k(x,y) = exp(-|x-y|^2/(2 sigma2)),

      d^2(x,y) = k(x,x) + k(y,y) - 2 k(x,y) = 2 (1 - k(x,y))
    """
    if not sigma2 > 0.0:
        raise InputError("RBF width sigma^2 has to be positive, got %s" % sigma2)
    return 2.0 * (1.0 - np.exp(-euclidean_d2(x, y) / (2.0 * sigma2)))


def median_sigma2(points):
    """
    median of the squared Euclidean distances between all pairs of points,
    the default width of the RBF kernel
    """
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    if len(points) < 2:
        raise InputError("the RBF width needs at least 2 points, got %d" % len(points))
    sigma2 = float(np.median(pdist(points, "sqeuclidean")))
    if sigma2 <= 0.0:
        raise DegenerateDataError("median of squared pairwise distances is zero, "
                                  "too many identical points to set the RBF width")
    return sigma2


def barrier_d(x, y, env):
    """length of the shortest path from x to y not crossing a barrier of env"""
    return barrier_distance(x, y, env)


def region_d(x, y, env):
    """travel cost from x to y in an environment with a slow and a fast region"""
    return region_distance(x, y, env)


class DissimilarityMatrix(object):
    """
    n x n matrix of squared dissimilarities

    Parameters:
    ===========
    entries: array-like (n,n), symmetric, zero diagonal, finite, nonnegative

    Optional:
    =========
    check: validate the entries (raises InputError naming the first offending indices)
    """
    def __init__(self, entries, check=True):
        entries = np.array(entries, dtype=float)
        if check:
            validate_entries(entries)
        self.entries = entries
        self.n = entries.shape[0]

    def __len__(self):
        return self.n

    def distances(self):
        """plain dissimilarities d = sqrt(d^2)"""
        return np.sqrt(self.entries)

    def total(self):
        """D(X,X), sum of all entries"""
        return float(np.sum(self.entries))

    def scaled(self, lam):
        """matrix of the measure lam*d"""
        return DissimilarityMatrix(self.entries * lam**2, check=False)

    def submatrix(self, indices):
        indices = np.asarray(indices, dtype=int)
        return DissimilarityMatrix(self.entries[np.ix_(indices, indices)], check=False)

    def __repr__(self):
        return "DissimilarityMatrix(n=%d)" % self.n


def validate_entries(entries, rtol=1.0e-12):
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise InputError("dissimilarity matrix has to be square, got shape %s" % (entries.shape,))
    bad = np.argwhere(~np.isfinite(entries))
    if len(bad) > 0:
        raise InputError("entry (%d,%d) of the dissimilarity matrix is not finite" % tuple(bad[0]))
    bad = np.argwhere(entries < 0.0)
    if len(bad) > 0:
        raise InputError("entry (%d,%d) of the dissimilarity matrix is negative" % tuple(bad[0]))
    bad = np.flatnonzero(np.diag(entries) != 0.0)
    if len(bad) > 0:
        raise InputError("diagonal entry (%d,%d) of the dissimilarity matrix is not zero" % (bad[0], bad[0]))
    asym = np.abs(entries - entries.T) > rtol * np.maximum(np.abs(entries), np.abs(entries.T))
    bad = np.argwhere(asym)
    if len(bad) > 0:
        i, j = bad[0]
        raise InputError("dissimilarity matrix is not symmetric: entry (%d,%d) = %r but entry (%d,%d) = %r"
                         % (i, j, entries[i, j], j, i, entries[j, i]))


class DissimilarityMeasure(object):
    """
    base class of all measures, evaluates squared dissimilarities between points
    """
    name = None

    def d2(self, x, y):
        return float(self.cross_d2([x], [y])[0, 0])

    def cross_d2(self, X, Y):
        """
        squared dissimilarities between all elements of X and all elements of Y

        Returns:
        ========
        array of shape (len(X), len(Y)), np.inf where a geodesic measure
        finds no connecting path
        """
        raise NotImplementedError()

    def as_dict(self):
        return {"measure": self.name}


class Euclidean(DissimilarityMeasure):
    name = "euclidean"

    def cross_d2(self, X, Y):
        return cdist(_as_points(X), _as_points(Y), "sqeuclidean")


class RbfInduced(DissimilarityMeasure):
    name = "rbf"

    def __init__(self, sigma2):
        if not sigma2 > 0.0:
            raise InputError("RBF width sigma^2 has to be positive, got %s" % sigma2)
        self.sigma2 = float(sigma2)

    def cross_d2(self, X, Y):
        sq = cdist(_as_points(X), _as_points(Y), "sqeuclidean")
        return 2.0 * (1.0 - np.exp(-sq / (2.0 * self.sigma2)))

    def as_dict(self):
        return {"measure": self.name, "sigma2": self.sigma2}


class Barrier(DissimilarityMeasure):
    name = "barrier"

    def __init__(self, env):
        self.env = env

    def d2(self, x, y):
        return barrier_d(x, y, self.env)**2

    def cross_d2(self, X, Y):
        X, Y = _as_points(X), _as_points(Y)
        self.env.check_inside(X)
        self.env.check_inside(Y)
        return self.env.graph().distances(X, Y)**2

    def as_dict(self):
        return {"measure": self.name, "environment": self.env.as_dict()}


class Region(DissimilarityMeasure):
    name = "region"

    def __init__(self, env):
        if env.border_x is None:
            raise InputError("the region measure needs an environment with 'border_x'")
        self.env = env

    def cross_d2(self, X, Y):
        return region_distances(_as_points(X), _as_points(Y), self.env)**2

    def as_dict(self):
        return {"measure": self.name, "environment": self.env.as_dict()}


class Precomputed(DissimilarityMeasure):
    """
    measure given by a matrix, the 'points' are data indices
    """
    name = "precomputed"

    def __init__(self, matrix):
        self.matrix = matrix

    def cross_d2(self, X, Y):
        X = np.asarray(X, dtype=int).ravel()
        Y = np.asarray(Y, dtype=int).ravel()
        for idx in (X, Y):
            if len(idx) > 0 and (idx.min() < 0 or idx.max() >= self.matrix.n):
                raise InputError("data index out of range 0..%d" % (self.matrix.n - 1))
        return self.matrix.entries[np.ix_(X, Y)]


def _as_points(X):
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    return X


def build_matrix(points, measure):
    """
    matrix of squared dissimilarities between all pairs of points

    The upper triangle is evaluated and mirrored, so the result is exactly
    symmetric with a zero diagonal.
    """
    points = np.asarray(points)
    n = len(points)
    if n < 1:
        raise InputError("cannot build a dissimilarity matrix of an empty data set")
    if isinstance(measure, Precomputed):
        idx = np.asarray(points, dtype=int).ravel()
        full = measure.cross_d2(idx, idx)
    else:
        full = measure.cross_d2(points, points)
    upper = np.triu(full, k=1)
    entries = upper + upper.T
    bad = np.argwhere(~np.isfinite(entries))
    if len(bad) > 0:
        i, j = bad[0]
        raise UnreachableError("points %d and %d are not connected by any path of the %s measure"
                               % (i, j, measure.name))
    logger.debug("built %dx%d dissimilarity matrix with the %s measure", n, n, measure.name)
    return DissimilarityMatrix(entries, check=False)


def get_measure(name, points=None, env=None, sigma2=None, matrix=None):
    """
    retrieve a dissimilarity measure by name

    Parameters:
    ===========
    name: 'euclidean', 'rbf', 'barrier', 'region' or 'precomputed'

    Optional:
    =========
    points: data points, used to set the RBF width by the median rule if
       sigma2 is not given
    env: Environment, required by 'barrier' and 'region'
    sigma2: RBF width
    matrix: DissimilarityMatrix, required by 'precomputed'
    """
    if name == "euclidean":
        return Euclidean()
    elif name == "rbf":
        if sigma2 is None:
            if points is None:
                raise InputError("the RBF measure needs either sigma2 or the data points")
            sigma2 = median_sigma2(points)
            logger.info("RBF width from median rule: sigma^2 = %.6g", sigma2)
        return RbfInduced(sigma2)
    elif name in ("barrier", "region"):
        if env is None:
            raise InputError("the %s measure needs an environment" % name)
        if not isinstance(env, Environment):
            env = Environment.from_dict(env)
        return Barrier(env) if name == "barrier" else Region(env)
    elif name == "precomputed":
        if matrix is None:
            raise InputError("the precomputed measure needs a matrix")
        return Precomputed(matrix)
    else:
        raise InputError("Unknown dissimilarity measure '%s'" % name)

"""
Hartigan-style minimization of the spherical Wards and the Wards criterion

One run starts from a random assignment of the points to the initial
clusters and repeats

  1. sweep: every point, in index order, is moved to the cluster giving the
     largest decrease of the energy
  2. removal (spherical Wards only): clusters with fewer than epsilon*|X|
     points are dissolved, their points go to the surviving clusters where the
     increase of the energy is minimal

until a sweep changes nothing and no cluster was removed. Out of several
runs with independent random streams the one with the lowest energy wins.
"""
from __future__ import division

import logging
import multiprocessing
from itertools import repeat

import numpy as np

from SWARDS import Constants
from SWARDS.clusterstate import ClusterState, CriterionParams, Partition, SWARDS, WARDS, energy
from SWARDS.errors import InputError

logger = logging.getLogger(__name__)


class ClusteringConfig(object):
    """
    Parameters:
    ===========
    criterion: 'swards' or 'wards'

    Optional:
    =========
    params: CriterionParams of the spherical criterion
    N: shortcut for params=CriterionParams(N)
    k: number of clusters of the Wards criterion
    n_init_clusters: number of initial clusters of the spherical criterion
    epsilon: clusters with fewer than epsilon*|X| points are removed
    max_sweeps: upper limit for the sweeps of one run
    restarts: number of independent runs
    seed: seed of the random streams, run r uses seed ^ r
    n_jobs: number of worker processes for the runs
    """
    def __init__(self, criterion=SWARDS, params=None, N=None, k=None,
                 n_init_clusters=Constants.n_init_clusters,
                 epsilon=Constants.epsilon,
                 max_sweeps=Constants.max_sweeps,
                 restarts=Constants.restarts,
                 seed=0, n_jobs=1):
        if criterion == SWARDS:
            if k is not None:
                raise InputError("the number of clusters k is only used by the Wards criterion")
            if params is None:
                if N is None:
                    raise InputError("the spherical Wards criterion needs the dimension parameter N")
                params = CriterionParams(N)
        elif criterion == WARDS:
            if k is None or k < 1:
                raise InputError("the Wards criterion needs a number of clusters k >= 1, got %s" % k)
        else:
            raise InputError("Unknown criterion '%s'" % criterion)
        if n_init_clusters < 1:
            raise InputError("n_init_clusters has to be >= 1, got %s" % n_init_clusters)
        if not 0.0 <= epsilon < 1.0:
            raise InputError("epsilon has to lie in [0,1), got %s" % epsilon)
        if max_sweeps < 1:
            raise InputError("max_sweeps has to be >= 1, got %s" % max_sweeps)
        if restarts < 1:
            raise InputError("restarts has to be >= 1, got %s" % restarts)
        if not 0 <= seed < 2**64:
            raise InputError("seed has to be an unsigned 64 bit integer, got %s" % seed)
        if n_jobs < 1:
            raise InputError("n_jobs has to be >= 1, got %s" % n_jobs)
        self.criterion = criterion
        self.params = params
        self.k = None if k is None else int(k)
        self.n_init_clusters = int(n_init_clusters)
        self.epsilon = float(epsilon)
        self.max_sweeps = int(max_sweeps)
        self.restarts = int(restarts)
        self.seed = int(seed)
        self.n_jobs = int(n_jobs)

    @property
    def initial_k(self):
        return self.n_init_clusters if self.criterion == SWARDS else self.k

    def copy(self, **changes):
        """new configuration with some options replaced"""
        opts = dict(criterion=self.criterion, params=self.params, k=self.k,
                    n_init_clusters=self.n_init_clusters, epsilon=self.epsilon,
                    max_sweeps=self.max_sweeps, restarts=self.restarts,
                    seed=self.seed, n_jobs=self.n_jobs)
        opts.update(changes)
        if "N" in changes:
            opts["params"] = None
        if opts["criterion"] == WARDS:
            opts["params"] = None
        else:
            opts["k"] = None
        return ClusteringConfig(**opts)

    def as_dict(self):
        dic = {"criterion": self.criterion,
               "n_init_clusters": self.n_init_clusters,
               "epsilon": self.epsilon,
               "max_sweeps": self.max_sweeps,
               "restarts": self.restarts,
               "seed": self.seed}
        if self.criterion == SWARDS:
            dic.update(self.params.as_dict())
        else:
            dic["k"] = self.k
        return dic


class SweepRecord(object):
    """energy before/after the reassignment pass of one sweep, moves and removed clusters"""
    __slots__ = ("energy_before", "energy_after", "moves", "removed")

    def __init__(self, energy_before, energy_after, moves, removed):
        self.energy_before = energy_before
        self.energy_after = energy_after
        self.moves = moves
        self.removed = removed

    def as_dict(self):
        return {name: getattr(self, name) for name in self.__slots__}

    def __repr__(self):
        return "SweepRecord(%r -> %r, moves=%d, removed=%d)" \
            % (self.energy_before, self.energy_after, self.moves, self.removed)


class ClusteringResult(object):
    def __init__(self, partition, energy, sweeps_run, restart_index, energy_trace, sweep_log):
        self.partition = partition
        self.energy = energy
        self.n_clusters = partition.n_clusters()
        self.sweeps_run = sweeps_run
        self.restart_index = restart_index
        self.energy_trace = energy_trace
        self.sweep_log = sweep_log
        # sweeps of every restart, filled in by cluster()
        self.restart_sweeps = [sweeps_run]

    @property
    def labels(self):
        return self.partition.labels

    def cluster_sizes(self):
        return self.partition.sizes().tolist()

    def __repr__(self):
        return "ClusteringResult(n_clusters=%d, energy=%r, restart=%d, sweeps=%d)" \
            % (self.n_clusters, self.energy, self.restart_index, self.sweeps_run)


def sweep(state, config=None):
    """
    one pass over all points in index order applying the best reassignment

    A move is applied only if it lowers the energy by more than
    move_tolerance*(1+|E|). Among candidates within this tolerance of the best
    one the lowest cluster id wins. The spherical criterion never moves a
    point into an empty cluster.

    Returns:
    ========
    number of moves, 0 if the state is unchanged
    """
    allow_empty = state.criterion == WARDS
    E = state.energy()
    moves = 0
    for x in range(state.n):
        Dx = state.row_sums(x)
        delta = state.deltas(x, Dx)
        if not allow_empty:
            delta[state.sizes == 0] = np.inf
        tol = Constants.move_tolerance * (1.0 + abs(E))
        best = np.min(delta)
        if not best < -tol:
            continue
        b = int(np.flatnonzero(delta <= best + tol)[0])
        if b == state.labels[x]:
            continue
        state.move(x, b, Dx)
        E += delta[b]
        moves += 1
    return moves


def remove_small(state, config):
    """
    dissolve all clusters with fewer than epsilon*|X| points, empty clusters
    always count as small

    The smallest cluster is dissolved first (ties by id). Its points are
    reassigned in index order, each to the surviving cluster where the energy
    increases least. Afterwards cluster ids are compacted. If no cluster is
    large enough to survive, only empty clusters are dropped.

    Returns:
    ========
    number of removed clusters
    """
    threshold = config.epsilon * state.n
    large = (state.sizes >= threshold) & (state.sizes > 0)
    survivors = np.flatnonzero(large)
    small = np.flatnonzero(~large)
    if len(survivors) == 0:
        k = state.k
        return k - state.compact()
    order = small[np.lexsort((small, state.sizes[small]))]
    for c in order:
        for x in np.flatnonzero(state.labels == c):
            Dx = state.row_sums(x)
            delta = state.deltas(x, Dx)[survivors]
            state.move(x, survivors[np.argmin(delta)], Dx)
    state.compact()
    assert state.k == len(survivors)
    return len(small)


def run(matrix, config, restart_index=0):
    """single run of the clustering from a random initial partition"""
    n = matrix.n
    rng = np.random.Generator(np.random.PCG64(config.seed ^ restart_index))
    k0 = config.initial_k
    labels = rng.integers(0, k0, size=n)
    state = ClusterState(matrix, Partition(labels, k=k0), config.criterion, config.params)
    swards = config.criterion == SWARDS
    trace = [state.energy()]
    sweep_log = []
    sweeps_run = 0
    for sweeps_run in range(1, config.max_sweeps + 1):
        before = state.energy()
        moves = sweep(state, config)
        after = state.energy()
        removed = remove_small(state, config) if swards else 0
        trace.append(state.energy())
        sweep_log.append(SweepRecord(before, after, moves, removed))
        logger.debug("restart %d sweep %d: energy %.10g -> %.10g, %d moves, %d clusters removed",
                     restart_index, sweeps_run, before, trace[-1], moves, removed)
        if moves == 0 and removed == 0:
            break
    else:
        logger.warning("restart %d did not converge within %d sweeps", restart_index, config.max_sweeps)
    partition = state.partition().compact()
    final = energy(partition, matrix, config.criterion, config.params)
    logger.info("restart %d: %d clusters, energy %.10g after %d sweeps",
                restart_index, partition.k, final, sweeps_run)
    return ClusteringResult(partition, final, sweeps_run, restart_index, trace, sweep_log)


def _run_star(args):
    return run(*args)


def best_of_restarts(results):
    """result with the lowest energy, ties go to the earliest restart"""
    results = list(results)
    if len(results) == 0:
        raise InputError("no clustering results to choose from")
    return min(results, key=lambda res: (res.energy, res.restart_index))


def cluster(matrix, config):
    """
    minimize the criterion of `config` over partitions of the data set

    Parameters:
    ===========
    matrix: DissimilarityMatrix
    config: ClusteringConfig

    Returns:
    ========
    ClusteringResult of the best run
    """
    if matrix.n < 2:
        raise InputError("clustering needs at least 2 points, got %d" % matrix.n)
    if config.initial_k > matrix.n:
        raise InputError("cannot start with %d clusters for %d points" % (config.initial_k, matrix.n))
    jobs = list(zip(repeat(matrix), repeat(config), range(config.restarts)))
    if config.n_jobs > 1 and config.restarts > 1:
        pool = multiprocessing.Pool(processes=min(config.n_jobs, config.restarts))
        try:
            results = pool.map(_run_star, jobs)
        finally:
            pool.close()
            pool.join()
    else:
        results = [_run_star(job) for job in jobs]
    best = best_of_restarts(results)
    best.restart_sweeps = [res.sweeps_run for res in results]
    logger.info("best of %d restarts: restart %d with %d clusters, energy %.10g",
                len(results), best.restart_index, best.n_clusters, best.energy)
    return best

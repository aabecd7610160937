"""
seeded generators for synthetic data sets and environments

  * mixtures of isotropic Gaussians
  * populations following a random walk in an environment with barriers or
    with a slow and a fast region
  * a mouse-like set (a large disc with two small discs as ears) whose ears
    are partially separated from the head by barriers
  * uniform samples of a segment and a square with known intrinsic dimension
"""
from __future__ import division

import logging

import numpy as np

from SWARDS import Constants
from SWARDS.environment import Environment, segments_cross
from SWARDS.errors import InputError

logger = logging.getLogger(__name__)

# the four axis-aligned unit steps of the lattice walk
DIRECTIONS = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])


class MixtureSpec(object):
    """
    Parameters:
    ===========
    weights: mixing proportions, summing to 1
    means: component means, shape (K,dim)
    variances: isotropic variances of the components (> 0)
    n: number of samples

    Optional:
    =========
    seed: seed of the random generator
    """
    def __init__(self, weights, means, variances, n, seed=0):
        weights = np.asarray(weights, dtype=float).ravel()
        means = np.atleast_2d(np.asarray(means, dtype=float))
        variances = np.asarray(variances, dtype=float).ravel()
        if not (len(weights) == len(means) == len(variances)):
            raise InputError("%d weights, %d means and %d variances given"
                             % (len(weights), len(means), len(variances)))
        if np.any(weights < 0.0) or abs(np.sum(weights) - 1.0) > 1.0e-9:
            raise InputError("mixing weights have to be nonnegative and sum to 1, got %s" % weights.tolist())
        if np.any(variances <= 0.0):
            raise InputError("variances have to be positive, got %s" % variances.tolist())
        if n < 0:
            raise InputError("number of samples has to be nonnegative, got %s" % n)
        self.weights = weights
        self.means = means
        self.variances = variances
        self.n = int(n)
        self.seed = seed


def sample_mixture(spec):
    """
    Returns:
    ========
    points: array (n,dim)
    labels: index of the component each point was drawn from
    """
    rng = np.random.default_rng(spec.seed)
    dim = spec.means.shape[1]
    labels = rng.choice(len(spec.weights), size=spec.n, p=spec.weights)
    noise = rng.standard_normal((spec.n, dim))
    points = spec.means[labels] + np.sqrt(spec.variances[labels])[:, None] * noise
    return points, labels


def mixture_scale(r, n=800, seed=0):
    """1/2 G((-1,0), r) + 1/2 G((1,0), 1-r), clusters of equal size but different spread"""
    if not 0.0 < r < 1.0:
        raise InputError("r has to lie in (0,1), got %s" % r)
    return MixtureSpec([0.5, 0.5], [[-1.0, 0.0], [1.0, 0.0]], [r, 1.0 - r], n, seed)


def mixture_unbalanced(omega, n=800, seed=0):
    """omega G((-1,0), 1/2) + (1-omega) G((1,0), 1/2), clusters of equal spread but different size"""
    if not 0.0 < omega < 1.0:
        raise InputError("omega has to lie in (0,1), got %s" % omega)
    return MixtureSpec([omega, 1.0 - omega], [[-1.0, 0.0], [1.0, 0.0]], [0.5, 0.5], n, seed)


class WalkSpec(object):
    """
    Parameters:
    ===========
    seed_point: common starting point of all instances
    n: number of instances
    t: number of time steps

    Optional:
    =========
    step: length of one step, defaults to walk_step_fraction * smallest extent of env.bbox
    env: Environment restricting the walk, None for the free plane
    seed: seed of the random generator (int or numpy SeedSequence)
    """
    def __init__(self, seed_point, n, t, step=None, env=None, seed=0):
        seed_point = np.asarray(seed_point, dtype=float).ravel()
        if seed_point.shape != (2,):
            raise InputError("random walks live in the plane, got seed point %s" % seed_point.tolist())
        if n < 1 or t < 0:
            raise InputError("random walk needs n >= 1 and t >= 0, got n=%s t=%s" % (n, t))
        if env is not None and not env.contains(seed_point)[0]:
            raise InputError("seed point %s lies outside the bounding box %s"
                             % (seed_point.tolist(), env.bbox.tolist()))
        if step is None:
            step = Constants.walk_step_fraction * np.min(env.extent) if env is not None else 1.0
        if not step > 0.0:
            raise InputError("step length has to be positive, got %s" % step)
        self.seed_point = seed_point
        self.n = int(n)
        self.t = int(t)
        self.step = float(step)
        self.env = env
        self.seed = seed


def random_walk(spec):
    """
    final positions of n independent lattice walks of t steps

    Every step goes in one of the four axis directions. Inside the slow region
    of the environment the step length is divided by the slow factor. A step
    leaving the bounding box or touching a barrier is rejected and redrawn,
    after walk_retries rejections the instance stays put for this step.

    Returns:
    ========
    array (n,2)
    """
    rng = np.random.default_rng(spec.seed)
    env = spec.env
    pos = np.tile(spec.seed_point, (spec.n, 1))
    stuck = 0
    for tick in range(spec.t):
        if env is None:
            pos = pos + spec.step * DIRECTIONS[rng.integers(0, 4, size=spec.n)]
            continue
        waiting = np.ones(spec.n, dtype=bool)
        new = pos.copy()
        length = np.where(env.is_slow(pos), spec.step / env.slow_factor, spec.step)
        for attempt in range(Constants.walk_retries):
            idx = np.flatnonzero(waiting)
            if len(idx) == 0:
                break
            cand = pos[idx] + length[idx, None] * DIRECTIONS[rng.integers(0, 4, size=len(idx))]
            ok = env.contains(cand) & ~segments_cross(pos[idx], cand, env.barriers)
            new[idx[ok]] = cand[ok]
            waiting[idx[ok]] = False
        stuck += np.count_nonzero(waiting)
        pos = new
    if stuck > 0:
        logger.debug("%d walk steps were skipped after %d rejections", stuck, Constants.walk_retries)
    return pos


def walk_populations(seeds, n_each, t, step=None, env=None, seed=0):
    """
    one random walk population per seed point, every population with its own
    random stream

    Returns:
    ========
    points: array (len(seeds)*n_each, 2)
    labels: population index of every point
    """
    streams = np.random.SeedSequence(seed).spawn(len(seeds))
    points = []
    labels = []
    for i, (seed_point, stream) in enumerate(zip(seeds, streams)):
        points.append(random_walk(WalkSpec(seed_point, n_each, t, step=step, env=env, seed=stream)))
        labels.append(np.full(n_each, i, dtype=int))
    return np.vstack(points), np.concatenate(labels)


def uniform_disc(rng, center, radius, n):
    r = radius * np.sqrt(rng.random(n))
    phi = 2.0 * np.pi * rng.random(n)
    return np.asarray(center) + np.column_stack([r * np.cos(phi), r * np.sin(phi)])


def ear_barrier(head_center, head_radius, ear_center, ear_radius, gap):
    """
    barrier along the common chord of the head and an ear disc

    The barrier starts gap/2 beyond the end of the chord nearer to the vertical axis
    of the head and stops `gap` before the other end, so the ear stays connected
    to the head through an opening of width ~gap.
    """
    c0 = np.asarray(head_center, dtype=float)
    c1 = np.asarray(ear_center, dtype=float)
    D = np.linalg.norm(c1 - c0)
    if not abs(head_radius - ear_radius) < D < head_radius + ear_radius:
        raise InputError("ear disc at %s does not overlap the boundary of the head" % c1.tolist())
    u = (c1 - c0) / D
    a = (D**2 + head_radius**2 - ear_radius**2) / (2.0 * D)
    half = np.sqrt(head_radius**2 - a**2)
    mid = c0 + a * u
    t = np.array([-u[1], u[0]])
    # orient t towards the vertical axis through the head center
    if t[0] * (c0[0] - c1[0]) < 0.0:
        t = -t
    start = mid + (half + 0.5 * gap) * t
    end = mid - (half - gap) * t
    return np.concatenate([start, end])


def mouse_dataset(n_head, n_ear, seed=0,
                  head_center=Constants.mouse_head_center,
                  head_radius=Constants.mouse_head_radius,
                  ear_centers=Constants.mouse_ear_centers,
                  ear_radius=Constants.mouse_ear_radius,
                  barrier_gap=Constants.mouse_barrier_gap):
    """
    uniform samples of a head disc and two ear discs

    Returns:
    ========
    points: array (n_head + 2*n_ear, 2), head first
    labels: 0 for the head, 1 and 2 for the ears
    env: Environment with one barrier per ear
    """
    if n_head < 1 or n_ear < 1:
        raise InputError("the mouse needs at least one point per disc, got n_head=%s n_ear=%s" % (n_head, n_ear))
    rng = np.random.default_rng(seed)
    points = [uniform_disc(rng, head_center, head_radius, n_head)]
    labels = [np.zeros(n_head, dtype=int)]
    barriers = []
    for i, center in enumerate(ear_centers):
        points.append(uniform_disc(rng, center, ear_radius, n_ear))
        labels.append(np.full(n_ear, i + 1, dtype=int))
        barriers.append(ear_barrier(head_center, head_radius, center, ear_radius, barrier_gap))
    points = np.vstack(points)
    barriers = np.array(barriers)
    corners = np.vstack([points, barriers[:, :2], barriers[:, 2:],
                         np.asarray(head_center) - head_radius, np.asarray(head_center) + head_radius]
                        + [np.asarray(c) - ear_radius for c in ear_centers]
                        + [np.asarray(c) + ear_radius for c in ear_centers])
    margin = 0.1 * head_radius
    bbox = np.concatenate([corners.min(axis=0) - margin, corners.max(axis=0) + margin])
    return points, np.concatenate(labels), Environment(barriers=barriers, bbox=bbox)


def barrier_scenario(seed=0, n_each=150, t=200, step=0.25):
    """
    three walk populations in the box [0,10]^2 with two barriers, the outer
    populations reach the middle one only around the barrier ends
    """
    env = Environment(barriers=[[3.5, 0.0, 3.5, 6.0], [6.5, 10.0, 6.5, 4.0]],
                      bbox=[0.0, 0.0, 10.0, 10.0])
    points, labels = walk_populations([(2.0, 5.0), (5.0, 5.0), (8.0, 5.0)], n_each, t,
                                      step=step, env=env, seed=seed)
    return points, labels, env


def region_scenario(seed=0, n_each=(150, 150), t=100, step=0.25, slow_factor=5.0):
    """
    two walk populations in the box [-5,5]^2 split at x = 0 into a slow
    (left) and a fast (right) region; the slow population stays compact
    """
    env = Environment(bbox=[-5.0, -5.0, 5.0, 5.0], border_x=0.0, slow_factor=slow_factor)
    streams = np.random.SeedSequence(seed).spawn(2)
    points = []
    labels = []
    for i, (seed_point, n, stream) in enumerate(zip([(-2.5, 0.0), (3.0, 0.0)], n_each, streams)):
        points.append(random_walk(WalkSpec(seed_point, n, t, step=step, env=env, seed=stream)))
        labels.append(np.full(n, i, dtype=int))
    return np.vstack(points), np.concatenate(labels), env


def uniform_segment(n, seed=0, angle=0.3):
    """n points uniform on a unit segment through the origin in the plane"""
    u = np.random.default_rng(seed).random(n)
    return np.column_stack([u * np.cos(angle), u * np.sin(angle)])


def uniform_square(n, seed=0):
    """n points uniform in the unit square"""
    return np.random.default_rng(seed).random((n, 2))

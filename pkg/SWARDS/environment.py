"""
geometric scenes inducing non Euclidean metrics on the plane

An environment consists of a bounding box, a list of barriers (line segments
that cannot be crossed) and optionally a vertical border line at abscissa
`border_x` that separates a slow region (x < border_x) from a fast region
(x >= border_x). Inside the slow region distances are stretched by the
factor `slow_factor`.
"""
from __future__ import division

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from SWARDS import Constants
from SWARDS.errors import InputError, UnreachableError


class Environment(object):
    """
    Parameters:
    ===========
    barriers: list of segments [x1,y1,x2,y2]
    bbox: [xmin,ymin,xmax,ymax]

    Optional:
    =========
    border_x: abscissa of the border between slow and fast region,
       None if the plane is homogeneous
    slow_factor: ratio of the speeds in the fast and the slow region (>= 1)
    """
    def __init__(self, barriers=(), bbox=(-1.0, -1.0, 1.0, 1.0), border_x=None, slow_factor=5.0):
        barriers = np.asarray(barriers, dtype=float).reshape(-1, 4)
        lengths = np.hypot(barriers[:, 2] - barriers[:, 0], barriers[:, 3] - barriers[:, 1])
        bad = np.flatnonzero(lengths <= 0.0)
        if len(bad) > 0:
            raise InputError("barrier %d has zero length" % bad[0])
        bbox = np.asarray(bbox, dtype=float)
        if bbox.shape != (4,) or not (bbox[0] < bbox[2] and bbox[1] < bbox[3]):
            raise InputError("bounding box %s is not a proper rectangle [xmin,ymin,xmax,ymax]" % list(bbox))
        if slow_factor < 1.0:
            raise InputError("slow factor has to be >= 1, got %s" % slow_factor)
        self.barriers = barriers
        self.bbox = bbox
        self.border_x = None if border_x is None else float(border_x)
        self.slow_factor = float(slow_factor)
        self._graph = None

    @property
    def extent(self):
        return self.bbox[2:] - self.bbox[:2]

    def contains(self, points):
        """bool array, True for points inside the (closed) bounding box"""
        p = np.atleast_2d(points)
        return ((p[:, 0] >= self.bbox[0]) & (p[:, 0] <= self.bbox[2])
                & (p[:, 1] >= self.bbox[1]) & (p[:, 1] <= self.bbox[3]))

    def check_inside(self, points):
        outside = np.flatnonzero(~self.contains(points))
        if len(outside) > 0:
            raise InputError("point %d (%s) lies outside the bounding box %s"
                             % (outside[0], list(np.atleast_2d(points)[outside[0]]), list(self.bbox)))

    def is_slow(self, points):
        """points on the border belong to the fast region"""
        p = np.atleast_2d(points)
        if self.border_x is None:
            return np.zeros(len(p), dtype=bool)
        return p[:, 0] < self.border_x

    def graph(self):
        """visibility graph of the barrier endpoints, built once"""
        if self._graph is None:
            self._graph = BarrierGraph(self)
        return self._graph

    def as_dict(self):
        dic = {"barriers": self.barriers.tolist(),
               "bbox": self.bbox.tolist()}
        if self.border_x is not None:
            dic["border_x"] = self.border_x
            dic["slow_factor"] = self.slow_factor
        return dic

    @classmethod
    def from_dict(cls, dic):
        try:
            bbox = dic["bbox"]
        except KeyError:
            raise InputError("environment has no 'bbox' field")
        return cls(barriers=dic.get("barriers", []),
                   bbox=bbox,
                   border_x=dic.get("border_x", None),
                   slow_factor=dic.get("slow_factor", 5.0))

    def __repr__(self):
        return "Environment(%d barriers, bbox=%s, border_x=%s, slow_factor=%s)" \
            % (len(self.barriers), list(self.bbox), self.border_x, self.slow_factor)


def _orientation(ax, ay, bx, by, cx, cy):
    # > 0 if c lies to the left of the directed line a->b
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _between(px, py, qx, qy, rx, ry):
    # r lies in the axis-aligned box spanned by p and q
    return ((rx <= np.maximum(px, qx)) & (rx >= np.minimum(px, qx))
            & (ry <= np.maximum(py, qy)) & (ry >= np.minimum(py, qy)))


def segments_cross(P, Q, barriers, closed=True):
    """
    test whether the segments P-Q intersect any of the barriers

    Parameters:
    ===========
    P, Q: arrays of shape (...,2) with start and end points, broadcastable
    barriers: array of shape (B,4)

    Optional:
    =========
    closed: if True touching a barrier (including its endpoints) counts as an
       intersection, otherwise only proper crossings of the two open segments
       are reported

    Returns:
    ========
    bool array with the broadcast shape of P[...,0] and Q[...,0]
    """
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    shape = np.broadcast(P[..., 0], Q[..., 0]).shape
    if len(barriers) == 0:
        return np.zeros(shape, dtype=bool)
    px, py = P[..., 0, None], P[..., 1, None]
    qx, qy = Q[..., 0, None], Q[..., 1, None]
    ax, ay, bx, by = barriers[:, 0], barriers[:, 1], barriers[:, 2], barriers[:, 3]
    o1 = _orientation(px, py, qx, qy, ax, ay)
    o2 = _orientation(px, py, qx, qy, bx, by)
    o3 = _orientation(ax, ay, bx, by, px, py)
    o4 = _orientation(ax, ay, bx, by, qx, qy)
    hit = (o1 * o2 < 0.0) & (o3 * o4 < 0.0)
    if closed:
        hit |= (o1 == 0.0) & _between(px, py, qx, qy, ax, ay)
        hit |= (o2 == 0.0) & _between(px, py, qx, qy, bx, by)
        hit |= (o3 == 0.0) & _between(ax, ay, bx, by, px, py)
        hit |= (o4 == 0.0) & _between(ax, ay, bx, by, qx, qy)
    return np.any(hit, axis=-1)


class BarrierGraph(object):
    """
    shortest paths around segment barriers

    Every barrier endpoint is represented by two nodes placed a tiny distance
    beyond the tip, on either side of the barrier line. Edges between nodes
    and query points must not touch any barrier, so paths cannot slip through
    a vertex shared by two barriers. All pairs shortest paths between nodes
    are computed once with Dijkstra's algorithm.
    """
    def __init__(self, env):
        self.barriers = env.barriers
        self.delta = 1.0e-8 * max(1.0, float(np.max(np.abs(env.bbox))))
        nodes = []
        for x1, y1, x2, y2 in self.barriers:
            for (ex, ey), (ox, oy) in (((x1, y1), (x2, y2)), ((x2, y2), (x1, y1))):
                u = np.array([ex - ox, ey - oy])
                u /= np.linalg.norm(u)
                n = np.array([-u[1], u[0]])
                nodes.append(np.array([ex, ey]) + self.delta * (u + n))
                nodes.append(np.array([ex, ey]) + self.delta * (u - n))
        self.nodes = np.array(nodes).reshape(-1, 2)
        m = len(self.nodes)
        if m > 0:
            dist = np.linalg.norm(self.nodes[:, None, :] - self.nodes[None, :, :], axis=-1)
            visible = ~segments_cross(self.nodes[:, None, :], self.nodes[None, :, :], self.barriers)
            np.fill_diagonal(visible, False)
            self.node_paths = dijkstra(csr_matrix(np.where(visible, dist, 0.0)), directed=False)
        else:
            self.node_paths = np.zeros((0, 0))

    def _to_nodes(self, P):
        # lengths of the straight edges from P to all nodes, inf if blocked
        dist = np.linalg.norm(P[:, None, :] - self.nodes[None, :, :], axis=-1)
        blocked = segments_cross(P[:, None, :], self.nodes[None, :, :], self.barriers)
        dist[blocked] = np.inf
        return dist

    def distances(self, P, Q, chunk=64):
        """
        geodesic distances between all points in P and all points in Q

        Returns:
        ========
        array of shape (len(P), len(Q)), np.inf where no path exists
        """
        P = np.atleast_2d(np.asarray(P, dtype=float))
        Q = np.atleast_2d(np.asarray(Q, dtype=float))
        D = np.empty((len(P), len(Q)))
        if len(self.nodes) > 0:
            AQ = self._to_nodes(Q)
        for start in range(0, len(P), chunk):
            Pc = P[start:start + chunk]
            diff = Pc[:, None, :] - Q[None, :, :]
            direct = np.sqrt(np.sum(diff**2, axis=-1))
            direct[segments_cross(Pc[:, None, :], Q[None, :, :], self.barriers)] = np.inf
            if len(self.nodes) > 0:
                AP = self._to_nodes(Pc)
                # shortest way from each point of the chunk to every node
                H = np.min(AP[:, :, None] + self.node_paths[None, :, :], axis=1)
                via = np.min(H[:, None, :] + AQ[None, :, :], axis=2)
                direct = np.minimum(direct, via)
            D[start:start + chunk] = direct
        return D


def barrier_distance(x, y, env):
    """
    length of the shortest path from x to y that does not cross a barrier

    Raises UnreachableError if x and y are separated by closed barriers.
    """
    env.check_inside(np.array([x, y], dtype=float))
    if np.array_equal(np.asarray(x, dtype=float), np.asarray(y, dtype=float)):
        return 0.0
    d = env.graph().distances([x], [y])[0, 0]
    if not np.isfinite(d):
        raise UnreachableError("no path avoiding the barriers connects %s and %s" % (list(x), list(y)))
    return d


def _border_costs(xs, yf, t, border_x, s):
    # s*|xs - z| + |z - yf| for border points z = (border_x, t)
    return (s * np.hypot(xs[:, 0, None] - border_x, xs[:, 1, None] - t)
            + np.hypot(yf[:, 0, None] - border_x, yf[:, 1, None] - t))


def crossing_costs(xs, yf, env, samples=Constants.border_samples, tol=Constants.golden_tolerance):
    """
    minimal travel cost from points in the slow region to points in the fast
    region, minimized over the border crossing point

    The border inside the bounding box is sampled at `samples` uniform points,
    then the best sample of every pair is refined by a golden-section search
    inside its two neighbouring sampling intervals. The search runs
    simultaneously for all pairs.

    Parameters:
    ===========
    xs: array (p,2) with points of the slow region
    yf: array (p,2) with points of the fast region, paired with xs

    Returns:
    ========
    array (p,) with the minimal costs
    """
    xs = np.atleast_2d(xs)
    yf = np.atleast_2d(yf)
    s, b = env.slow_factor, env.border_x
    ymin, ymax = env.bbox[1], env.bbox[3]
    t = np.linspace(ymin, ymax, samples)
    best = np.empty(len(xs))
    best_t = np.empty(len(xs))
    for start in range(0, len(xs), 256):
        sl = slice(start, start + 256)
        costs = _border_costs(xs[sl], yf[sl], t, b, s)
        i = np.argmin(costs, axis=1)
        best[sl] = costs[np.arange(len(i)), i]
        best_t[sl] = t[i]
    h = (ymax - ymin) / (samples - 1)
    lo = np.maximum(best_t - h, ymin)
    hi = np.minimum(best_t + h, ymax)
    invphi = (np.sqrt(5.0) - 1.0) / 2.0

    def cost(tt):
        return (s * np.hypot(xs[:, 0] - b, xs[:, 1] - tt) + np.hypot(yf[:, 0] - b, yf[:, 1] - tt))

    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = cost(c), cost(d)
    while np.max(hi - lo) > tol:
        left = fc < fd
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
        d_new = np.where(left, c, lo + invphi * (hi - lo))
        c_new = np.where(left, hi - invphi * (hi - lo), d)
        fd_new = np.where(left, fc, np.nan)
        fc_new = np.where(left, np.nan, fd)
        c, d = c_new, d_new
        fc = np.where(left, cost(c), fc_new)
        fd = np.where(left, fd_new, cost(d))
    refined = cost(0.5 * (lo + hi))
    return np.minimum(best, refined)


def region_distances(P, Q, env):
    """
    travel costs between all points in P and all points in Q for an
    environment with a slow and a fast region

    Returns:
    ========
    array of shape (len(P), len(Q))
    """
    if env.border_x is None:
        raise InputError("environment has no region border")
    P = np.atleast_2d(np.asarray(P, dtype=float))
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    env.check_inside(P)
    env.check_inside(Q)
    s = env.slow_factor
    D = np.sqrt(np.sum((P[:, None, :] - Q[None, :, :])**2, axis=-1))
    slowP = env.is_slow(P)
    slowQ = env.is_slow(Q)
    D[np.outer(slowP, slowQ)] *= s
    i, j = np.nonzero(slowP[:, None] != slowQ[None, :])
    if len(i) > 0:
        swap = ~slowP[i]
        xs = np.where(swap[:, None], Q[j], P[i])
        yf = np.where(swap[:, None], P[i], Q[j])
        D[i, j] = crossing_costs(xs, yf, env)
    return D


def region_distance(x, y, env):
    """travel cost between two points of an environment with regions"""
    return region_distances([x], [y], env)[0, 0]

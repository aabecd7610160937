"""
default parameters and sentinel values shared by all modules
"""
from __future__ import division

# label of a data index that belongs to no cluster
UNASSIGNED = -1
# label of a grid cell that cannot be reached from any data point
UNREACHABLE = -2

# removal threshold for small clusters, fraction of |X|
epsilon = 0.01
max_sweeps = 200
restarts = 10
# number of initial clusters for spherical Wards
n_init_clusters = 10

# ss(Y) is floored at ss_floor_rel * D(X,X)/|X|^2
ss_floor_rel = 1.0e-12
# a move is applied only if delta < -move_tolerance*(1+|E|)
move_tolerance = 1.0e-12

# averaging range K~ of the MLE dimension estimator
k_min = 5
k_max = 12

# two-region metric: uniform samples along the border, then golden-section
# refinement of the best sample
border_samples = 512
golden_tolerance = 1.0e-9

# random walk
walk_retries = 100
walk_step_fraction = 0.05

# default mouse geometry (head disc and two ear discs)
mouse_head_center = (0.0, 0.0)
mouse_head_radius = 1.0
mouse_ear_centers = ((-0.9, 0.9), (0.9, 0.9))
mouse_ear_radius = 0.35
# opening left between the two ends of a barrier and the ear disc
mouse_barrier_gap = 0.2

# significant digits used for every floating point number written to a file
float_format = "%.17g"

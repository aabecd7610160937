#!/usr/bin/env python
"""
command line interface of the spherical Wards clustering toolkit

  swards cluster  data.csv --measure euclidean --dim auto --out-labels labels.csv
  swards dim      data.csv
  swards voronoi  data.csv labels.csv --bbox -2 -2 2 2 --format pgm --out grid.pgm
  swards rand     labels_a.csv labels_b.csv
  swards gen      mouse --out mouse.csv --out-env mouse.json
  swards profile  data.csv --ks 1 2 3 4 5 --dim 2
  swards nsweep   data.csv --dims 0.5 1 1.5 2 4
  swards compare  data.csv --dim auto

Exit codes: 0 success, 1 degenerate data or other runtime failure,
2 invalid input or conflicting options.
"""
from __future__ import print_function
from __future__ import division

import argparse
import logging
import sys
import time

import numpy as np

from SWARDS import Constants, Formats, datagen, __version__
from SWARDS.Analyse import compare_with_wards, dimension_sweep, energy_profile, table2txt
from SWARDS.clusterstate import SWARDS, WARDS, CriterionParams, Partition
from SWARDS.dimension import DimEstimatorConfig, dimension_by_k, mle_dimension
from SWARDS.dissimilarity import build_matrix, get_measure
from SWARDS.errors import InputError, DegenerateDataError, UnreachableError
from SWARDS.metrics import rand_index
from SWARDS.solver import ClusteringConfig, cluster
from SWARDS.utils import call_with_opts_from_dict
from SWARDS.voronoi import rasterize

logger = logging.getLogger("SWARDS")

MEASURES = ["euclidean", "rbf", "barrier", "region"]
PRESETS = ["mixture-scale", "mixture-unbalanced", "mouse", "walk",
           "barrier-populations", "region-populations", "segment", "square"]


def _add_data_options(parser):
    parser.add_argument("points", nargs="?", default=None,
                        help="CSV file with one point per row, a column 'label' holds the true classes")
    parser.add_argument("--matrix", dest="matrix_file", default=None,
                        help="file with a precomputed matrix of squared dissimilarities (CSV or binary) "
                             "instead of points")
    parser.add_argument("--measure", default="euclidean", choices=MEASURES,
                        help="dissimilarity measure between points [default: %(default)s]")
    parser.add_argument("--env", dest="env_file", default=None,
                        help="environment JSON required by the barrier and region measures")
    parser.add_argument("--sigma2", type=float, default=None,
                        help="width of the RBF kernel, median of the squared distances if not given")


def _add_dim_options(parser):
    parser.add_argument("--kmin", dest="k_min", type=int, default=Constants.k_min,
                        help="smallest neighbour count of the dimension estimate [default: %(default)s]")
    parser.add_argument("--kmax", dest="k_max", type=int, default=Constants.k_max,
                        help="largest neighbour count of the dimension estimate [default: %(default)s]")
    parser.add_argument("--zero-policy", dest="zero_distance_policy", default="skip", choices=["skip", "error"],
                        help="treatment of duplicate points in the dimension estimate [default: %(default)s]")


def _add_cluster_options(parser, criterion=True):
    if criterion:
        parser.add_argument("--criterion", default=SWARDS, choices=[SWARDS, WARDS],
                            help="criterion to minimize [default: %(default)s]")
        parser.add_argument("--k", type=int, default=None,
                            help="number of clusters, only for the Wards criterion")
    parser.add_argument("--dim", default="auto",
                        help="dimension parameter N of the spherical criterion, a number or 'auto' for the "
                             "maximum likelihood estimate [default: %(default)s]")
    parser.add_argument("--n-init", dest="n_init_clusters", type=int, default=Constants.n_init_clusters,
                        help="number of initial clusters [default: %(default)s]")
    parser.add_argument("--epsilon", type=float, default=Constants.epsilon,
                        help="clusters with fewer than epsilon*|X| points are removed [default: %(default)s]")
    parser.add_argument("--restarts", type=int, default=Constants.restarts,
                        help="number of runs from random initial partitions [default: %(default)s]")
    parser.add_argument("--max-sweeps", dest="max_sweeps", type=int, default=Constants.max_sweeps,
                        help="maximal number of sweeps of a run [default: %(default)s]")
    parser.add_argument("--ss-floor", dest="ss_floor_rel", type=float, default=Constants.ss_floor_rel,
                        help="relative floor of the within-cluster sum of squares [default: %(default)s]")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed of the random initial partitions [default: %(default)s]")
    _add_dim_options(parser)


def build_parser():
    parser = argparse.ArgumentParser(prog="swards",
                                     description="spherical Wards clustering with arbitrary dissimilarity measures")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="print debug messages")
    parser.add_argument("-q", "--quiet", action="store_true", help="print only warnings and errors")
    parser.add_argument("--threads", dest="n_jobs", type=int, default=1,
                        help="number of worker processes for the restarts [default: %(default)s]")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("cluster", help="partition a data set")
    _add_data_options(p)
    _add_cluster_options(p)
    p.add_argument("--out-labels", dest="out_labels", default="labels.csv",
                   help="labels CSV written [default: %(default)s]")
    p.add_argument("--out-report", dest="out_report", default="report.json",
                   help="run report written [default: %(default)s]")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("dim", help="estimate the intrinsic dimension")
    _add_data_options(p)
    _add_dim_options(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("voronoi", help="rasterize the generalized Voronoi diagram of a partition")
    _add_data_options(p)
    p.add_argument("labels", help="labels CSV of the partition")
    p.add_argument("--criterion", default=SWARDS, choices=[SWARDS, WARDS],
                   help="assignment rule [default: %(default)s]")
    p.add_argument("--dim", default="auto", help="dimension parameter N or 'auto' [default: %(default)s]")
    _add_dim_options(p)
    p.add_argument("--bbox", type=float, nargs=4, default=None, metavar=("XMIN", "YMIN", "XMAX", "YMAX"),
                   help="rectangle covered by the grid, defaults to the environment or the data range")
    p.add_argument("--width", type=int, default=200, help="cells per row [default: %(default)s]")
    p.add_argument("--height", type=int, default=200, help="number of rows [default: %(default)s]")
    p.add_argument("--format", default="csv", choices=["csv", "pgm"], help="grid format [default: %(default)s]")
    p.add_argument("--out", default=None, help="grid file, defaults to voronoi.csv or voronoi.pgm")
    p.set_defaults(func=cmd_voronoi)

    p = sub.add_parser("rand", help="Rand index of two partitions")
    p.add_argument("labels_a")
    p.add_argument("labels_b")
    p.set_defaults(func=cmd_rand)

    p = sub.add_parser("gen", help="generate a synthetic data set")
    p.add_argument("preset", choices=PRESETS)
    p.add_argument("--n", type=int, default=800, help="number of points [default: %(default)s]")
    p.add_argument("--r", type=float, default=0.5, help="variance of the first component of mixture-scale "
                                                        "[default: %(default)s]")
    p.add_argument("--omega", type=float, default=0.5, help="weight of the first component of mixture-unbalanced "
                                                            "[default: %(default)s]")
    p.add_argument("--n-head", dest="n_head", type=int, default=800, help="[default: %(default)s]")
    p.add_argument("--n-ear", dest="n_ear", type=int, default=200, help="[default: %(default)s]")
    p.add_argument("--t", type=int, default=100, help="time steps of the random walks [default: %(default)s]")
    p.add_argument("--step", type=float, default=None, help="step length of the random walks")
    p.add_argument("--seed-point", dest="seed_point", type=float, nargs=2, default=[0.0, 0.0],
                   help="start of the walk preset [default: %(default)s]")
    p.add_argument("--env", dest="env_file", default=None, help="environment JSON for the walk preset")
    p.add_argument("--seed", type=int, default=0, help="[default: %(default)s]")
    p.add_argument("--out", default="points.csv", help="points CSV written [default: %(default)s]")
    p.add_argument("--out-env", dest="out_env", default=None, help="environment JSON written")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("profile", help="both criteria on Wards k-means partitions for several k")
    _add_data_options(p)
    p.add_argument("--ks", type=int, nargs="+", default=list(range(1, 11)), help="[default: 1..10]")
    _add_cluster_options(p, criterion=False)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("nsweep", help="spherical Wards clustering for several N")
    _add_data_options(p)
    p.add_argument("--dims", type=float, nargs="+", required=True, help="values of N")
    _add_cluster_options(p, criterion=False)
    p.set_defaults(func=cmd_nsweep)

    p = sub.add_parser("compare", help="spherical Wards against Wards k-means")
    _add_data_options(p)
    _add_cluster_options(p, criterion=False)
    p.set_defaults(func=cmd_compare)
    return parser


def load_data(args):
    """
    Returns:
    ========
    matrix, points (None for a precomputed matrix), true labels (or None), measure (or None)
    """
    if args.points is not None and args.matrix_file is not None:
        raise InputError("give either a points file or --matrix, not both")
    if args.points is None and args.matrix_file is None:
        raise InputError("no data, give a points file or --matrix")
    if args.matrix_file is not None:
        return Formats.read_matrix(args.matrix_file), None, None, None
    points, truth = Formats.read_points(args.points)
    env = Formats.read_environment(args.env_file) if args.env_file is not None else None
    measure = get_measure(args.measure, points=points, env=env, sigma2=args.sigma2)
    return build_matrix(points, measure), points, truth, measure


def dimension_parameter(args, matrix):
    """N from --dim, estimated if 'auto'"""
    if args.dim == "auto":
        config = call_with_opts_from_dict(DimEstimatorConfig)(**vars(args))
        return mle_dimension(matrix, config)
    try:
        return float(args.dim)
    except ValueError:
        raise InputError("--dim has to be a positive number or 'auto', got '%s'" % args.dim)


def clustering_config(args, matrix, criterion=SWARDS):
    opts = vars(args)
    if criterion == WARDS:
        if args.k is None:
            raise InputError("the Wards criterion needs --k")
        opts = dict(opts, criterion=WARDS)
        return call_with_opts_from_dict(ClusteringConfig)(**opts), None
    if getattr(args, "k", None) is not None:
        raise InputError("--k is only used by the Wards criterion")
    N = dimension_parameter(args, matrix)
    params = CriterionParams(N, ss_floor_rel=args.ss_floor_rel)
    opts = dict(opts, criterion=SWARDS, params=params, k=None)
    return call_with_opts_from_dict(ClusteringConfig)(**opts), N


def cmd_cluster(args):
    t0 = time.time()
    matrix, points, truth, measure = load_data(args)
    config, N = clustering_config(args, matrix, criterion=args.criterion)
    res = cluster(matrix, config)
    Formats.write_labels(args.out_labels, res.labels)
    report = Formats.RunReport(config=config.as_dict(),
                               energy=res.energy,
                               n_clusters=res.n_clusters,
                               cluster_sizes=res.cluster_sizes(),
                               dimension_N=N,
                               restarts_used=config.restarts,
                               best_restart=res.restart_index,
                               sweeps=res.restart_sweeps,
                               wall_time_ms=1000.0 * (time.time() - t0),
                               seed=config.seed)
    if measure is not None:
        report.measure = measure.as_dict()
    if truth is not None:
        report.rand_index = rand_index(res.labels, truth)
    Formats.write_report(args.out_report, report)
    print("clusters: %d" % res.n_clusters)
    print("energy: %s" % (Constants.float_format % res.energy))
    if N is not None:
        print("N: %s" % (Constants.float_format % N))
    return 0


def cmd_dim(args):
    matrix, points, truth, measure = load_data(args)
    config = call_with_opts_from_dict(DimEstimatorConfig)(**vars(args))
    table = dimension_by_k(matrix, config)
    N = float(np.mean([Nk for k, Nk in table]))
    print("N: %s" % (Constants.float_format % N))
    print(table2txt(["k", "N_k"], table), end="")
    return 0


def cmd_voronoi(args):
    if args.points is None:
        raise InputError("the Voronoi diagram needs the data points")
    matrix, points, truth, measure = load_data(args)
    labels = Formats.read_labels(args.labels)
    if len(labels) != len(points):
        raise InputError("%d labels for %d points" % (len(labels), len(points)))
    partition = Partition(labels)
    N = dimension_parameter(args, matrix) if args.criterion == SWARDS else None
    if args.bbox is not None:
        bbox = args.bbox
    elif hasattr(measure, "env"):
        bbox = measure.env.bbox
    else:
        lo, hi = points[:, :2].min(axis=0), points[:, :2].max(axis=0)
        pad = 0.05 * np.maximum(hi - lo, 1.0e-9)
        bbox = np.concatenate([lo - pad, hi + pad])
    grid = rasterize(partition, measure, points, bbox, args.width, args.height, args.criterion,
                     N=N, matrix=matrix)
    out = args.out if args.out is not None else "voronoi.%s" % args.format
    if args.format == "pgm":
        Formats.write_grid_pgm(out, grid)
    else:
        Formats.write_grid_csv(out, grid)
    logger.info("wrote %dx%d grid to %s", args.width, args.height, out)
    return 0


def cmd_rand(args):
    a = Formats.read_labels(args.labels_a)
    b = Formats.read_labels(args.labels_b)
    print(Constants.float_format % rand_index(a, b))
    return 0


def cmd_gen(args):
    env = None
    if args.preset == "mixture-scale":
        points, labels = datagen.sample_mixture(datagen.mixture_scale(args.r, n=args.n, seed=args.seed))
    elif args.preset == "mixture-unbalanced":
        points, labels = datagen.sample_mixture(datagen.mixture_unbalanced(args.omega, n=args.n, seed=args.seed))
    elif args.preset == "mouse":
        points, labels, env = datagen.mouse_dataset(args.n_head, args.n_ear, seed=args.seed)
    elif args.preset == "walk":
        env = Formats.read_environment(args.env_file) if args.env_file is not None else None
        spec = datagen.WalkSpec(args.seed_point, args.n, args.t, step=args.step, env=env, seed=args.seed)
        points = datagen.random_walk(spec)
        labels = np.zeros(len(points), dtype=int)
    elif args.preset == "barrier-populations":
        points, labels, env = datagen.barrier_scenario(seed=args.seed)
    elif args.preset == "region-populations":
        points, labels, env = datagen.region_scenario(seed=args.seed)
    elif args.preset == "segment":
        points = datagen.uniform_segment(args.n, seed=args.seed)
        labels = None
    else:
        points = datagen.uniform_square(args.n, seed=args.seed)
        labels = None
    Formats.write_points(args.out, points, labels)
    if args.out_env is not None:
        if env is None:
            raise InputError("preset '%s' has no environment" % args.preset)
        Formats.write_environment(args.out_env, env)
    logger.info("wrote %d points to %s", len(points), args.out)
    return 0


def cmd_profile(args):
    matrix, points, truth, measure = load_data(args)
    N = dimension_parameter(args, matrix)
    table = energy_profile(matrix, args.ks, CriterionParams(N, ss_floor_rel=args.ss_floor_rel),
                           restarts=args.restarts, seed=args.seed)
    print(table2txt(["k", "wards", "swards"], table), end="")
    return 0


def cmd_nsweep(args):
    matrix, points, truth, measure = load_data(args)
    args.dim = args.dims[0]
    config, N = clustering_config(args, matrix)
    table = dimension_sweep(matrix, args.dims, config, truth=truth)
    print(table2txt(["N", "n_clusters", "energy", "rand"], table), end="")
    return 0


def cmd_compare(args):
    matrix, points, truth, measure = load_data(args)
    config, N = clustering_config(args, matrix)
    comparison = compare_with_wards(matrix, config, truth=truth)
    rows = []
    for name in ("swards", "wards"):
        res = comparison[name]
        rows.append((name, res.n_clusters, res.energy, comparison.get("rand_%s" % name)))
    print("N: %s" % (Constants.float_format % N))
    txt = "criterion,n_clusters,energy,rand\n"
    for name, k, E, rand in rows:
        txt += "%s,%d,%s,%s\n" % (name, k, Constants.float_format % E,
                                  "" if rand is None else Constants.float_format % rand)
    print(txt, end="")
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, IOError) as e:
        print("swards %s: %s" % (args.command, e), file=sys.stderr)
        return 2
    except (DegenerateDataError, UnreachableError, RuntimeError) as e:
        print("swards %s: %s" % (args.command, e), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

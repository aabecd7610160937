"""
reading and writing the files of the clustering toolkit

  points CSV       one point per row, optional header, a column named 'label'
                   holds ground truth classes
  labels CSV       rows 'index,label'
  matrix           CSV with n rows of n squared dissimilarities, or binary:
                   n as 8 byte little endian unsigned integer followed by
                   n*n little endian float64 in row major order
  environment JSON {"bbox": [...], "barriers": [[x1,y1,x2,y2],...],
                    "border_x": ..., "slow_factor": ...}
  grids            CSV of integer labels or ASCII PGM (P2)
  report JSON      RunReport

All floats are written with 17 significant digits.
"""
from __future__ import division

import json
import os.path

import numpy as np

from SWARDS import Constants
from SWARDS.dissimilarity import DissimilarityMatrix
from SWARDS.environment import Environment
from SWARDS.errors import InputError
from SWARDS.utils import dotdic


def _split(line):
    return [w.strip() for w in line.replace(";", ",").split(",")] if "," in line or ";" in line \
        else line.split()


def _is_number(word):
    try:
        float(word)
        return True
    except ValueError:
        return False


def read_points(filename):
    """
    read data points from a CSV file

    Parameters:
    ===========
    filename: path to the CSV file

    Returns:
    ========
    points: array (n,dim)
    labels: integer array with the 'label' column or None
    """
    fh = open(filename)
    rows = [_split(line) for line in fh if line.strip() != "" and not line.startswith("#")]
    fh.close()
    if len(rows) == 0:
        raise InputError("no points in '%s'" % filename)
    label_col = None
    if not all(_is_number(w) for w in rows[0]):
        header = [w.lower() for w in rows[0]]
        rows = rows[1:]
        if "label" in header:
            label_col = header.index("label")
    if len(rows) == 0:
        raise InputError("no points in '%s'" % filename)
    ncol = len(rows[0])
    data = np.empty((len(rows), ncol))
    for i, words in enumerate(rows):
        if len(words) != ncol:
            raise InputError("row %d of '%s' has %d columns, expected %d" % (i, filename, len(words), ncol))
        try:
            data[i] = list(map(float, words))
        except ValueError:
            raise InputError("row %d of '%s' contains a value that is not a number: %s" % (i, filename, words))
    if not np.all(np.isfinite(data)):
        raise InputError("'%s' contains values that are not finite" % filename)
    if label_col is None:
        return data, None
    labels = data[:, label_col].astype(int)
    return np.delete(data, label_col, axis=1), labels


def points2txt(points, labels=None):
    points = np.atleast_2d(points)
    dim = points.shape[1]
    names = ["x", "y", "z"] if dim <= 3 else ["x%d" % i for i in range(dim)]
    header = names[:dim] + (["label"] if labels is not None else [])
    txt = ",".join(header) + "\n"
    for i, p in enumerate(points):
        row = [Constants.float_format % c for c in p]
        if labels is not None:
            row.append("%d" % labels[i])
        txt += ",".join(row) + "\n"
    return txt


def write_points(filename, points, labels=None):
    fh = open(filename, "w")
    fh.write(points2txt(points, labels))
    fh.close()


def read_labels(filename):
    """
    read cluster labels from rows 'index,label' (an optional header is skipped)

    Returns:
    ========
    integer array, labels[index]
    """
    fh = open(filename)
    rows = [_split(line) for line in fh if line.strip() != "" and not line.startswith("#")]
    fh.close()
    if len(rows) > 0 and not all(_is_number(w) for w in rows[0]):
        rows = rows[1:]
    if len(rows) == 0:
        raise InputError("no labels in '%s'" % filename)
    try:
        pairs = np.array([[int(w) for w in words[:2]] for words in rows])
    except ValueError:
        raise InputError("labels in '%s' have to be integers" % filename)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise InputError("rows of '%s' have to be 'index,label'" % filename)
    order = np.argsort(pairs[:, 0])
    if not np.array_equal(pairs[order, 0], np.arange(len(pairs))):
        raise InputError("indices in '%s' have to be 0..%d" % (filename, len(pairs) - 1))
    return pairs[order, 1]


def write_labels(filename, labels):
    txt = "index,label\n"
    for i, l in enumerate(labels):
        txt += "%d,%d\n" % (i, l)
    fh = open(filename, "w")
    fh.write(txt)
    fh.close()


def _is_binary_matrix(filename):
    size = os.path.getsize(filename)
    if size < 8:
        return False
    with open(filename, "rb") as fh:
        n = int(np.frombuffer(fh.read(8), dtype="<u8")[0])
    return size == 8 + 8 * n * n


def read_matrix(filename, check=True):
    """
    read a matrix of squared dissimilarities, the format (CSV or binary) is
    detected from the file size

    Returns:
    ========
    DissimilarityMatrix, validated unless check=False
    """
    if _is_binary_matrix(filename):
        with open(filename, "rb") as fh:
            n = int(np.frombuffer(fh.read(8), dtype="<u8")[0])
            entries = np.frombuffer(fh.read(), dtype="<f8").reshape(n, n)
    else:
        fh = open(filename)
        rows = [_split(line) for line in fh if line.strip() != "" and not line.startswith("#")]
        fh.close()
        try:
            entries = np.array([list(map(float, words)) for words in rows])
        except ValueError:
            raise InputError("'%s' is neither a binary nor a CSV matrix of numbers" % filename)
    return DissimilarityMatrix(entries, check=check)


def write_matrix(filename, matrix, binary=False):
    entries = matrix.entries if isinstance(matrix, DissimilarityMatrix) else np.asarray(matrix, dtype=float)
    if binary:
        with open(filename, "wb") as fh:
            fh.write(np.array([len(entries)], dtype="<u8").tobytes())
            fh.write(np.ascontiguousarray(entries, dtype="<f8").tobytes())
    else:
        np.savetxt(filename, entries, fmt=Constants.float_format, delimiter=",")


def read_environment(filename):
    fh = open(filename)
    try:
        dic = json.load(fh)
    except ValueError as e:
        raise InputError("environment file '%s' is not valid JSON: %s" % (filename, e))
    finally:
        fh.close()
    return Environment.from_dict(dic)


def write_environment(filename, env):
    fh = open(filename, "w")
    json.dump(env.as_dict(), fh, indent=2)
    fh.close()


def write_grid_csv(filename, grid):
    """height rows of width labels, the first row is the bottom of the bounding box"""
    np.savetxt(filename, grid.labels, fmt="%d", delimiter=",")


def grid2pgm(grid):
    """
    ASCII PGM image of the grid, cluster ids spread evenly over 0..254,
    unreachable cells 255. The image is written top row first.
    """
    k = grid.n_labels()
    scale = 254.0 / max(k - 1, 1)
    values = np.where(grid.labels == Constants.UNREACHABLE, 255,
                      np.rint(grid.labels * scale)).astype(int)
    txt = "P2\n%d %d\n255\n" % (grid.width, grid.height)
    for row in values[::-1]:
        txt += " ".join("%d" % v for v in row) + "\n"
    return txt


def write_grid_pgm(filename, grid):
    fh = open(filename, "w")
    fh.write(grid2pgm(grid))
    fh.close()


class RunReport(dotdic):
    """
    record of a command line run, written as JSON

    Fields: config, energy, n_clusters, cluster_sizes, dimension_N,
    restarts_used, sweeps, wall_time_ms, seed
    """
    def to_json(self):
        return json.dumps(self, indent=2, sort_keys=True, default=_to_builtin)

    @classmethod
    def from_json(cls, txt):
        return cls(json.loads(txt))


def _to_builtin(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError("%s is not serializable" % type(obj))


def write_report(filename, report):
    fh = open(filename, "w")
    fh.write(report.to_json())
    fh.close()


def read_report(filename):
    fh = open(filename)
    txt = fh.read()
    fh.close()
    return RunReport.from_json(txt)

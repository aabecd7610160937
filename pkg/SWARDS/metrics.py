"""
agreement between two partitions of the same data set
"""
from __future__ import division

import numpy as np
import scipy.sparse as sp
from scipy.special import comb

from SWARDS.errors import InputError


def contingency_table(a, b):
    """
    sparse table C with C[i,j] = number of points in class i of a and class j of b

    Class ids are arbitrary hashable labels, they are mapped to 0,1,... in
    sorted order.
    """
    classes_a, idx_a = np.unique(a, return_inverse=True)
    classes_b, idx_b = np.unique(b, return_inverse=True)
    # coo_matrix sums duplicate entries, i.e. it acts as a 2d histogram
    table = sp.coo_matrix((np.ones(len(idx_a), dtype=np.int64), (idx_a, idx_b)),
                          shape=(len(classes_a), len(classes_b)), dtype=np.int64).tocsr()
    table.sum_duplicates()
    return table


def rand_index(a, b):
    """
    fraction of the pairs of points on which the partitions a and b agree,
    i.e. that are in the same class in both or in different classes in both

    Parameters:
    ===========
    a, b: arrays of class labels, one per data point

    Returns:
    ========
    float in [0,1]
    """
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    if len(a) != len(b):
        raise InputError("partitions of different length: %d and %d" % (len(a), len(b)))
    n = len(a)
    if n < 2:
        raise InputError("the Rand index needs at least 2 points, got %d" % n)
    table = contingency_table(a, b)
    same_both = int(np.sum(comb(table.data, 2, exact=False).round().astype(np.int64)))
    same_a = int(np.sum(comb(np.ravel(table.sum(axis=1)), 2).round().astype(np.int64)))
    same_b = int(np.sum(comb(np.ravel(table.sum(axis=0)), 2).round().astype(np.int64)))
    pairs = n * (n - 1) // 2
    # pairs separated in both = pairs - same_a - same_b + same_both
    agree = pairs + 2 * same_both - same_a - same_b
    return agree / pairs


def rand_index_bruteforce(a, b):
    """O(n^2) enumeration of all pairs"""
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    if len(a) != len(b):
        raise InputError("partitions of different length: %d and %d" % (len(a), len(b)))
    n = len(a)
    if n < 2:
        raise InputError("the Rand index needs at least 2 points, got %d" % n)
    iu = np.triu_indices(n, k=1)
    same_a = (a[:, None] == a[None, :])[iu]
    same_b = (b[:, None] == b[None, :])[iu]
    return np.count_nonzero(same_a == same_b) / len(same_a)

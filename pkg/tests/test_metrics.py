# -*- coding: utf-8 -*-
import numpy as np
import pytest
from numpy.testing import assert_array_equal

from SWARDS.errors import InputError
from SWARDS.metrics import contingency_table, rand_index, rand_index_bruteforce


def test_examples():
    assert rand_index([1, 1, 2], [1, 1, 2]) == 1.0
    assert rand_index([1, 1, 2], [1, 2, 2]) == pytest.approx(1.0 / 3.0)
    assert rand_index([0, 0], [0, 1]) == 0.0


def test_label_names_do_not_matter():
    assert rand_index([5, 5, 9, 9], [0, 0, 1, 1]) == 1.0
    assert rand_index(["a", "b", "b"], [3, 1, 1]) == 1.0


def test_contingency_table():
    table = contingency_table([0, 0, 1, 1, 1], [2, 1, 1, 1, 0])
    assert_array_equal(table.toarray(), [[0, 1, 1], [1, 2, 0]])


def test_matches_bruteforce(rng):
    for i in range(20):
        n = rng.integers(2, 200)
        a = rng.integers(0, rng.integers(1, 8), size=n)
        b = rng.integers(0, rng.integers(1, 8), size=n)
        assert rand_index(a, b) == pytest.approx(rand_index_bruteforce(a, b), abs=1e-15)
        assert rand_index(a, b) == rand_index(b, a)


def test_errors():
    with pytest.raises(InputError):
        rand_index([0, 1], [0, 1, 2])
    with pytest.raises(InputError):
        rand_index([0], [0])
    with pytest.raises(InputError):
        rand_index_bruteforce([0, 1], [0])


def test_large_input_exact():
    labels = np.arange(100000) % 7
    assert rand_index(labels, labels) == 1.0
    assert 0.0 <= rand_index(labels, np.arange(100000) % 3) <= 1.0

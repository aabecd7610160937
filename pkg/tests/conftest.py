# -*- coding: utf-8 -*-
import numpy as np
import pytest

from SWARDS.dissimilarity import Euclidean, build_matrix


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the long experiments marked as slow")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long experiment on synthetic or real data")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def line_matrix():
    """squared Euclidean distances of the points 0, 3 and 10 on a line"""
    return build_matrix(np.array([[0.0], [3.0], [10.0]]), Euclidean())


@pytest.fixture
def blobs():
    """three well separated Gaussian blobs in the plane, 100 points each"""
    r = np.random.default_rng(7)
    centers = np.array([[0.0, 0.0], [20.0, 0.0], [0.0, 20.0]])
    points = np.vstack([c + r.standard_normal((100, 2)) for c in centers])
    labels = np.repeat(np.arange(3), 100)
    return points, labels

# -*- coding: utf-8 -*-

from SWARDS import Formats, Analyse, clusterstate, dimension, dissimilarity, environment, metrics, solver, voronoi
from SWARDS import __version__


def test_version():
    assert __version__ == "0.1.0"

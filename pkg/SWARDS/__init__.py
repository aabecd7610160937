"""
Spherical Wards clustering

This module partitions data sets given by an arbitrary dissimilarity measure
with the spherical Wards criterion, which determines the number of clusters
by itself. The Wards (k-means) criterion is available as a baseline.
"""
__version_info__ = (0,1,0)
__version__ = '.'.join(list(map(str, __version_info__)))

__author__ = ''

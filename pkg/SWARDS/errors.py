"""
exceptions raised by the clustering toolkit

The hierarchy is rooted in the builtin exceptions, so callers that only
know about ValueError/RuntimeError keep working.
"""


class InputError(ValueError):
    """a precondition on the arguments is violated"""


class DegenerateDataError(RuntimeError):
    """the data do not allow the requested computation (e.g. all points equal)"""


class DegenerateClusterError(DegenerateDataError):
    """a cluster with vanishing within-cluster sum of squares enters a logarithm"""


class UnreachableError(RuntimeError):
    """no path avoiding the barriers connects two points"""

"""
odd bits and pieces of code
"""
from __future__ import division

import inspect
import multiprocessing
import os


class dotdic(dict):
    """
    overload dictionary to allow accessing data by .-notation
    e.g.
    >> d = dotdic()
    >> d["bla"] = 1
    >> print( d.bla )
    """
    def __getattr__(self, name):
        try:
            return self[name]
        except KeyError:
            raise AttributeError(name)

    def __setattr__(self, name, value):
        self[name] = value


def forward_difference(f, x0, h=1.0e-6):
    """
    derivative of a scalar function f of one variable at x0 by the forward
    difference quotient (f(x0 + h) - f(x0))/h

    Weights cannot become negative, so the symmetric quotient is not an option
    at x0 = 0.
    """
    return (f(x0 + h) - f(x0)) / h


def cpu_count():
    """
    find the number of CPU's available. If the environment variable OMP_NUM_THREADS is set, this
    number is used otherwise the total number of CPU's are used.
    """
    return int(os.environ.get("OMP_NUM_THREADS", multiprocessing.cpu_count()))


def call_with_opts_from_dict(func):
    """
    call function func with its keywords replaced by values in dictionary.
    Avoids raising an error if dictionary contains keys that are not keywords
    in func.
    """
    params = inspect.signature(func).parameters
    optnames = [name for name, p in params.items() if p.default is not inspect.Parameter.empty]

    def _f(*args, **opts):
        actualopts = {name: opts[name] for name in optnames if name in opts}
        return func(*args, **actualopts)

    _f.__name__ = func.__name__
    return _f

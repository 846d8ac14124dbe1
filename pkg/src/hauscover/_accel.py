"""Numba switch.

Kernels are written twice: a ``@njit`` loop version and a vectorised numpy
version.  ``HAUSCOVER_DISABLE_NUMBA=1`` (or a missing numba install) selects
the numpy path at import time.
"""
import os

_FALSY = ("", "0", "false", "no", "off")

try:
    import numba
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn


def numba_requested():
    return os.environ.get("HAUSCOVER_DISABLE_NUMBA", "0").strip().lower() in _FALSY


USE_NUMBA = HAVE_NUMBA and numba_requested()


def backend_name():
    return "numba" if USE_NUMBA else "numpy"

"""Numba switch.

Hot kernels are written once as plain Python over numpy arrays and compiled
with :func:`numba.njit` unless ``MOOREPACK_NUMBA=0`` is set (or numba is not
importable), in which case the pure-Python/numpy path runs unchanged.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

ENABLED = numba is not None and os.environ.get("MOOREPACK_NUMBA", "1").lower() not in ("0", "false", "no", "off")


def njit(func):
    """Compile ``func`` when numba is enabled; the original stays reachable as ``.py_func``."""
    if ENABLED:
        return numba.njit(cache=True, nogil=True)(func)
    func.py_func = func
    return func

"""Numba dispatch.

Set ``OCTASPEC_PURE_NUMPY=1`` to force the pure-numpy kernels (also used
automatically when numba cannot be imported).
"""
import os

_FORCE_NUMPY = os.environ.get("OCTASPEC_PURE_NUMPY", "").strip().lower() in ("1", "true", "yes")

try:
    import numba as _numba
except ImportError:  # pragma: no cover
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and not _FORCE_NUMPY


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise."""
    if _numba is None:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f
    return _numba.njit(*args, **kwargs)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"

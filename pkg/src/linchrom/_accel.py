"""Numba switch for the hot kernels.

Set ``LINCHROM_DISABLE_NUMBA=1`` to run every kernel through its pure
numpy / Python path instead (useful for debugging and for the benchmark).
"""
from __future__ import annotations

import os

_FLAG = os.environ.get("LINCHROM_DISABLE_NUMBA", "").strip().lower()

try:  # pragma: no cover - numba is a declared dependency
    import numba as _numba
except ImportError:  # pragma: no cover
    _numba = None

NUMBA_ENABLED = _numba is not None and _FLAG not in ("1", "true", "yes", "on")


def njit(func):
    """``numba.njit(cache=True)`` when acceleration is on, identity otherwise."""
    if NUMBA_ENABLED:
        return _numba.njit(cache=True, nogil=True)(func)
    return func

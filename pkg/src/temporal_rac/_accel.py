"""numba switch.

Set ``TEMPORAL_RAC_DISABLE_NUMBA=1`` to run every kernel through its pure
numpy path. The flag is read once, at import time.
"""

import os

_flag = os.environ.get("TEMPORAL_RAC_DISABLE_NUMBA", "").strip().lower()
DISABLED = _flag not in ("", "0", "false", "no")

try:
    if DISABLED:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    _njit = None
    HAVE_NUMBA = False


def njit(func):
    """Compile with numba when available, otherwise return ``func`` unchanged."""
    if HAVE_NUMBA:
        return _njit(cache=True, nogil=True)(func)
    return func

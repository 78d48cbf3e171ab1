"""Backend switch for the compiled kernels.

Set ``DISPCAV_NUMBA=0`` to force the pure-numpy path. Numba is also skipped
silently when it cannot be imported.
"""

import os

_flag = os.environ.get("DISPCAV_NUMBA", "1").strip().lower()
_wanted = _flag not in ("0", "false", "no", "off")

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = _wanted and HAVE_NUMBA


def njit(func):
    """Compile ``func`` in nopython mode, or return it untouched without numba."""
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True)(func)

"""JIT switch for the numeric kernels.

Every hot loop in the package is written once, in plain Python over numpy
arrays, and decorated with :func:`njit` from this module.  When numba is
importable and ``DYNPAT_DISABLE_NUMBA`` is unset (or ``0``), the decorator
compiles the function; otherwise it returns the function untouched and the
package runs on numpy alone.
"""
import os

_flag = os.environ.get("DYNPAT_DISABLE_NUMBA", "").strip().lower()
DISABLED = _flag not in ("", "0", "false", "no")

try:
    if DISABLED:
        raise ImportError
    import numba
except ImportError:
    numba = None

BACKEND = "numpy" if numba is None else "numba"


def njit(fn=None, **options):
    """``numba.njit`` with caching on, or the identity when numba is off."""
    if fn is None:
        return lambda f: njit(f, **options)
    if numba is None:
        return fn
    options.setdefault("cache", True)
    options.setdefault("nogil", True)
    return numba.njit(**options)(fn)

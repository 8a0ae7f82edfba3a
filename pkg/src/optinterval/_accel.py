"""Optional numba acceleration.

Set ``OPTINTERVAL_DISABLE_NUMBA=1`` to run every kernel as plain Python
(sequential kernels) or vectorised numpy (matrix kernels).  The flag is
read once, at import time.
"""
import logging
import os

_flag = os.environ.get("OPTINTERVAL_DISABLE_NUMBA", "").strip().lower()
DISABLED = _flag not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    numba = None

USING_NUMBA = numba is not None and not DISABLED

if USING_NUMBA:
    logging.getLogger("numba").setLevel(logging.WARNING)


def njit(fn):
    """Compile ``fn`` with numba when enabled, otherwise return it untouched."""
    if USING_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def jitable(fn):
    """Helper callable both from compiled kernels and from plain Python."""
    if USING_NUMBA:
        from numba.extending import register_jitable

        return register_jitable(fn)
    return fn


def python_impl(fn):
    """The uncompiled function behind a (possibly) jitted kernel."""
    return getattr(fn, "py_func", fn)


def backend_name():
    return "numba" if USING_NUMBA else "numpy"

"""Optional numba acceleration.

Hot kernels are written once in a numba-compatible subset of Python and
decorated with :func:`njit`.  When numba is missing, or the environment
variable ``HYPERDELTA_DISABLE_NUMBA`` is set to a truthy value, the decorator
is a no-op and callers use the vectorised numpy implementations instead.
"""
from __future__ import annotations

import os
import warnings

_FLAG = "HYPERDELTA_DISABLE_NUMBA"


def _env_disabled() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() not in ("", "0", "false", "no")


try:
    import numba as _numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _env_disabled()

if not HAVE_NUMBA:  # pragma: no cover
    warnings.warn(
        "numba is not available; falling back to the slower numpy kernels",
        RuntimeWarning,
        stacklevel=2,
    )


def njit(*args, **kwargs):
    """``numba.njit`` when acceleration is enabled, identity otherwise."""
    if USE_NUMBA:
        kwargs.setdefault("cache", True)
        return _numba.njit(*args, **kwargs)

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def deco(func):
        return func

    return deco


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"

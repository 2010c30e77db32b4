"""Backend switch for the hot kernels.

Kernels are compiled with numba when it is importable, unless the
environment variable ``POCSRECON_DISABLE_NUMBA`` is set to a truthy value,
in which case the pure-numpy implementations are used.
"""
import os

_FALSY = ("", "0", "false", "no", "off")

try:
    import numba
except ImportError:  # pragma: no cover - numba is optional
    numba = None

HAS_NUMBA = numba is not None
USE_NUMBA = HAS_NUMBA and os.environ.get("POCSRECON_DISABLE_NUMBA", "").strip().lower() in _FALSY


def njit(func):
    """``numba.njit(cache=True)`` when numba is present, identity otherwise."""
    if not HAS_NUMBA:
        return func
    return numba.njit(cache=True)(func)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"

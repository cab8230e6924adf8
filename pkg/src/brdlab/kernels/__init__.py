"""Hot loops of the dynamics, with a numba backend and a pure-numpy fallback.

The backend is chosen once at import: numba when importable, unless the
environment variable ``BRDLAB_DISABLE_NUMBA`` is set to a truthy value.
``set_backend`` switches at runtime (used by the benchmark and the
backend-equivalence tests).
"""
import os

from . import _numpy

try:
    from . import _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

BACKENDS = {"numpy": _numpy}
if _numba is not None:
    BACKENDS["numba"] = _numba


def _default():
    flag = os.environ.get("BRDLAB_DISABLE_NUMBA", "").strip().lower()
    if flag in {"1", "true", "yes", "on"} or _numba is None:
        return _numpy
    return _numba


active = _default()


def set_backend(name):
    """Select ``"numba"`` or ``"numpy"``; returns the previous backend name."""
    global active
    if name not in BACKENDS:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {sorted(BACKENDS)}")
    previous = active.NAME
    active = BACKENDS[name]
    return previous


def backend_name():
    return active.NAME

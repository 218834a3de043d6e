"""Runtime switches read from the environment.

GRAPHCOND_BACKEND selects the frontier kernel: ``numba`` (default when numba
imports), ``numpy`` or ``python``.  GRAPHCOND_MAX_STATES caps the number of
frontier states held at once.
"""

from __future__ import annotations

import os

BACKENDS = ("numba", "numpy", "python")

DEFAULT_MAX_STATES = 4_000_000

numba_jit_options = {
    "nogil": True,
    "cache": True,
    "fastmath": False,
    "boundscheck": False,
}


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def default_backend() -> str:
    name = os.environ.get("GRAPHCOND_BACKEND", "").strip().lower()
    if name:
        if name not in BACKENDS:
            raise ValueError(f"GRAPHCOND_BACKEND must be one of {BACKENDS}, got {name!r}")
        if name == "numba" and not _numba_available():
            return "numpy"
        return name
    return "numba" if _numba_available() else "numpy"


def default_max_states() -> int:
    raw = os.environ.get("GRAPHCOND_MAX_STATES")
    return int(raw) if raw else DEFAULT_MAX_STATES

"""Backend selection for the path tracker.

The compiled kernel is used when it imports; ``SCHUBREAL_PURE_PYTHON=1``
forces the numpy implementation.
"""
from __future__ import annotations

import os

from . import _pytrack

STATUS_NAMES = {0: "ok", 1: "diverged", 2: "failed", 3: "singular", 4: "max_steps"}

_compiled = None
if not os.environ.get("SCHUBREAL_PURE_PYTHON"):
    try:
        from . import _ctrack as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKENDS = {"python": _pytrack.PathTracker}
if _compiled is not None:
    BACKENDS["cython"] = _compiled.PathTracker

DEFAULT_BACKEND = "cython" if "cython" in BACKENDS else "python"


def tracker_class(backend: str | None = None):
    name = backend or DEFAULT_BACKEND
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    return BACKENDS[name]


def resolve_backend(backend: str | None = None) -> str:
    name = backend or DEFAULT_BACKEND
    tracker_class(name)
    return name

"""Kernel selection: compiled extension when importable, numpy otherwise.

Set ``QMATBALL_PURE=1`` to force the numpy path.
"""
from __future__ import annotations

import os

from . import _fallback

BACKEND = "python"
apply_terms = _fallback.apply_terms

if os.environ.get("QMATBALL_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels
    except ImportError:  # extension not built
        pass
    else:
        apply_terms = _kernels.apply_terms
        BACKEND = "cython"


def kernels() -> dict:
    """Every available implementation, keyed by name."""
    out = {"python": _fallback.apply_terms}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        out["cython"] = _kernels.apply_terms
    return out

"""Bitmask graph kernels with a compiled fast path.

The Cython extension is preferred; the pure-Python module is a drop-in
fallback so the package works from a source tree without a compiler.  Set
GARSIDE_WB_FORCE_PY=1 to force the fallback (used by the benchmark).
"""
from __future__ import annotations

import os

if os.environ.get("GARSIDE_WB_FORCE_PY") == "1":
    from . import _purepy as _impl
else:
    try:
        from . import _cutcore as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _purepy as _impl

BACKEND = _impl.BACKEND
reach_bits = _impl.reach_bits
separates_bits = _impl.separates_bits
minimal_cut_masks = _impl.minimal_cut_masks

__all__ = ["BACKEND", "reach_bits", "separates_bits", "minimal_cut_masks"]

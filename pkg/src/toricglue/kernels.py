"""Selects the membership-search backend at import time.

The compiled kernel is used when it was built and the instance fits in
64-bit arithmetic; everything else goes through the pure-Python kernel.
Set TORICGLUE_PURE_PYTHON=1 to force the fallback.
"""
from __future__ import annotations

import os
from typing import Optional, Sequence

from . import _membership_py

try:
    if os.environ.get("TORICGLUE_PURE_PYTHON"):
        raise ImportError("pure Python forced by environment")
    from . import _membership_c
except ImportError:
    _membership_c = None

BACKEND = "cython" if _membership_c is not None else "python"


def membership_search(
    general: Sequence[Sequence[int]], axis: Sequence[int], v: Sequence[int]
) -> Optional[list[int]]:
    if _membership_c is not None and _membership_c.fits_int64(general, axis, v):
        return _membership_c.search(general, axis, v)
    return _membership_py.search(general, axis, v)

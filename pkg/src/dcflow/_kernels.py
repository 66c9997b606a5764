"""Backend selection for the stepping kernel.

Prefers the compiled extension; falls back to the numpy implementation
when the extension is absent or ``DCFLOW_PURE_PYTHON`` is set to a
non-empty value. Both backends are bit-identical (see
tests/test_kernels.py), so the choice affects speed only.
"""
from __future__ import annotations

import os

if os.environ.get("DCFLOW_PURE_PYTHON"):
    from . import _kernels_py as _backend
else:
    try:
        from . import _kernels_cy as _backend  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _backend  # type: ignore[no-redef]

advance = _backend.advance
step_once = _backend.step_once
backend_name: str = _backend.BACKEND

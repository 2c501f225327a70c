"""Select the compiled kernels when they are importable.

Set ``GAMMATYPE_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
kernels = _pykernels

if os.environ.get("GAMMATYPE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        kernels = _ckernels
        BACKEND = "cython"

ml_series = kernels.ml_series
ml_asym_algebraic = kernels.ml_asym_algebraic
wright_series = kernels.wright_series
malmsten_kernel = kernels.malmsten_kernel

__all__ = [
    "BACKEND",
    "kernels",
    "ml_series",
    "ml_asym_algebraic",
    "wright_series",
    "malmsten_kernel",
]

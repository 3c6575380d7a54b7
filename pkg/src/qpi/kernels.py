"""Kernel selection.

The compiled extension is used when it imports; otherwise the pure-Python
kernels take over.  Setting ``QPI_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

from qpi import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("QPI_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from qpi import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

mul = _impl.mul
mul_trunc = _impl.mul_trunc
mul_binom = _impl.mul_binom
div_binom = _impl.div_binom
exact_div_binom = _impl.exact_div_binom
divmod_sparse = _impl.divmod_sparse
eval_mod = _impl.eval_mod

__all__ = [
    "BACKEND",
    "mul",
    "mul_trunc",
    "mul_binom",
    "div_binom",
    "exact_div_binom",
    "divmod_sparse",
    "eval_mod",
]

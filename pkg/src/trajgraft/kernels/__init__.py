"""Sampling kernels with a compiled core and a pure-numpy fallback.

The compiled extension (Cython) is used when importable; otherwise the
numpy implementation takes over transparently. Both produce bit-identical
results. Set TRAJGRAFT_KERNELS=python|compiled to force a backend
(``compiled`` raises if the extension is missing).
"""

import os

from . import _bilinear_py as python_impl

_requested = os.environ.get("TRAJGRAFT_KERNELS", "auto").strip().lower()
if _requested not in ("auto", "python", "compiled"):
    raise ValueError(f"TRAJGRAFT_KERNELS must be auto|python|compiled, got {_requested!r}")

compiled_impl = None
if _requested in ("auto", "compiled"):
    try:
        from . import _bilinear as compiled_impl  # type: ignore[no-redef]
    except ImportError:
        if _requested == "compiled":
            raise

if compiled_impl is not None:
    BACKEND = "compiled"
    bilinear_gather = compiled_impl.bilinear_gather
    bilinear_scatter = compiled_impl.bilinear_scatter
else:
    BACKEND = "python"
    bilinear_gather = python_impl.bilinear_gather
    bilinear_scatter = python_impl.bilinear_scatter

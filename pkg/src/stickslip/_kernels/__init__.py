"""Kernel backend selection.

The compiled Cython core is preferred; the pure-numpy fallback is used
when it is missing or when STICKSLIP_PURE_PYTHON is set. Both expose the
same two functions and produce identical floating-point output.
"""

import os

if os.environ.get("STICKSLIP_PURE_PYTHON"):
    from stickslip._kernels._fallback import scan_errors, simulate
    BACKEND = "numpy"
else:
    try:
        from stickslip._kernels._core import scan_errors, simulate
        BACKEND = "cython"
    except ImportError:
        from stickslip._kernels._fallback import scan_errors, simulate
        BACKEND = "numpy"

__all__ = ["scan_errors", "simulate", "BACKEND"]

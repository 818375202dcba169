"""Kernel backend selection.

The hot inner loop (candidate evaluation + merge over a grid of meridian
lengths) lives in a compiled extension when one was built, with a
pure-Python twin as fallback.  Set STEKLOV_PURE_PYTHON=1 to force the
fallback, e.g. for benchmarking or debugging.
"""

import os

if os.environ.get("STEKLOV_PURE_PYTHON"):
    from . import _kernels_py as kernels

    HAS_COMPILED = False
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        HAS_COMPILED = True
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        HAS_COMPILED = False


def backend_name() -> str:
    return "compiled" if HAS_COMPILED else "pure-python"

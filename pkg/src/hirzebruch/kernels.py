"""Backend selection for the cyclotomic arithmetic kernels.

The compiled extension is used when it was built; otherwise the pure-Python
module is loaded.  Setting ``HIRZEBRUCH_PURE_PYTHON=1`` forces the fallback.
"""
import os

if os.environ.get("HIRZEBRUCH_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
normalize = _impl.normalize
add = _impl.add
mul = _impl.mul
dot = _impl.dot
matmul = _impl.matmul

__all__ = ["BACKEND", "normalize", "add", "mul", "dot", "matmul"]

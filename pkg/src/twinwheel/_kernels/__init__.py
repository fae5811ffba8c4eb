"""Hot-loop kernels: compiled when available, numpy otherwise.

Set ``TWINWHEEL_PURE_PYTHON=1`` to force the numpy backend.
"""
import os

from . import _pykernels as python

compiled = None
if not os.environ.get("TWINWHEEL_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled
    except ImportError:
        compiled = None

active = compiled if compiled is not None else python
BACKEND = "cython" if compiled is not None else "numpy"

sieve_odd_block = active.sieve_odd_block
# numpy's vectorised AND + count beats the compiled loop here (see benchmarks/)
count_twin_flags = python.count_twin_flags
extend_block = active.extend_block
extend_twin_block = active.extend_twin_block

__all__ = [
    "BACKEND",
    "compiled",
    "python",
    "sieve_odd_block",
    "count_twin_flags",
    "extend_block",
    "extend_twin_block",
]

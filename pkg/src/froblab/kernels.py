"""Kernel backend selection.

The compiled extension is used when it was built; set ``FROBLAB_PURE=1``
to force the pure-Python loops.
"""

import os

from . import _kernels as pure

BACKEND = "python"
_impl = pure

if not os.environ.get("FROBLAB_PURE"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = pure

decompose_terms = _impl.decompose_terms

if _impl is pure:
    mul_terms = pure.mul_terms
    reduce_terms = pure.reduce_terms
else:
    # compiled loops hold coefficient products in 64 bits
    _C_LIMIT = 2**31

    def mul_terms(a, b, p):
        if p < _C_LIMIT:
            return _impl.mul_terms(a, b, p)
        return pure.mul_terms(a, b, p)

    def reduce_terms(coef, pmap, reducers, guard, p):
        if p < _C_LIMIT:
            return _impl.reduce_terms(coef, pmap, reducers, guard, p)
        return pure.reduce_terms(coef, pmap, reducers, guard, p)

__all__ = ["BACKEND", "mul_terms", "reduce_terms", "decompose_terms", "pure"]

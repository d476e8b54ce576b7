"""Kernel selection.

The compiled module is used when it imports; otherwise the pure-Python
reference.  ``ARTINQP_KERNELS=python`` forces the reference implementation
and ``ARTINQP_KERNELS=cython`` makes a missing extension an error.
"""

import os

from . import _pykernels

_choice = os.environ.get("ARTINQP_KERNELS", "auto").strip().lower()

if _choice == "python":
    _impl = _pykernels
elif _choice in ("auto", "", "cython"):
    try:
        from . import _ckernels as _impl
    except ImportError:
        if _choice == "cython":
            raise
        _impl = _pykernels
else:
    raise ImportError(f"unknown ARTINQP_KERNELS value {_choice!r}")

BACKEND = _impl.BACKEND
mpoly_mul = _impl.mpoly_mul
mpoly_sub = _impl.mpoly_sub
mpoly_divexact = _impl.mpoly_divexact
bareiss_step = _impl.bareiss_step
rank_mod_p = _impl.rank_mod_p
eval_mod_p = _impl.eval_mod_p

__all__ = [
    "BACKEND", "mpoly_mul", "mpoly_sub", "mpoly_divexact", "bareiss_step",
    "rank_mod_p", "eval_mod_p",
]

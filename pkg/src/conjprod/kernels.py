"""Backend selection for the permutation kernels.

The compiled extension is used when it imports; set ``CONJPROD_PURE=1`` to
force the pure-Python implementation.  ``BACKEND`` names the active one.
"""
import os

from . import _pykernels

if os.environ.get("CONJPROD_PURE", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
        BACKEND = "python"

compose = _impl.compose
inverse = _impl.inverse
cycles = _impl.cycles
cycle_lengths = _impl.cycle_lengths
parity = _impl.parity
type_key = _impl.type_key
conjugate = _impl.conjugate

__all__ = ["BACKEND", "compose", "inverse", "cycles", "cycle_lengths",
           "parity", "type_key", "conjugate"]

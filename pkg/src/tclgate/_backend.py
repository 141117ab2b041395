"""Select the compiled kernels when available, else the numpy fallback.

Set ``TCLGATE_BACKEND=python`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("TCLGATE_BACKEND", "").lower() != "python":
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

filon_cos = _impl.filon_cos
triangle_sums = _impl.triangle_sums
rk4_tcl2 = _impl.rk4_tcl2

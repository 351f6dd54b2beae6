"""Kernel selection: compiled extension when built, pure Python otherwise.

``FIBCF_PURE=1`` in the environment forces the pure-Python kernels even
when the extension is importable.  Both implementations return identical
shortlists for identical inputs; the exact-arithmetic confirmation pass
downstream makes the final results independent of which one ran.
"""

import os

from . import _screen_py

COMPILED = None
if os.environ.get("FIBCF_PURE", "") != "1":
    try:
        from . import _screen as COMPILED  # type: ignore[attr-defined]
    except ImportError:
        COMPILED = None

_impl = COMPILED if COMPILED is not None else _screen_py

IMPL = "cython" if COMPILED is not None else "python"
simul_screen = _impl.simul_screen
quad_screen = _impl.quad_screen

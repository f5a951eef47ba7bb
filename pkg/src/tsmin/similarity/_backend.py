"""Kernel backend selection.

The compiled extension is used when it imported cleanly; TSMIN_PURE_PYTHON=1
forces the pure-Python kernels. Both expose the same four functions.
"""

from __future__ import annotations

import os

from . import _pykernels

HAVE_COMPILED = False
_impl = _pykernels

if not os.environ.get("TSMIN_PURE_PYTHON"):
    try:
        from tsmin import _simcore as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        HAVE_COMPILED = True

BACKEND_NAME = "compiled" if HAVE_COMPILED else "python"

top_down_size = _impl.top_down_size
top_down_mark = _impl.top_down_mark
bottom_up_best = _impl.bottom_up_best
ted_distance = _impl.ted_distance

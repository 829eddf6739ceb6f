"""Partitioning kernels: compiled extension when available, numpy
fallback otherwise. Both implement identical semantics (see pykernels).

Set ANONAUG_PURE_PYTHON=1 to force the fallback.
"""

import os

from . import pykernels

if os.environ.get("ANONAUG_PURE_PYTHON"):
    _impl = pykernels
else:
    try:
        from . import ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pykernels

BACKEND = _impl.NAME
kmember_assign = _impl.kmember_assign
tdga_split = _impl.tdga_split

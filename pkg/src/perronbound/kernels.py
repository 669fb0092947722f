"""Backend selection for the numerical kernels.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` twin. Set ``PERRONBOUND_PURE=1`` to force the
fallback (the benchmark and the backend-parity tests do this).
"""

import os

from . import _pykernels

if os.environ.get("PERRONBOUND_PURE", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "compiled" if _impl is not _pykernels else "python"

power_iteration = _impl.power_iteration
jacobi_eigh = _impl.jacobi_eigh
cholesky_solve = _impl.cholesky_solve
connected_masks = _impl.connected_masks
analyze_masks = _impl.analyze_masks

STATUS_OK = _pykernels.STATUS_OK
STATUS_MAIN_STALLED = _pykernels.STATUS_MAIN_STALLED
STATUS_DELETED_STALLED = _pykernels.STATUS_DELETED_STALLED
STATUS_NOT_SPD = _pykernels.STATUS_NOT_SPD


def backends():
    """Map of every importable backend name to its module."""
    found = {"python": _pykernels}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        found["compiled"] = _kernels
    return found

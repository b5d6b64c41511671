"""Kernel backend selection.

The compiled extension is preferred when it imports; the pure-python module is
the fallback.  ``RIBAUCOUR_KERNELS=python`` (or ``cython``) forces a backend.
"""

import os

_forced = os.environ.get("RIBAUCOUR_KERNELS", "").strip().lower()

if _forced == "python":
    from . import _kernels_py as _impl
elif _forced == "cython":
    from . import _kernels as _impl  # type: ignore[no-redef]
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND

inner = _impl.inner
enorm = _impl.enorm
enorm2 = _impl.enorm2
lightcone_residual = _impl.lightcone_residual
normalize = _impl.normalize
inversion_apply = _impl.inversion_apply
inversion_apply_rows = _impl.inversion_apply_rows
proj_distance = _impl.proj_distance

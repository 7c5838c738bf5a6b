"""Kernel selection: the compiled extension when importable, numpy otherwise.

Set ``TWISTGUIDE_BACKEND=python`` to force the fallback.
"""

import os

from . import _fallback

try:
    if os.environ.get("TWISTGUIDE_BACKEND", "").lower() == "python":
        raise ImportError("fallback forced by TWISTGUIDE_BACKEND")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

band_inertia_python = _fallback.band_inertia
band_inertia_compiled = _compiled.band_inertia if _compiled is not None else None
band_inertia = band_inertia_compiled or band_inertia_python

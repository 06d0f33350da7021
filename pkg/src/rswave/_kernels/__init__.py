"""Hot-loop kernels with a compiled core and a numpy fallback.

The compiled Cython extension is preferred when present; set
RSWAVE_KERNELS=numpy or RSWAVE_KERNELS=cython to force a backend (forcing
cython raises if the extension was not built).
"""

import os

_requested = os.environ.get("RSWAVE_KERNELS", "").strip().lower()
if _requested not in ("", "cython", "numpy"):
    raise ImportError(
        f"RSWAVE_KERNELS must be 'cython' or 'numpy', not {_requested!r}"
    )

if _requested == "numpy":
    from . import numpy_backend as _impl

    backend_name = "numpy"
else:
    try:
        from . import cython_backend as _impl

        backend_name = "cython"
    except ImportError:
        if _requested == "cython":
            raise
        from . import numpy_backend as _impl

        backend_name = "numpy"

rotate_modes = _impl.rotate_modes
project_modes = _impl.project_modes
curl_modes = _impl.curl_modes
divergence_modes = _impl.divergence_modes
fdtd_curl = _impl.fdtd_curl

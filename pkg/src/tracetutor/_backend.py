"""Selects the enumeration kernel at import time.

The compiled extension is used when present; otherwise the pure-Python
kernel takes over with identical behavior. Set TRACETUTOR_PURE=1 to force
the fallback (the benchmark and the backend-equivalence tests do).
"""

from __future__ import annotations

import os

if os.environ.get("TRACETUTOR_PURE") == "1":
    from tracetutor import _kernel_py as kernel
else:
    try:
        from tracetutor import _kernel as kernel  # type: ignore[no-redef]
    except ImportError:
        from tracetutor import _kernel_py as kernel  # type: ignore[no-redef]

BACKEND: str = kernel.NAME

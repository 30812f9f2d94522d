"""Backend selection for the arithmetic kernel.

The compiled extension is used when it is importable; set the environment
variable ``MODKIT_PURE_PYTHON=1`` to force the pure-Python backend.
"""

from __future__ import annotations

import os

if os.environ.get("MODKIT_PURE_PYTHON"):
    from . import _kernel as impl
else:
    try:
        from . import _ckernel as impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernel as impl  # type: ignore[no-redef]

BACKEND: str = impl.BACKEND

"""Kernel backend selection.

The compiled extension is used when it was built and imports cleanly; set
``TORSIONLAB_PURE_PYTHON=1`` to force the pure-Python twin.
"""

import os

from . import _pykernels as pure

compiled = None
if os.environ.get("TORSIONLAB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled  # type: ignore[no-redef]
    except ImportError:
        compiled = None

kernels = compiled if compiled is not None else pure
BACKEND = "compiled" if compiled is not None else "python"

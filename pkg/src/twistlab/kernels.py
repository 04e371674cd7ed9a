"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``TWISTLAB_PURE`` is set to a non-empty value other than
``0``, the pure-Python fallback is used.  ``BACKEND`` names the active one.
"""

from __future__ import annotations

import os

_force_pure = os.environ.get("TWISTLAB_PURE", "") not in ("", "0")

if _force_pure:
    from ._pykernels import (  # noqa: F401
        CAP_HIT, LEVEL_DONE, TARGET_FOUND, TableStore, close_subset, expand_level,
    )
    BACKEND = "python"
else:
    try:
        from ._kernels import (  # noqa: F401
            CAP_HIT, LEVEL_DONE, TARGET_FOUND, TableStore, close_subset, expand_level,
        )
        BACKEND = "cython"
    except ImportError:
        from ._pykernels import (  # noqa: F401
            CAP_HIT, LEVEL_DONE, TARGET_FOUND, TableStore, close_subset, expand_level,
        )
        BACKEND = "python"


def available() -> list[str]:
    """Names of the backends that import in this environment."""
    names = ["python"]
    try:
        from . import _kernels  # noqa: F401
        names.insert(0, "cython")
    except ImportError:
        pass
    return names


def set_backend(name: str) -> str:
    """Switch the active backend at runtime; returns the previous name."""
    global BACKEND, CAP_HIT, LEVEL_DONE, TARGET_FOUND, TableStore, close_subset, expand_level
    if name == "cython":
        from . import _kernels as mod
    elif name == "python":
        from . import _pykernels as mod
    else:
        raise ValueError(f"unknown backend {name!r}")
    previous = BACKEND
    CAP_HIT, LEVEL_DONE, TARGET_FOUND = mod.CAP_HIT, mod.LEVEL_DONE, mod.TARGET_FOUND
    TableStore, close_subset, expand_level = mod.TableStore, mod.close_subset, mod.expand_level
    BACKEND = name
    return previous


__all__ = [
    "available", "set_backend", "BACKEND", "CAP_HIT", "LEVEL_DONE", "TARGET_FOUND",
    "TableStore", "close_subset", "expand_level",
]

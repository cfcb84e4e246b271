"""Backend selection for the tree kernels.

The compiled Cython core is preferred when present; the pure-numpy
fallback is otherwise used transparently. Force a choice with
``DKIBO_BACKEND=compiled`` or ``DKIBO_BACKEND=python`` (useful for the
backend benchmark and for parity tests).
"""

from __future__ import annotations

import os

from . import _python

_requested = os.environ.get("DKIBO_BACKEND", "auto").lower()

if _requested not in ("auto", "compiled", "python"):
    raise ValueError(
        f"DKIBO_BACKEND must be 'auto', 'compiled' or 'python', got {_requested!r}"
    )

_impl = None
if _requested in ("auto", "compiled"):
    try:
        from . import _compiled as _impl  # type: ignore[no-redef]
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "DKIBO_BACKEND=compiled but the extension is not built; "
                "reinstall without DKIBO_SKIP_EXT or use DKIBO_BACKEND=python"
            )
if _impl is None:
    _impl = _python

best_split = _impl.best_split
predict_nodes = _impl.predict_nodes
BACKEND_NAME = _impl.BACKEND_NAME


def get_backend(name: str):
    """Return the named backend module ('python' or 'compiled')."""
    if name == "python":
        return _python
    if name == "compiled":
        from . import _compiled

        return _compiled
    raise ValueError(f"unknown backend {name!r}")

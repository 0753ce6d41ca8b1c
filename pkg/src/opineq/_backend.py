"""Eigensolver kernel selection.

Prefers the compiled extension, falls back to the pure-numpy kernel.
``OPINEQ_BACKEND=python`` or ``OPINEQ_BACKEND=compiled`` forces a choice
(the latter raises if the extension was not built).
"""

from __future__ import annotations

import os

_forced = os.environ.get("OPINEQ_BACKEND", "").strip().lower()

if _forced == "python":
    from opineq._jacobi_py import MAX_SWEEPS, jacobi_eigh

    BACKEND = "python"
elif _forced == "compiled":
    from opineq._jacobi import MAX_SWEEPS, jacobi_eigh  # type: ignore[no-redef]

    BACKEND = "compiled"
elif _forced:
    raise ImportError(f"unknown OPINEQ_BACKEND value {_forced!r}")
else:
    try:
        from opineq._jacobi import MAX_SWEEPS, jacobi_eigh  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from opineq._jacobi_py import MAX_SWEEPS, jacobi_eigh  # type: ignore[no-redef]

        BACKEND = "python"

__all__ = ["BACKEND", "MAX_SWEEPS", "jacobi_eigh"]

"""Kernel backend selection.

The env var ``QUADS_BACKEND`` picks the hot-loop implementation:

* ``numba``: JIT-compiled kernels (default when numba imports cleanly)
* ``numpy``: pure numpy / plain-Python fallbacks

Both backends expose the same functions; ``quads.backend_name()`` reports
which one is live.
"""

from __future__ import annotations

import os

ENV_VAR = "QUADS_BACKEND"


def _select():
    choice = os.environ.get(ENV_VAR, "").strip().lower()
    if choice not in ("", "numba", "numpy"):
        raise ValueError(f"{ENV_VAR} must be 'numba' or 'numpy', got {choice!r}")
    if choice != "numpy":
        try:
            from . import _kernels_numba

            return _kernels_numba, "numba"
        except ImportError:
            if choice == "numba":
                raise
    from . import _kernels_numpy

    return _kernels_numpy, "numpy"


kernels, BACKEND = _select()


def backend_name() -> str:
    """Name of the kernel backend in use ('numba' or 'numpy')."""
    return BACKEND

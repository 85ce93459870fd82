"""Backend selection for the mod-p linear algebra kernels.

The compiled Cython extension is preferred; the pure numpy implementation
is used when it is missing or when HILBZETA_PURE is set in the environment.
Both backends implement identical contracts (see _kernels_py).
"""

from __future__ import annotations

import os

if os.environ.get("HILBZETA_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
rref = _impl.rref
reduce_rows = _impl.reduce_rows


def in_span(rows, basis, pivots, p: int) -> bool:
    """True iff every row lies in the row space of the RREF basis."""
    res = reduce_rows(rows, basis, pivots, p)
    return not res.any()

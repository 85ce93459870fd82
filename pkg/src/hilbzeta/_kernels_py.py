"""Pure-Python (numpy) fallback for the mod-p row reduction kernels.

Same contracts as the compiled extension in _kernels.pyx; selected at
import time by hilbzeta.kernels when the extension is unavailable or
HILBZETA_PURE is set.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def rref(mat, p: int):
    """Reduced row echelon form mod p.

    Returns (basis, pivots): basis is a C-contiguous int64 array whose rows
    are the nonzero rows of the RREF (pivot entries 1, pivot columns cleared,
    pivot columns strictly increasing); pivots holds the pivot column of each
    row.  The input is not modified.
    """
    a = np.array(mat, dtype=np.int64, order="C", copy=True)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    a %= p
    n_rows, n_cols = a.shape
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r] = a[r] * inv % p
        col = a[:, c]
        others = np.nonzero(col)[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(col[others], a[r])) % p
        pivots.append(c)
        r += 1
    return np.ascontiguousarray(a[:r]), np.array(pivots, dtype=np.int64)


def reduce_rows(rows, basis, pivots, p: int):
    """Residual of each row after elimination against an RREF basis."""
    r = np.array(rows, dtype=np.int64, order="C", copy=True)
    if r.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    r %= p
    for k in range(len(pivots)):
        c = int(pivots[k])
        f = r[:, c]
        nz = np.nonzero(f)[0]
        if nz.size:
            r[nz] = (r[nz] - np.outer(f[nz], basis[k])) % p
    return r

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p row reduction kernels (hot loop of ideal enumeration)."""

import numpy as np

BACKEND = "cython"


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid; a is nonzero mod p, p prime
    cdef long long old_r = a % p, r = p
    cdef long long old_s = 1, s = 0
    cdef long long q, tmp
    while r != 0:
        q = old_r / r
        tmp = old_r - q * r
        old_r = r
        r = tmp
        tmp = old_s - q * s
        old_s = s
        s = tmp
    old_s %= p
    if old_s < 0:
        old_s += p
    return old_s


def rref(mat, p):
    """Reduced row echelon form mod p; see _kernels_py.rref for the contract."""
    a = np.array(mat, dtype=np.int64, order="C", copy=True)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    a %= p
    cdef long long[:, ::1] m = a
    cdef long long pp = p
    cdef Py_ssize_t n_rows = m.shape[0], n_cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef long long inv, f
    piv = np.empty(min(n_rows, n_cols), dtype=np.int64)
    cdef long long[::1] pv = piv
    for c in range(n_cols):
        if r == n_rows:
            break
        i = -1
        for j in range(r, n_rows):
            if m[j, c] != 0:
                i = j
                break
        if i < 0:
            continue
        if i != r:
            for k in range(n_cols):
                f = m[r, k]
                m[r, k] = m[i, k]
                m[i, k] = f
        inv = _inv_mod(m[r, c], pp)
        if inv != 1:
            for k in range(c, n_cols):
                m[r, k] = (m[r, k] * inv) % pp
        for j in range(n_rows):
            if j == r:
                continue
            f = m[j, c]
            if f != 0:
                for k in range(c, n_cols):
                    m[j, k] = (m[j, k] - f * m[r, k]) % pp
                    if m[j, k] < 0:
                        m[j, k] += pp
        pv[r] = c
        r += 1
    return np.ascontiguousarray(a[:r]), piv[:r].copy()


def reduce_rows(rows, basis, pivots, p):
    """Residual of each row after elimination against an RREF basis."""
    a = np.array(rows, dtype=np.int64, order="C", copy=True)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    a %= p
    b = np.ascontiguousarray(basis, dtype=np.int64)
    pv = np.ascontiguousarray(pivots, dtype=np.int64)
    cdef long long[:, ::1] m = a
    cdef const long long[:, ::1] bs = b
    cdef const long long[::1] cols = pv
    cdef long long pp = p
    cdef Py_ssize_t n_rows = m.shape[0], n_cols = m.shape[1], n_piv = cols.shape[0]
    cdef Py_ssize_t i, k, j
    cdef long long f
    cdef Py_ssize_t c
    for i in range(n_rows):
        for k in range(n_piv):
            c = cols[k]
            f = m[i, c]
            if f != 0:
                for j in range(n_cols):
                    m[i, j] = (m[i, j] - f * bs[k, j]) % pp
                    if m[i, j] < 0:
                        m[i, j] += pp
    return a

"""Closed-form Hilbert zeta of the coordinate-axes germs, exact in Z[L].

This module is the ground-truth side of the cross-check against brute-force
enumeration: its strata classes come from inclusion-exclusion on the
Grassmannian, never from interpolation.
"""

from __future__ import annotations

from math import comb

from .errors import GermInputError
from .motive import ONE, LPoly, ZetaRat, gauss_binomial


def gr0(k: int, n: int) -> LPoly:
    """Class of k-planes in L^n lying in no coordinate hyperplane:
    sum_{j=0..n} (-1)^j C(n,j) gauss(n-j, k)."""
    out = LPoly()
    for j in range(n + 1):
        term = gauss_binomial(n - j, k)
        if term:
            out = out + LPoly.const((-1) ** j * comb(n, j)) * term
    return out


def axes_zeta(n: int) -> ZetaRat:
    """Punctual Hilbert zeta of the N coordinate axes:
    1 + (1/(1-t)^N) * sum_{d=1..N} gr0(N-d+1, N) t^d."""
    if n < 1:
        raise GermInputError("need at least one axis")
    one_minus_t = [ONE, LPoly.const(-1)]
    den = [ONE]
    for _ in range(n):
        den = _mul(den, one_minus_t)
    num = list(den)
    for d in range(1, n + 1):
        cls = gr0(n - d + 1, n)
        while len(num) <= d:
            num.append(LPoly())
        num[d] = num[d] + cls
    return ZetaRat(num, den_t=n)


def axes_hilb_class(n: int, d: int) -> LPoly:
    """Class of the punctual Hilbert scheme of N axes in degree d."""
    if d < 0:
        raise GermInputError("degree must be nonnegative")
    return axes_zeta(n).series(d + 1)[d]


def _mul(a, b):
    out = [LPoly() for _ in range(len(a) + len(b) - 1)]
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] = out[i + j] + ca * cb
    return out

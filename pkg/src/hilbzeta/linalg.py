"""Exact echelon-form linear algebra over the rationals (Fraction entries).

Used for germ model construction and invariant computation; the mod-p
counterpart lives in the kernels backend.
"""

from __future__ import annotations

from fractions import Fraction


class EchelonSpan:
    """Row space maintained in reduced echelon form with increasing pivots."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> list[Fraction]:
        """Residual of vec after elimination against the current basis."""
        v = [Fraction(x) for x in vec]
        for row, piv in zip(self.rows, self.pivots):
            f = v[piv]
            if f:
                for j in range(piv, self.width):
                    v[j] -= f * row[j]
        return v

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def insert(self, vec) -> bool:
        """Adjoin vec to the span; True if the dimension grew."""
        v = self.reduce(vec)
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = 1 / v[piv]
        v = [x * inv for x in v]
        for row in self.rows:
            f = row[piv]
            if f:
                for j in range(piv, self.width):
                    row[j] -= f * v[j]
        pos = next((k for k, q in enumerate(self.pivots) if q > piv), len(self.pivots))
        self.rows.insert(pos, v)
        self.pivots.insert(pos, piv)
        return True

    def basis_tuples(self) -> tuple:
        return tuple(tuple(row) for row in self.rows)


def rref_q(rows, width: int) -> EchelonSpan:
    span = EchelonSpan(width)
    for row in rows:
        span.insert(row)
    return span


def intersect_with_coordinate_subspace(
    basis_rows, width: int, forbidden: list[int]
) -> EchelonSpan:
    """Basis of the row-space vectors vanishing on the forbidden columns.

    Works by re-echelonizing with the forbidden columns moved first: rows
    whose pivot falls outside that block are exactly the intersection.
    """
    forbidden_set = set(forbidden)
    allowed = [j for j in range(width) if j not in forbidden_set]
    perm = forbidden + allowed
    permuted = rref_q([[row[j] for j in perm] for row in basis_rows], width)
    nfb = len(forbidden)
    keep = [
        row
        for row, piv in zip(permuted.rows, permuted.pivots)
        if piv >= nfb
    ]
    inv_perm = [0] * width
    for pos, j in enumerate(perm):
        inv_perm[j] = pos
    return rref_q([[row[inv_perm[j]] for j in range(width)] for row in keep], width)

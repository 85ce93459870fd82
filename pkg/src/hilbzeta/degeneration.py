"""Monomial (toric) degeneration of a germ via weighted leading terms.

A generic weight makes every graded piece below the conductor one
dimensional and spanned by a monomial; collecting those leading monomials
gives the exponent sets of the special fiber, a monomial subring with the
same delta invariant and branch count as the source germ.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import GermInputError, VerificationError
from .germ import (
    GermInvariants,
    GermPresentation,
    build_model,
    invariants,
)
from .linalg import intersect_with_coordinate_subspace

WEIGHT_CAP = 64


@dataclass(frozen=True)
class WeightVector:
    """Positive weights making the degrees of all sub-conductor monomials
    (and the conductor monomials themselves) pairwise distinct."""

    w: tuple

    def __post_init__(self):
        if not self.w or any(x < 1 for x in self.w):
            raise GermInputError("weights must be positive integers")


def _degrees_distinct(w, conductor) -> bool:
    seen = set()
    for i, c in enumerate(conductor):
        for n in range(1, c + 1):
            deg = w[i] * n
            if deg in seen:
                return False
            seen.add(deg)
    return True


def validate_weight(w: WeightVector, inv: GermInvariants):
    if len(w.w) != inv.s:
        raise GermInputError(f"weight needs {inv.s} entries")
    if not _degrees_distinct(w.w, inv.conductor):
        raise VerificationError(
            f"weight not generic: {w.w} collides on sub-conductor monomial degrees"
        )


def choose_weight(pres: GermPresentation, inv: GermInvariants | None = None) -> WeightVector:
    """Lexicographically smallest positive vector with distinct degrees on
    all monomials up to the conductor; found by incremental search."""
    if inv is None:
        inv = invariants(pres)
    if inv.s == 1 or inv.smooth:
        return WeightVector((1,) * inv.s)
    for cand in itertools.product(range(1, WEIGHT_CAP + 1), repeat=inv.s):
        if _degrees_distinct(cand, inv.conductor):
            return WeightVector(cand)
    raise VerificationError(
        f"no generic weight with entries <= {WEIGHT_CAP}; this indicates a bug "
        "or a pathological presentation"
    )


@dataclass(frozen=True)
class MonomialGerm:
    """Valuation data of the monomial special fiber: exponent sets recorded
    below the source conductor, completed by everything at or above it."""

    branches: int
    exponents_below: tuple  # S_i restricted to [0, c_i)
    source_conductor: tuple
    delta: int
    conductor: tuple  # conductor of the monomial model itself

    def contains(self, i: int, n: int) -> bool:
        if n == 0 or n >= self.source_conductor[i]:
            return True
        return n in self.exponents_below[i]

    def members_upto(self, i: int, bound: int):
        return [n for n in range(bound) if self.contains(i, n)]

    def to_json(self) -> dict:
        return {
            "branches": self.branches,
            "exponent_sets": [sorted(s) for s in self.exponents_below],
            "source_conductor": list(self.source_conductor),
            "delta": self.delta,
            "conductor": list(self.conductor),
        }


def associated_monomial_germ(
    pres: GermPresentation, w: WeightVector, inv: GermInvariants | None = None
) -> MonomialGerm:
    """Leading-monomial exponent sets of the weighted filtration on the germ.

    Fails with "weight not generic" when a graded piece below the conductor
    is not spanned by monomials.
    """
    if inv is None:
        inv = invariants(pres)
    validate_weight(w, inv)
    s = inv.s
    if inv.smooth:
        return MonomialGerm(
            branches=s,
            exponents_below=(frozenset(),) * s,
            source_conductor=(0,) * s,
            delta=0,
            conductor=(0,) * s,
        )
    c = inv.conductor
    ncap = max(w.w[i] * c[i] for i in range(s))
    box = tuple(ncap // w.w[i] + 1 for i in range(s))
    model = build_model(pres, box, 0)
    width = model.ambient_dim
    offsets = model.offsets()
    col_degree = [w.w[i] * n for i in range(s) for n in range(box[i])]
    basis = [list(r) for r in model.basis]

    # graded piece of weight m = projection of {w-val >= m} onto the
    # degree-m monomial slots; leading monomials live in its RREF rows
    found: list[set] = [set() for _ in range(s)]
    for m in range(1, ncap + 1):
        deg_cols = [j for j in range(width) if col_degree[j] == m]
        if not deg_cols:
            continue
        forbidden = [j for j in range(width) if col_degree[j] < m]
        span = intersect_with_coordinate_subspace(basis, width, forbidden)
        for row in _restrict_rows(span.rows, deg_cols):
            support = [j for j, x in enumerate(row) if x]
            if len(support) > 1:
                raise VerificationError(
                    f"weight not generic: graded piece of degree {m} "
                    "is not spanned by monomials"
                )
            if support:
                col = deg_cols[support[0]]
                i = _col_branch(col, offsets, box)
                found[i].add(col - offsets[i])
    exponents_below = tuple(
        frozenset(e for e in found[i] if 1 <= e < c[i]) for i in range(s)
    )
    delta0 = sum(c[i] - 1 - len(exponents_below[i]) for i in range(s)) + (s - 1)
    conductor0 = []
    for i in range(s):
        m = c[i]
        while m > 1 and (m - 1 in exponents_below[i] or m - 1 >= c[i]):
            m -= 1
        if s == 1 and m == 1:
            m = 0  # unibranch with every positive exponent: a smooth branch
        conductor0.append(m)
    return MonomialGerm(
        branches=s,
        exponents_below=exponents_below,
        source_conductor=c,
        delta=delta0,
        conductor=tuple(conductor0),
    )


def _restrict_rows(rows, cols):
    from .linalg import rref_q

    restricted = [[row[j] for j in cols] for row in rows]
    span = rref_q(restricted, len(cols))
    return span.rows


def _col_branch(col, offsets, box):
    for i in range(len(box) - 1, -1, -1):
        if col >= offsets[i]:
            return i
    raise AssertionError("column out of range")


@dataclass
class DegenerationReport:
    germ: str
    weight: tuple
    monomial: MonomialGerm
    delta_source: int
    delta_monomial: int
    branches: int

    @property
    def ok(self) -> bool:
        return self.delta_source == self.delta_monomial

    def to_json(self) -> dict:
        return {
            "germ": self.germ,
            "weight": list(self.weight),
            "exponent_sets": [
                sorted(s) for s in self.monomial.exponents_below
            ],
            "source_conductor": list(self.monomial.source_conductor),
            "delta_source": self.delta_source,
            "delta_monomial": self.delta_monomial,
            "branches": self.branches,
            "ok": self.ok,
        }


def verify_equinormalizable(
    pres: GermPresentation, w: WeightVector | None = None
) -> DegenerationReport:
    """Degenerate and compare: the monomial fiber must keep delta and the
    branch count of the source germ."""
    inv = invariants(pres)
    if w is None:
        w = choose_weight(pres, inv)
    mono = associated_monomial_germ(pres, w, inv)
    return DegenerationReport(
        germ=pres.name,
        weight=w.w,
        monomial=mono,
        delta_source=inv.delta,
        delta_monomial=mono.delta,
        branches=inv.s,
    )

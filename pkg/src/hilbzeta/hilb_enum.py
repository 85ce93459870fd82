"""Brute-force enumeration of finite-colength ideals over small prime fields.

Every colength-d ideal of the truncated germ model is produced exactly once
by socle recursion: colength 0 is the ring itself, and each colength-d ideal
is a hyperplane of some colength-(d-1) ideal J containing m*J.  Canonical
reduced echelon bases make deduplication and determinism trivial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import GermInputError, ResourceGuardError
from .germ import (
    GermInvariants,
    GermModel,
    GermPresentation,
    build_model,
    filtration_subspace,
    invariants,
)

DEFAULT_DIM_CAP = 24

_SMALL_PRIMES = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}


def _require_prime(q: int):
    if q not in _SMALL_PRIMES:
        raise GermInputError(f"q = {q} is not a supported prime")


@dataclass(frozen=True)
class IdealRep:
    """A finite-colength ideal as a canonical RREF basis of its image in the
    truncated quotient; carries its branch-length vector."""

    basis: np.ndarray
    pivots: tuple
    colength: int
    branch_vector: tuple
    key: bytes = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, IdealRep) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


@dataclass
class StratumTable:
    """Counts of colength-d ideals grouped by branch-length vector."""

    germ: str
    q: int
    d_max: int
    entries: dict

    def count(self, d: int, a) -> int:
        return self.entries.get((d, tuple(a)), 0)

    def totals(self) -> list[int]:
        out = [0] * (self.d_max + 1)
        for (d, _a), n in self.entries.items():
            out[d] += n
        return out

    def to_json(self) -> dict:
        return {
            "germ": self.germ,
            "q": self.q,
            "d_max": self.d_max,
            "entries": [
                {"d": d, "a": list(a), "count": self.entries[(d, a)]}
                for d, a in sorted(self.entries)
            ],
        }


def _canonical_key(basis: np.ndarray) -> bytes:
    return basis.shape[0].to_bytes(4, "little") + basis.tobytes()


def make_ideal(model: GermModel, rows) -> IdealRep:
    """Canonicalize a spanning set of rows into an IdealRep."""
    basis, piv = kernels.rref(np.asarray(rows, dtype=np.int64), model.char)
    basis.setflags(write=False)
    return IdealRep(
        basis=basis,
        pivots=tuple(int(x) for x in piv),
        colength=model.dim - len(piv),
        branch_vector=branch_vector(model, basis),
        key=_canonical_key(basis),
    )


def branch_vector(model: GermModel, rows) -> tuple:
    """a_i = minimal branch-i valuation over the row space = the colength of
    the pushforward to the i-th branch; b_i when the projection vanishes."""
    rows = np.asarray(rows)
    offsets = model.offsets()
    out = []
    for i, b in enumerate(model.box):
        sub = rows[:, offsets[i] : offsets[i] + b]
        _red, piv = kernels.rref(sub, model.char)
        out.append(int(piv[0]) if len(piv) else b)
    return tuple(out)


def predicted_dim(inv: GermInvariants, d_max: int) -> int:
    return inv.s * (d_max + inv.delta) + inv.big_c - inv.delta


def guard_dmax(inv: GermInvariants, dim_cap: int = DEFAULT_DIM_CAP) -> int:
    d = (dim_cap - inv.big_c + inv.delta) // inv.s - inv.delta
    return max(d, 0)


def enumeration_model(
    pres: GermPresentation,
    q: int,
    d_max: int,
    inv: GermInvariants | None = None,
    dim_cap: int = DEFAULT_DIM_CAP,
) -> GermModel:
    """F_q model in the box b_i = d_max + delta + c_i, which is large enough
    that colength-d ideals of the germ biject with those of the quotient for
    every d <= d_max.  Refuses oversized configurations up front.
    """
    _require_prime(q)
    if inv is None:
        inv = invariants(pres)
    dim = predicted_dim(inv, d_max)
    if dim > dim_cap:
        raise ResourceGuardError(
            f"predicted quotient dimension {dim} exceeds cap {dim_cap} "
            f"(germ {pres.name}, d_max={d_max}); raise dim_cap to force"
        )
    box = tuple(d_max + inv.delta + c for c in inv.conductor)
    model = build_model(pres, box, q)
    reference = build_model(pres, box, 0)
    if model.dim != reference.dim or (
        not inv.smooth and model.conductor != reference.conductor
    ):
        raise GermInputError(
            f"presentation degenerates mod {q}: model dimensions differ "
            "from the exact rational model"
        )
    return model


def enumerate_levels(model: GermModel, d_max: int) -> list:
    """All ideals of colength 0..d_max, one sorted list per colength."""
    p = model.char
    full = make_ideal(model, model.basis)
    levels = [[full]]
    for _d in range(1, d_max + 1):
        seen = {}
        for ideal in levels[-1]:
            for child_rows in _ideal_children(model, ideal, p):
                child = make_ideal(model, child_rows)
                seen.setdefault(child.key, child)
        levels.append([seen[k] for k in sorted(seen)])
    return levels


def _ideal_children(model: GermModel, ideal: IdealRep, p: int):
    """Hyperplanes of J containing m*J, i.e. the colength-(d+1) subideals."""
    rows = ideal.basis
    if rows.shape[0] == 0:
        return
    products = np.vstack([rows @ op % p for op in model.mult_ops])
    mj, mj_piv = kernels.rref(products, p)
    residuals = kernels.reduce_rows(rows, mj, mj_piv, p)
    quot, _qpiv = kernels.rref(residuals, p)
    k = quot.shape[0]
    for phi in _normalized_functionals(k, p):
        j0 = next(j for j, x in enumerate(phi) if x)
        lifts = [
            (quot[l] - phi[l] * quot[j0]) % p for l in range(k) if l != j0
        ]
        if lifts:
            yield np.vstack([mj] + lifts)
        else:
            yield mj


def _normalized_functionals(k: int, p: int):
    """Nonzero functionals on F_p^k up to scale: leading coefficient 1."""
    for j0 in range(k):
        for tail in itertools.product(range(p), repeat=k - j0 - 1):
            yield (0,) * j0 + (1,) + tail


def enumerate_colength_ideals(model: GermModel, q: int, d: int) -> list:
    """Every ideal of colength exactly d, each once, in canonical order."""
    if model.char != q:
        raise GermInputError(f"model was built over F_{model.char}, not F_{q}")
    needed = tuple(d + model.delta + c for c in model.conductor)
    if any(b < n for b, n in zip(model.box, needed)):
        raise ResourceGuardError(
            f"model box {model.box} too small for colength {d} "
            f"(needs {needed}); enumeration would silently miss ideals"
        )
    return enumerate_levels(model, d)[d]


def stratum_table(
    pres: GermPresentation,
    q: int,
    d_max: int,
    inv: GermInvariants | None = None,
    dim_cap: int = DEFAULT_DIM_CAP,
) -> StratumTable:
    """Counts |Hilb^{d,a}(F_q)| for all d <= d_max, keyed by (d, a)."""
    if inv is None:
        inv = invariants(pres)
    model = enumeration_model(pres, q, d_max, inv, dim_cap)
    levels = enumerate_levels(model, d_max)
    entries = {}
    for d, level in enumerate(levels):
        for ideal in level:
            key = (d, ideal.branch_vector)
            entries[key] = entries.get(key, 0) + 1
    return StratumTable(germ=pres.name, q=q, d_max=d_max, entries=entries)


def check_inclusions(model: GermModel, ideal: IdealRep) -> bool:
    """F^{a+c} <= I <= F^a for the ideal's branch vector a (conductor c)."""
    a = ideal.branch_vector
    c = model.conductor
    upper_rows, upper_piv = filtration_subspace(model, a)
    clamped = tuple(min(x + y, b) for x, y, b in zip(a, c, model.box))
    lower_rows, _ = filtration_subspace(model, clamped)
    p = model.char
    upper = np.asarray(upper_rows, dtype=np.int64)
    lower = np.asarray(lower_rows, dtype=np.int64)
    piv = np.array(upper_piv, dtype=np.int64)
    if ideal.basis.shape[0] and not kernels.in_span(ideal.basis, upper, piv, p):
        return False
    if lower.shape[0] and not kernels.in_span(
        lower, ideal.basis, np.array(ideal.pivots, dtype=np.int64), p
    ):
        return False
    return True

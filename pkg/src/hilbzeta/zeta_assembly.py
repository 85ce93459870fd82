"""Stabilization checks, punctual zeta assembly, and Z[L] interpolation.

Once a branch length passes its conductor, multiplying by the twist element
(1,..,x_i,..,1) is a bijection of strata; the zeta function is therefore a
finite sum over the conductor box of geometric tails, a rational function
with denominator (1-t)^s.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import GermInputError, VerificationError
from .germ import GermInvariants, GermModel, GermPresentation, invariants
from .hilb_enum import (
    DEFAULT_DIM_CAP,
    IdealRep,
    StratumTable,
    enumerate_levels,
    enumeration_model,
    make_ideal,
    stratum_table,
)
from .motive import ONE, LPoly, ZetaRat

PRACTICAL_DEGREE_CAP = 8


@dataclass(frozen=True)
class TwistData:
    """Twist bookkeeping for one branch: the multiplication operator of
    (1,..,x_i,..,1) on the box, the fixed reference lattice index
    (c_1,..,C+c_i,..,c_s), and the degree-dependent normalization shifts."""

    branch: int
    xi_op: np.ndarray
    n0_index: tuple
    conductor: tuple
    delta: int
    big_c: int

    def eps_exponents(self, colength: int, a) -> tuple:
        """Per-branch downward shift exponents of the normalizing multiplier
        (negative = upward); branch i is shifted by d - alpha + delta - C."""
        a = tuple(a)
        alpha = sum(a) - a[self.branch]
        shifts = list(a)
        shifts[self.branch] = colength - alpha + self.delta - self.big_c
        return tuple(shifts)

    def n1_index(self, colength: int, a) -> tuple:
        """The lattice F^{(a_1+c_1, .., d-alpha+delta+c_i, ..)} inside every
        ideal of the stratum before normalization."""
        a = tuple(a)
        alpha = sum(a) - a[self.branch]
        out = [x + c for x, c in zip(a, self.conductor)]
        out[self.branch] = colength - alpha + self.delta + self.conductor[self.branch]
        return tuple(out)


def twist_data(model: GermModel, i: int) -> TwistData:
    s = len(model.box)
    if not 0 <= i < s:
        raise GermInputError(f"branch index {i} out of range")
    m = model.ambient_dim
    op = np.zeros((m, m), dtype=np.int64)
    offsets = model.offsets()
    for j, b in enumerate(model.box):
        base = offsets[j]
        if j == i:
            for n in range(b - 1):
                op[base + n, base + n + 1] = 1
        else:
            for n in range(b):
                op[base + n, base + n] = 1
    op.setflags(write=False)
    n0 = tuple(
        model.big_c + model.conductor[j] if j == i else model.conductor[j]
        for j in range(s)
    )
    return TwistData(
        branch=i,
        xi_op=op,
        n0_index=n0,
        conductor=model.conductor,
        delta=model.delta,
        big_c=model.big_c,
    )


def twist_ideal(model: GermModel, ideal: IdealRep, i: int) -> IdealRep:
    """Multiply by (1,..,x_i,..,1): colength d+1, branch vector a + e_i.

    Requires a_i >= c_i so that the shifted set stays inside the germ.
    """
    a = ideal.branch_vector
    c = model.conductor
    if a[i] < c[i]:
        raise VerificationError(
            f"twist leaves the ring: branch {i} has a_i = {a[i]} < c_i = {c[i]}"
        )
    supported = min(b - model.delta - cj for b, cj in zip(model.box, c))
    if ideal.colength + 1 > supported:
        raise VerificationError(
            f"model box {model.box} too small to represent the twist at "
            f"colength {ideal.colength + 1}"
        )
    data = twist_data(model, i)
    shifted = ideal.basis @ data.xi_op % model.char
    out = make_ideal(model, shifted)
    if out.colength != ideal.colength + 1:
        raise VerificationError("twisted ideal has unexpected colength")
    expected = tuple(x + (1 if j == i else 0) for j, x in enumerate(a))
    if out.branch_vector != expected:
        raise VerificationError("twisted ideal has unexpected branch vector")
    return out


@dataclass
class StabilizationCheck:
    d: int
    a: tuple
    branch: int
    count_src: int
    count_tgt: int
    bijection: bool

    @property
    def ok(self) -> bool:
        return self.count_src == self.count_tgt and self.bijection


@dataclass
class StabilizationReport:
    germ: str
    q: int
    d_max: int
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {
            "germ": self.germ,
            "q": self.q,
            "d_max": self.d_max,
            "ok": self.ok,
            "checks": [
                {
                    "d": c.d,
                    "a": list(c.a),
                    "branch": c.branch,
                    "count": c.count_src,
                    "count_next": c.count_tgt,
                    "bijection": c.bijection,
                    "ok": c.ok,
                }
                for c in self.checks
            ],
        }


def verify_stabilization(
    pres: GermPresentation,
    q: int,
    d_max: int,
    inv: GermInvariants | None = None,
    dim_cap: int = DEFAULT_DIM_CAP,
) -> StabilizationReport:
    """Check count(d,a) = count(d+1, a+e_i) for every stratum with a_i >= c_i,
    and that the twist map realizes the bijection on enumerated ideals."""
    if inv is None:
        inv = invariants(pres)
    model = enumeration_model(pres, q, d_max, inv, dim_cap)
    levels = enumerate_levels(model, d_max)
    strata: dict = {}
    for d, level in enumerate(levels):
        for ideal in level:
            strata.setdefault((d, ideal.branch_vector), []).append(ideal)
    checks = []
    for (d, a), bucket in sorted(strata.items()):
        if d + 1 > d_max:
            continue
        for i in range(inv.s):
            if a[i] < inv.conductor[i] or inv.conductor[i] == 0:
                continue
            target_a = tuple(x + (1 if j == i else 0) for j, x in enumerate(a))
            target = strata.get((d + 1, target_a), [])
            twisted_keys = {twist_ideal(model, ideal, i).key for ideal in bucket}
            bijection = len(twisted_keys) == len(bucket) and twisted_keys == {
                t.key for t in target
            }
            checks.append(
                StabilizationCheck(
                    d=d,
                    a=a,
                    branch=i,
                    count_src=len(bucket),
                    count_tgt=len(target),
                    bijection=bijection,
                )
            )
    return StabilizationReport(germ=pres.name, q=q, d_max=d_max, checks=checks)


# --- assembly ----------------------------------------------------------------


@dataclass
class PunctualZetaResult:
    """Punctual Hilbert zeta of a germ, exact at one prime or conjectural
    in Z[L] after interpolation across primes."""

    germ: str
    ring: str
    zeta: ZetaRat | None
    strata_used: dict = field(default_factory=dict)
    conjectural: bool = False
    per_prime: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "germ": self.germ,
            "ring": self.ring,
            "conjectural": self.conjectural,
            "zeta": self.zeta.to_json() if self.zeta is not None else None,
            "per_prime": {
                str(q): r.zeta.to_json() for q, r in sorted(self.per_prime.items())
            },
            "diagnostics": list(self.diagnostics),
            "strata_used": [
                {"d": d, "a": list(a), "class": _class_json(v)}
                for (d, a), v in sorted(self.strata_used.items())
            ],
        }


def _class_json(v):
    return v.to_json() if isinstance(v, LPoly) else v


def required_dmax(inv: GermInvariants) -> int:
    """Largest d the conductor-box assembly reads from a stratum table."""
    return inv.big_c + inv.big_c - inv.delta - 1


def _required_strata(inv: GermInvariants):
    """(d, a) pairs the assembly consumes: a in prod [0,c_i], d in the
    degree-vs-branch-length window."""
    boxes = [range(c + 1) for c in inv.conductor]
    for a in itertools.product(*boxes):
        lo = max(0, sum(a) - inv.delta)
        hi = sum(a) + inv.big_c - inv.delta - 1
        for d in range(lo, hi + 1):
            yield d, a


def assemble_punctual_zeta(table: StratumTable, inv: GermInvariants) -> PunctualZetaResult:
    """Sum over the conductor box with one geometric factor 1/(1-t) per
    branch sitting at its conductor; the result is exact over F_q."""
    zeta = _assemble(lambda d, a: table.count(d, a), inv, table.d_max)
    return PunctualZetaResult(
        germ=table.germ,
        ring=f"integers at q={table.q}",
        zeta=zeta,
        strata_used={
            (d, a): table.count(d, a)
            for d, a in _required_strata(inv)
            if table.count(d, a)
        },
    )


def _assemble(count, inv: GermInvariants, available_dmax: int) -> ZetaRat:
    if inv.smooth:
        return ZetaRat([ONE], den_t=1)
    d_req = required_dmax(inv)
    if available_dmax < d_req:
        missing = sorted(
            {(d, a) for d, a in _required_strata(inv) if d > available_dmax}
        )
        raise VerificationError(
            f"stratum table incomplete: d_max {available_dmax} < required "
            f"{d_req}; missing strata {missing[:8]}{'...' if len(missing) > 8 else ''}"
        )
    s = inv.s
    one_minus_t = [ONE, LPoly.const(-1)]
    num: list = []
    boxes = [range(c + 1) for c in inv.conductor]
    for a in itertools.product(*boxes):
        ncap = sum(1 for x, c in zip(a, inv.conductor) if x == c)
        lo = max(0, sum(a) - inv.delta)
        hi = sum(a) + inv.big_c - inv.delta - 1
        poly = [LPoly() for _ in range(hi + 1)]
        nonzero = False
        for d in range(lo, hi + 1):
            v = count(d, a)
            v = v if isinstance(v, LPoly) else LPoly.const(v)
            if v:
                poly[d] = v
                nonzero = True
        if not nonzero:
            continue
        for _ in range(s - ncap):
            poly = _poly_mul(poly, one_minus_t)
        num = _poly_add(num, poly)
    return ZetaRat(num, den_t=s)


def _poly_mul(a, b):
    out = [LPoly() for _ in range(len(a) + len(b) - 1)] if a and b else []
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] = out[i + j] + ca * cb
    return out


def _poly_add(a, b):
    out = [LPoly() for _ in range(max(len(a), len(b)))]
    for i, c in enumerate(a):
        out[i] = out[i] + c
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return out


# --- interpolation across primes ---------------------------------------------


def interpolate_class(counts: dict, degree_bound: int):
    """Lagrange-interpolate an integer polynomial through all primes but the
    largest, then validate at the held-out prime.  Returns the conjectural
    LPoly, or None when the counts are not polynomial within the bound.
    """
    primes = sorted(counts)
    if len(primes) < degree_bound + 2:
        raise GermInputError(
            f"need at least degree_bound + 2 = {degree_bound + 2} primes, "
            f"got {len(primes)}"
        )
    held = primes[-1]
    fit = primes[:-1]
    coeffs = [Fraction(0)]
    for xi in fit:
        term = [Fraction(counts[xi])]
        for xj in fit:
            if xj == xi:
                continue
            den = Fraction(xi - xj)
            shifted = [Fraction(0)] + term
            term = [
                (shifted[t] - xj * (term[t] if t < len(term) else 0)) / den
                for t in range(len(shifted))
            ]
        coeffs = [
            (coeffs[t] if t < len(coeffs) else Fraction(0))
            + (term[t] if t < len(term) else Fraction(0))
            for t in range(max(len(coeffs), len(term)))
        ]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) - 1 > degree_bound:
        return None
    if any(c.denominator != 1 for c in coeffs):
        return None
    poly = LPoly([int(c) for c in coeffs])
    if poly.eval(held) != counts[held]:
        return None
    return poly


def grassmannian_degree_bound(inv: GermInvariants) -> int:
    """Dimension bound for strata classes from the embedding into the
    Grassmannian of C-dim subspaces of the reference quotient."""
    return inv.big_c * max(inv.big_c - inv.delta, 0)


def punctual_zeta_L(
    pres: GermPresentation,
    primes=(2, 3, 5),
    inv: GermInvariants | None = None,
    degree_bound: int | None = None,
    dim_cap: int = DEFAULT_DIM_CAP,
) -> PunctualZetaResult:
    """Interpolate every required stratum count to a conjectural Z[L] class
    and assemble; per-prime exact zetas are always included.  One prime is
    held out to validate each interpolation.
    """
    primes = tuple(sorted(set(int(q) for q in primes)))
    if len(primes) < 3:
        raise GermInputError("need at least 3 distinct primes")
    if inv is None:
        inv = invariants(pres)
    if inv.smooth:
        zeta = ZetaRat([ONE], den_t=1)
        return PunctualZetaResult(
            germ=pres.name,
            ring="Z[L] (smooth point)",
            zeta=zeta,
            per_prime={q: PunctualZetaResult(pres.name, f"integers at q={q}", zeta.specialize(q)) for q in primes},
        )
    d_req = required_dmax(inv)

    def one_table(q):
        return stratum_table(pres, q, d_req, inv, dim_cap)

    with ThreadPoolExecutor(max_workers=len(primes)) as pool:
        tables = dict(zip(primes, pool.map(one_table, primes)))

    per_prime = {q: assemble_punctual_zeta(tables[q], inv) for q in primes}
    if degree_bound is None:
        degree_bound = grassmannian_degree_bound(inv)
    bound = min(degree_bound, len(primes) - 2, PRACTICAL_DEGREE_CAP)

    classes: dict = {}
    failures = []
    for d, a in _required_strata(inv):
        counts = {q: tables[q].count(d, a) for q in primes}
        if not any(counts.values()):
            continue
        cls = interpolate_class(counts, bound)
        if cls is None:
            failures.append((d, a, counts))
        else:
            classes[(d, a)] = cls
    if failures:
        diags = [
            f"stratum (d={d}, a={a}) not polynomial within degree {bound}: {counts}"
            for d, a, counts in failures
        ]
        return PunctualZetaResult(
            germ=pres.name,
            ring="per-prime only",
            zeta=None,
            per_prime=per_prime,
            diagnostics=diags,
        )
    zeta = _assemble(lambda d, a: classes.get((d, a), LPoly()), inv, d_req)
    return PunctualZetaResult(
        germ=pres.name,
        ring="conjectural Z[L]",
        zeta=zeta,
        strata_used=classes,
        conjectural=True,
        per_prime=per_prime,
    )

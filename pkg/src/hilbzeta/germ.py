"""Curve germs given by branch parametrizations.

A reduced s-branch germ is the subring R of R~ = prod_i k[[x_i]] generated
by 1 and finitely many elements with zero constant term.  This module builds
finite-dimensional truncated models of R inside R~/F~^b for a truncation box
b, and computes the delta invariant, per-branch deltas, the conductor
vector c, and C = sum(c).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import GermInputError, NonStabilizingError, TruncationError
from .linalg import EchelonSpan, intersect_with_coordinate_subspace

START_BOX = 4
BOX_CAP = 64


@dataclass(frozen=True)
class GermPresentation:
    """Branch parametrization data: generators[g][i] is the coefficient list
    of generator g on branch i, index 0 = constant term (always 0)."""

    branches: int
    generators: tuple
    truncation: int | None = None  # coefficients at index >= truncation unknown
    name: str = "custom"

    @property
    def s(self) -> int:
        return self.branches


@dataclass(frozen=True)
class FiltrationIndex:
    a: tuple

    def __post_init__(self):
        if any(x < 0 for x in self.a):
            raise ValueError("filtration indices must be nonnegative")


@dataclass(frozen=True)
class GermModel:
    """Truncated model of R in R~/F~^box.

    char == 0 means exact rationals (basis rows of Fractions); otherwise
    basis is an int64 RREF over F_char.  mult_ops act on *row* vectors of
    the ambient box space, one operator per presentation generator.
    delta and conductor are reliable only once box >= conductor
    componentwise (invariants() takes care of stabilizing them).
    """

    presentation: GermPresentation
    box: tuple
    char: int
    basis: object
    pivots: tuple
    mult_ops: tuple
    delta: int
    delta_i: tuple
    conductor: tuple
    big_c: int

    @property
    def ambient_dim(self) -> int:
        return sum(self.box)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def offsets(self) -> list[int]:
        offs = [0]
        for b in self.box:
            offs.append(offs[-1] + b)
        return offs[:-1]

    def col(self, branch: int, exponent: int) -> int:
        return self.offsets()[branch] + exponent


@dataclass(frozen=True)
class GermInvariants:
    s: int
    delta: int
    delta_i: tuple
    conductor: tuple
    big_c: int
    smooth: bool


# --- presentation input -----------------------------------------------------


def parse_presentation(doc) -> GermPresentation:
    """Accept a preset name ("node", "cusp", "axes:N", "semigroup:g1,..")
    or a custom description dict with keys branches/generators[/truncation]."""
    if isinstance(doc, str):
        return _parse_preset(doc)
    if isinstance(doc, dict):
        return _parse_custom(doc)
    raise GermInputError(f"cannot parse germ description {doc!r}")


def _parse_preset(name: str) -> GermPresentation:
    if name == "node":
        pres = _parse_preset("axes:2")
        return GermPresentation(pres.branches, pres.generators, None, "node")
    if name == "cusp":
        return GermPresentation(1, (((0, 0, 1),), ((0, 0, 0, 1),)), None, "cusp")
    if name.startswith("axes:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise GermInputError(f"bad axes preset {name!r}") from None
        if n < 1:
            raise GermInputError("axes:N needs N >= 1")
        gens = tuple(
            tuple((0, 1) if i == g else (0,) for i in range(n)) for g in range(n)
        )
        return GermPresentation(n, gens, None, name)
    if name.startswith("semigroup:"):
        try:
            exps = tuple(int(x) for x in name.split(":", 1)[1].split(","))
        except ValueError:
            raise GermInputError(f"bad semigroup preset {name!r}") from None
        if not exps or any(e < 1 for e in exps):
            raise GermInputError("semigroup exponents must be positive")
        gens = tuple(((0,) * e + (1,),) for e in exps)
        return GermPresentation(1, gens, None, name)
    raise GermInputError(f"unknown preset {name!r}")


def _parse_custom(doc: dict) -> GermPresentation:
    try:
        s = int(doc["branches"])
        raw = doc["generators"]
    except KeyError as exc:
        raise GermInputError(f"missing germ field {exc}") from None
    truncation = doc.get("truncation")
    if truncation is not None:
        truncation = int(truncation)
        if truncation < 1:
            raise GermInputError("truncation must be positive")
    if s < 1:
        raise GermInputError("need at least one branch")
    gens = []
    for g, series_list in enumerate(raw):
        if len(series_list) != s:
            raise GermInputError(f"generator {g} must give one series per branch")
        branches = []
        for i, coeffs in enumerate(series_list):
            coeffs = tuple(coeffs)
            for c in coeffs:
                if not isinstance(c, int) or isinstance(c, bool):
                    raise GermInputError(
                        f"generator {g}, branch {i}: integer coefficients only"
                    )
            if coeffs and coeffs[0] != 0:
                raise GermInputError(
                    f"generator {g} has nonzero constant term on branch {i}"
                )
            branches.append(coeffs)
        gens.append(tuple(branches))
    pres = GermPresentation(s, tuple(gens), truncation, "custom")
    _validate(pres)
    return pres


def _validate(pres: GermPresentation):
    if not pres.generators:
        raise GermInputError("need at least one generator")
    for g in pres.generators:
        for i, coeffs in enumerate(g):
            if coeffs and coeffs[0] != 0:
                raise GermInputError(f"nonzero constant term on branch {i}")
    for i in range(pres.branches):
        if all(not any(g[i]) for g in pres.generators):
            raise GermInputError(
                f"branch {i} is not finite over the germ: all generators vanish"
            )


# --- model construction -----------------------------------------------------


def _gen_vector(pres: GermPresentation, g: int, box, offsets) -> list[int]:
    vec = [0] * sum(box)
    for i in range(pres.branches):
        coeffs = pres.generators[g][i]
        for n, c in enumerate(coeffs[: box[i]]):
            vec[offsets[i] + n] = c
    return vec


def _unit_vector(s: int, box, offsets) -> list[int]:
    vec = [0] * sum(box)
    for i in range(s):
        vec[offsets[i]] = 1
    return vec


def _mult_vec(vec, gen_branches, box, offsets, p: int):
    """Product of a box vector with a generator, branchwise truncated
    convolution; entries reduced mod p when p > 0."""
    out = [0] * len(vec)
    for i, b in enumerate(box):
        coeffs = gen_branches[i]
        base = offsets[i]
        for n in range(b):
            v = vec[base + n]
            if not v:
                continue
            for m, c in enumerate(coeffs):
                if c and n + m < b:
                    out[base + n + m] += v * c
    if p:
        out = [x % p for x in out]
    return out


def _mult_op_matrix(gen_branches, box, offsets) -> np.ndarray:
    m = sum(box)
    op = np.zeros((m, m), dtype=np.int64)
    for i, b in enumerate(box):
        coeffs = gen_branches[i]
        base = offsets[i]
        for n in range(b):
            for k, c in enumerate(coeffs):
                if c and n + k < b:
                    op[base + n, base + n + k] = c
    return op


def build_model(pres: GermPresentation, box, char: int = 0) -> GermModel:
    """Span-closure model of the germ in R~/F~^box over Q (char 0) or F_char.

    Raises TruncationError when the input series are not specified far
    enough to determine the requested box.
    """
    box = tuple(int(b) for b in box)
    if len(box) != pres.branches or any(b < 1 for b in box):
        raise GermInputError("box must give a positive bound per branch")
    if pres.truncation is not None and max(box) > pres.truncation:
        raise TruncationError(
            f"truncation insufficiency: box {box} needs input series known "
            f"to order >= {max(box)} (have {pres.truncation})"
        )
    offsets = [0]
    for b in box:
        offsets.append(offsets[-1] + b)
    offsets = offsets[:-1]
    width = sum(box)
    gens = [
        [pres.generators[g][i] for i in range(pres.branches)]
        for g in range(len(pres.generators))
    ]

    if char == 0:
        span = EchelonSpan(width)
        queue = [_unit_vector(pres.branches, box, offsets)]
        span.insert(queue[0])
        while queue:
            vec = queue.pop()
            for gb in gens:
                prod = _mult_vec(vec, gb, box, offsets, 0)
                if span.insert(prod):
                    queue.append(prod)
        basis = span.basis_tuples()
        pivots = tuple(span.pivots)
        ops = tuple(_mult_op_matrix(gb, box, offsets) for gb in gens)
    else:
        p = char
        rows = [_unit_vector(pres.branches, box, offsets)]
        queue = list(rows)
        seen = _ModSpan(width, p)
        seen.insert(rows[0])
        while queue:
            vec = queue.pop()
            for gb in gens:
                prod = _mult_vec(vec, gb, box, offsets, p)
                if seen.insert(prod):
                    queue.append(prod)
        basis, piv = kernels.rref(np.array(seen.rows, dtype=np.int64), p)
        basis.setflags(write=False)
        pivots = tuple(int(x) for x in piv)
        ops = tuple(
            (_mult_op_matrix(gb, box, offsets) % p).astype(np.int64) for gb in gens
        )
        for op in ops:
            op.setflags(write=False)

    delta = width - len(pivots)
    conductor = _conductor_scan(basis, pivots, box, offsets, width, char)
    delta_i = tuple(
        box[i] - _branch_subalgebra_dim(pres, i, box[i], char)
        for i in range(pres.branches)
    )
    return GermModel(
        presentation=pres,
        box=box,
        char=char,
        basis=basis,
        pivots=pivots,
        mult_ops=ops,
        delta=delta,
        delta_i=delta_i,
        conductor=conductor,
        big_c=sum(conductor),
    )


def _branch_subalgebra_dim(pres: GermPresentation, i: int, bound: int, char: int) -> int:
    """Dimension of the i-th branch image (the subalgebra generated by the
    i-th generator components) in k[x]/x^bound."""
    gens = [g[i] for g in pres.generators if any(g[i])]
    span = _ModSpan(bound, char) if char else EchelonSpan(bound)
    unit = [1] + [0] * (bound - 1)
    span.insert(unit)
    queue = [unit]
    while queue:
        vec = queue.pop()
        for coeffs in gens:
            prod = [0] * bound
            for n, v in enumerate(vec):
                if not v:
                    continue
                for m, c in enumerate(coeffs):
                    if c and n + m < bound:
                        prod[n + m] += v * c
            if char:
                prod = [x % char for x in prod]
            if span.insert(prod):
                queue.append(prod)
    return len(span.rows)


class _ModSpan:
    """Incremental echelon span over F_p on Python int lists (cold path)."""

    def __init__(self, width: int, p: int):
        self.width = width
        self.p = p
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def insert(self, vec) -> bool:
        p = self.p
        v = [x % p for x in vec]
        for row, piv in zip(self.rows, self.pivots):
            f = v[piv]
            if f:
                for j in range(piv, self.width):
                    v[j] = (v[j] - f * row[j]) % p
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = pow(v[piv], p - 2, p)
        v = [(x * inv) % p for x in v]
        for row in self.rows:
            f = row[piv]
            if f:
                for j in range(piv, self.width):
                    row[j] = (row[j] - f * v[j]) % p
        pos = next((k for k, q in enumerate(self.pivots) if q > piv), len(self.pivots))
        self.rows.insert(pos, v)
        self.pivots.insert(pos, piv)
        return True


def _monomial_in_span(basis, pivots, width, col, char) -> bool:
    if char == 0:
        span = EchelonSpan(width)
        span.rows = [list(r) for r in basis]
        span.pivots = list(pivots)
        vec = [Fraction(0)] * width
        vec[col] = Fraction(1)
        return span.contains(vec)
    vec = np.zeros((1, width), dtype=np.int64)
    vec[0, col] = 1
    return kernels.in_span(vec, basis, np.array(pivots, dtype=np.int64), char)


def _conductor_scan(basis, pivots, box, offsets, width, char) -> tuple:
    conductor = []
    for i, b in enumerate(box):
        c_i = 0
        for n in range(b - 1, -1, -1):
            if not _monomial_in_span(basis, pivots, width, offsets[i] + n, char):
                c_i = n + 1
                break
        conductor.append(c_i)
    return tuple(conductor)


# --- invariants with box stabilization --------------------------------------


def _stabilized(pres: GermPresentation):
    """Double truncation boxes until (delta, delta_i, conductor) repeats."""
    size = START_BOX
    prev = None
    prev_model = None
    while size <= BOX_CAP:
        model = build_model(pres, (size,) * pres.branches, 0)
        cur = (model.delta, model.delta_i, model.conductor)
        if prev == cur and max(model.conductor) <= size // 2:
            return prev_model
        prev = cur
        prev_model = model
        size *= 2
    raise NonStabilizingError(
        "presentation does not define a reduced germ with finite delta "
        f"(no stabilization up to box {BOX_CAP})"
    )


def invariants(pres: GermPresentation) -> GermInvariants:
    """s, delta, per-branch deltas, conductor vector and C for a germ.

    A germ with delta = 0 is smooth; its conductor is reported as the whole
    ring (c = 0) and downstream zeta computations short-circuit.
    """
    model = _stabilized(pres)
    smooth = model.delta == 0
    conductor = (0,) * pres.branches if smooth else model.conductor
    return GermInvariants(
        s=pres.branches,
        delta=model.delta,
        delta_i=model.delta_i,
        conductor=conductor,
        big_c=sum(conductor),
        smooth=smooth,
    )


# --- filtration subspaces and valuations ------------------------------------


def filtration_subspace(model: GermModel, a) -> tuple:
    """Echelon basis of F^a in the model: the intersection of the germ image
    with the vectors vanishing below a_i on each branch.

    Returns (rows, pivots) in the model's coefficient field.
    """
    a = tuple(a.a if isinstance(a, FiltrationIndex) else a)
    if len(a) != len(model.box) or any(x < 0 for x in a):
        raise ValueError("bad filtration index")
    if any(x > b for x, b in zip(a, model.box)):
        raise ValueError(f"filtration index {a} exceeds box {model.box}")
    offsets = model.offsets()
    forbidden = [
        offsets[i] + n for i in range(len(model.box)) for n in range(a[i])
    ]
    if model.char == 0:
        span = intersect_with_coordinate_subspace(
            [list(r) for r in model.basis], model.ambient_dim, forbidden
        )
        return span.basis_tuples(), tuple(span.pivots)
    return _intersect_mod(model.basis, model.ambient_dim, forbidden, model.char)


def _intersect_mod(basis, width, forbidden, p):
    forbidden_set = set(forbidden)
    allowed = [j for j in range(width) if j not in forbidden_set]
    perm = np.array(forbidden + allowed, dtype=np.int64)
    permuted, piv = kernels.rref(np.asarray(basis)[:, perm], p)
    keep = permuted[piv >= len(forbidden)]
    out = np.zeros((len(keep), width), dtype=np.int64)
    out[:, perm] = keep
    rows, piv2 = kernels.rref(out, p)
    rows.setflags(write=False)
    return rows, tuple(int(x) for x in piv2)


def branch_valuation(model: GermModel, element) -> tuple:
    """Per-branch order of vanishing of a box vector; b_i stands for >= b_i."""
    vec = list(element)
    if len(vec) != model.ambient_dim:
        raise ValueError("element does not live in the modeled quotient")
    offsets = model.offsets()
    vals = []
    for i, b in enumerate(model.box):
        v = b
        for n in range(b):
            if vec[offsets[i] + n]:
                v = n
                break
        vals.append(v)
    return tuple(vals)

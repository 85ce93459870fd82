"""Exact arithmetic in the polynomial subring Z[L] of the Grothendieck ring
and for rational zeta functions in t with denominator (1-t)^a (1-Lt)^b.

All coefficients are arbitrary-precision integers; there is no floating
point anywhere in this package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb


class LPoly:
    """Integer polynomial in the Lefschetz class L, dense ascending coeffs.

    Canonical form: no trailing zero coefficient; the zero polynomial has
    an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        for c in coeffs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficients only, got {c!r}")
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("LPoly is immutable")

    @classmethod
    def const(cls, n: int) -> "LPoly":
        return cls((n,))

    @property
    def degree(self) -> int:
        """Degree in L; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def eval(self, v: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = _as_lpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_lpoly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return LPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_lpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_lpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_lpoly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return LPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return LPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = LPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, data) -> "LPoly":
        return cls(data)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            if d == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c))
                term = f"{mag}L" if d == 1 else f"{mag}L^{d}"
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+" if c > 0 else "-") + term)
        return "".join(parts)

    def __repr__(self):
        return f"LPoly({list(self.coeffs)})"


def _as_lpoly(x):
    if isinstance(x, LPoly):
        return x
    if isinstance(x, int):
        return LPoly((x,))
    return NotImplemented


#: The Lefschetz class, i.e. the class of the affine line.
L = LPoly((0, 1))
ONE = LPoly((1,))
ZERO = LPoly()


def lpoly_eval(p: LPoly, v: int) -> int:
    """Specialize p at L = v (point counting at v = q, Euler char at v = 1)."""
    return p.eval(v)


def gauss_binomial(n: int, k: int) -> LPoly:
    """Gaussian binomial in L: counts k-dim subspaces of an n-dim space at L=q.

    Computed through the Pascal-type recursion
    gauss(n,k) = gauss(n-1,k-1) + L^k * gauss(n-1,k).
    """
    if n < 0 or k < 0:
        raise ValueError("n, k must be nonnegative")
    if k > n:
        return ZERO
    row = [ONE]  # row for m = 0
    for m in range(1, n + 1):
        new = [ONE]
        for j in range(1, min(m, k) + 1):
            left = row[j - 1]
            right = row[j] if j < len(row) else ZERO
            new.append(left + (L ** j) * right)
        row = new
    return row[k]


# --- polynomials in t with LPoly coefficients, as plain lists ---------------


def _tpoly_trim(p: list[LPoly]) -> list[LPoly]:
    while p and not p[-1]:
        p.pop()
    return p


def _tpoly_add(a, b):
    out = [ZERO] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = out[i] + c
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return _tpoly_trim(out)


def _tpoly_mul(a, b):
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] = out[i + j] + ca * cb
    return _tpoly_trim(out)


def _tpoly_divide(p, root_factor):
    """Divide p(t) by (1 - r*t) where root_factor = r (an LPoly); None if inexact."""
    if not p:
        return []
    r = root_factor
    q = []
    prev = ZERO
    for i in range(len(p) - 1):
        cur = p[i] + r * prev
        q.append(cur)
        prev = cur
    # synthetic-division remainder p_deg + r*q_{deg-1} must vanish
    if p[-1] + r * prev != ZERO:
        return None
    return _tpoly_trim(q)


@dataclass(frozen=True)
class PowerSeries:
    """Truncated series in t with LPoly coefficients; len(coeffs) == order."""

    coeffs: tuple
    order: int

    def __post_init__(self):
        if len(self.coeffs) != self.order:
            raise ValueError("coefficient count must equal the order")

    def __getitem__(self, d: int) -> LPoly:
        return self.coeffs[d]

    def mul(self, other: "PowerSeries") -> "PowerSeries":
        order = min(self.order, other.order)
        out = [ZERO] * order
        for i in range(order):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(order - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return PowerSeries(tuple(out), order)


class ZetaRat:
    """Rational function numerator(t) / (1-t)^den_t (1-lt_base*t)^den_Lt.

    Canonical form: the numerator is not divisible by (1-t) while den_t > 0,
    nor by (1 - lt_base*t) while den_Lt > 0.  lt_base is L for symbolic zeta
    functions and becomes a constant after specialization.
    """

    __slots__ = ("numerator", "den_t", "den_Lt", "lt_base")

    def __init__(self, numerator, den_t=0, den_Lt=0, lt_base=L):
        num = [_coerce_coeff(c) for c in numerator]
        _tpoly_trim(num)
        if den_t < 0 or den_Lt < 0:
            raise ValueError("denominator exponents must be nonnegative")
        lt_base = _as_lpoly(lt_base)
        if lt_base == ONE:
            # (1 - t) factors masquerading as (1 - 1*t)
            den_t, den_Lt = den_t + den_Lt, 0
        while den_t > 0:
            q = _tpoly_divide(num, ONE)
            if q is None:
                break
            num, den_t = q, den_t - 1
        while den_Lt > 0:
            q = _tpoly_divide(num, lt_base)
            if q is None:
                break
            num, den_Lt = q, den_Lt - 1
        object.__setattr__(self, "numerator", tuple(num))
        object.__setattr__(self, "den_t", den_t)
        object.__setattr__(self, "den_Lt", den_Lt)
        object.__setattr__(self, "lt_base", lt_base if den_Lt else L)

    def __setattr__(self, name, value):
        raise AttributeError("ZetaRat is immutable")

    @classmethod
    def one(cls) -> "ZetaRat":
        return cls([ONE])

    def __eq__(self, other):
        if not isinstance(other, ZetaRat):
            return NotImplemented
        return (
            self.numerator == other.numerator
            and self.den_t == other.den_t
            and self.den_Lt == other.den_Lt
            and (self.den_Lt == 0 or self.lt_base == other.lt_base)
        )

    def __hash__(self):
        return hash((self.numerator, self.den_t, self.den_Lt, self.lt_base))

    def _check_base(self, other):
        if self.den_Lt and other.den_Lt and self.lt_base != other.lt_base:
            raise ValueError("mixed lt_base values")
        return other.lt_base if other.den_Lt else self.lt_base

    def __mul__(self, other):
        if isinstance(other, (int, LPoly)):
            other = ZetaRat([other])
        base = self._check_base(other)
        return ZetaRat(
            _tpoly_mul(list(self.numerator), list(other.numerator)),
            self.den_t + other.den_t,
            self.den_Lt + other.den_Lt,
            base,
        )

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, (int, LPoly)):
            other = ZetaRat([other])
        base = self._check_base(other)
        dt = max(self.den_t, other.den_t)
        dl = max(self.den_Lt, other.den_Lt)
        a = _scale_to_common(self, dt, dl, base)
        b = _scale_to_common(other, dt, dl, base)
        return ZetaRat(_tpoly_add(a, b), dt, dl, base)

    __radd__ = __add__

    def series(self, order: int) -> PowerSeries:
        """Maclaurin expansion in t, exact in Z[L]."""
        if order < 1:
            raise ValueError("order must be >= 1")
        out = [ZERO] * order
        den1 = [
            LPoly.const(comb(d + self.den_t - 1, self.den_t - 1))
            if self.den_t
            else (ONE if d == 0 else ZERO)
            for d in range(order)
        ]
        base_pow = ONE
        den2 = []
        for d in range(order):
            if self.den_Lt:
                den2.append(LPoly.const(comb(d + self.den_Lt - 1, self.den_Lt - 1)) * base_pow)
                base_pow = base_pow * self.lt_base
            else:
                den2.append(ONE if d == 0 else ZERO)
        for i, c in enumerate(self.numerator[:order]):
            if not c:
                continue
            for j in range(order - i):
                for k in range(order - i - j):
                    term = den1[j] * den2[k]
                    if term:
                        out[i + j + k] = out[i + j + k] + c * term
        return PowerSeries(tuple(out), order)

    def specialize(self, v: int) -> "ZetaRat":
        """Substitute L = v everywhere; canonical form restored (notably v = 1)."""
        num = [LPoly.const(c.eval(v)) for c in self.numerator]
        new_base = LPoly.const(self.lt_base.eval(v))
        return ZetaRat(num, self.den_t, self.den_Lt, new_base)

    def to_json(self) -> dict:
        data = {
            "numerator": [c.to_json() for c in self.numerator],
            "den_t": self.den_t,
            "den_Lt": self.den_Lt,
        }
        if self.den_Lt and self.lt_base != L:
            data["lt_value"] = self.lt_base.to_json()
        return data

    @classmethod
    def from_json(cls, data) -> "ZetaRat":
        base = LPoly.from_json(data["lt_value"]) if "lt_value" in data else L
        return cls(
            [LPoly.from_json(c) for c in data["numerator"]],
            data["den_t"],
            data["den_Lt"],
            base,
        )

    def __str__(self):
        den = ""
        if self.den_t:
            den += "(1-t)" + (f"^{self.den_t}" if self.den_t > 1 else "")
        if self.den_Lt:
            b = "L" if self.lt_base == L else str(self.lt_base)
            den += f"(1-{b}t)" + (f"^{self.den_Lt}" if self.den_Lt > 1 else "")
        # prefer the "1 + fraction" display when the constant term is 1
        if den and self.numerator and self.numerator[0] == ONE:
            frac = _tpoly_add(list(self.numerator), [-c for c in _den_poly(self)])
            if not frac:
                return "1"
            return f"1 + ({_tpoly_str(frac)})/{den}"
        if not den:
            return _tpoly_str(list(self.numerator)) if self.numerator else "0"
        return f"({_tpoly_str(list(self.numerator))})/{den}"

    def __repr__(self):
        return f"ZetaRat({[list(c.coeffs) for c in self.numerator]}, den_t={self.den_t}, den_Lt={self.den_Lt})"


def _coerce_coeff(c):
    p = _as_lpoly(c)
    if p is NotImplemented:
        raise TypeError(f"cannot use {c!r} as a coefficient")
    return p


def _den_poly(z: ZetaRat) -> list[LPoly]:
    out = [ONE]
    for _ in range(z.den_t):
        out = _tpoly_mul(out, [ONE, LPoly.const(-1)])
    for _ in range(z.den_Lt):
        out = _tpoly_mul(out, [ONE, -z.lt_base])
    return out


def _scale_to_common(z: ZetaRat, dt: int, dl: int, base: LPoly) -> list[LPoly]:
    num = list(z.numerator)
    for _ in range(dt - z.den_t):
        num = _tpoly_mul(num, [ONE, LPoly.const(-1)])
    for _ in range(dl - z.den_Lt):
        num = _tpoly_mul(num, [ONE, -base])
    return num


def _tpoly_str(p: list[LPoly]) -> str:
    parts = []
    for d, c in enumerate(p):
        if not c:
            continue
        if d == 0:
            term = str(c)
        else:
            tpow = "t" if d == 1 else f"t^{d}"
            if c == ONE:
                term = tpow
            elif c == LPoly.const(-1):
                term = "-" + tpow
            elif c.is_constant() or len([x for x in c.coeffs if x]) == 1:
                term = f"{c}{tpow}"
            else:
                term = f"({c}){tpow}"
        if parts and not term.startswith("-"):
            parts.append("+ " + term)
        elif parts:
            parts.append("- " + term[1:])
        else:
            parts.append(term)
    return " ".join(parts) if parts else "0"


def series_expand(z: ZetaRat, order: int) -> PowerSeries:
    return z.series(order)


def specialize(z: ZetaRat, v: int) -> ZetaRat:
    return z.specialize(v)


def zeta_to_json_str(z: ZetaRat) -> str:
    return json.dumps(z.to_json(), sort_keys=True)

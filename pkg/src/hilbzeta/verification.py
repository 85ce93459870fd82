"""Bundled verification suite: every structural invariant the enumeration,
assembly, and closed-form paths are supposed to satisfy, checked on demand."""

from __future__ import annotations

from dataclasses import dataclass

from .axes import axes_zeta
from .errors import VerificationError
from .germ import GermInvariants, GermPresentation, invariants
from .hilb_enum import (
    DEFAULT_DIM_CAP,
    StratumTable,
    check_inclusions,
    enumerate_levels,
    enumeration_model,
)
from .zeta_assembly import assemble_punctual_zeta, verify_stabilization

PRESETS = ("node", "cusp", "axes:3", "semigroup:3,4")


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerifyReport:
    germ: str
    q: int
    d_max: int
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def lines(self) -> list:
        out = []
        for c in self.checks:
            status = "PASS" if c.ok else "FAIL"
            detail = f" ({c.detail})" if c.detail else ""
            out.append(f"[{status}] {self.germ} q={self.q}: {c.name}{detail}")
        return out

    def to_json(self) -> dict:
        return {
            "germ": self.germ,
            "q": self.q,
            "d_max": self.d_max,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks
            ],
        }


def default_dmax(inv: GermInvariants, dim_cap: int = DEFAULT_DIM_CAP) -> int:
    """One degree beyond what the assembly needs, clipped by the guard."""
    from .hilb_enum import guard_dmax
    from .zeta_assembly import required_dmax

    return min(guard_dmax(inv, dim_cap), required_dmax(inv) + 1)


def run_suite(
    pres: GermPresentation,
    q: int,
    d_max: int | None = None,
    dim_cap: int = DEFAULT_DIM_CAP,
) -> VerifyReport:
    """Partition, bounds, inclusions, stabilization, series consistency, and
    (for axes germs) the closed-form cross-check."""
    inv = invariants(pres)
    if d_max is None:
        d_max = default_dmax(inv, dim_cap)
    model = enumeration_model(pres, q, d_max, inv, dim_cap)
    levels = enumerate_levels(model, d_max)
    entries: dict = {}
    for d, level in enumerate(levels):
        for ideal in level:
            key = (d, ideal.branch_vector)
            entries[key] = entries.get(key, 0) + 1
    table = StratumTable(germ=pres.name, q=q, d_max=d_max, entries=entries)

    checks = [
        check_partition(table, [len(level) for level in levels]),
        check_bounds(table, inv),
        check_all_inclusions(model, levels),
    ]
    stab = verify_stabilization(pres, q, d_max, inv, dim_cap)
    checks.append(
        CheckResult(
            "stabilization twist bijections",
            stab.ok,
            f"{len(stab.checks)} identities",
        )
    )
    checks.append(check_series_consistency(table, inv, levels))
    if pres.name == "node" or pres.name.startswith("axes:"):
        n = 2 if pres.name == "node" else int(pres.name.split(":")[1])
        checks.append(check_axes_cross(table, n, q, d_max))
    return VerifyReport(germ=pres.name, q=q, d_max=d_max, checks=checks)


def check_partition(table: StratumTable, level_sizes) -> CheckResult:
    totals = table.totals()
    ok = len(totals) == len(level_sizes) and all(
        t == s for t, s in zip(totals, level_sizes)
    )
    return CheckResult("stratum counts partition the Hilbert scheme", ok)


def check_bounds(table: StratumTable, inv: GermInvariants) -> CheckResult:
    bad = []
    for (d, a), count in table.entries.items():
        if count <= 0:
            bad.append((d, a, "nonpositive count"))
            continue
        lo = sum(a) - inv.delta
        hi = sum(a) + inv.big_c - inv.delta - (0 if inv.smooth else 1)
        if not lo <= d <= hi:
            bad.append((d, a, "degree outside window"))
        if d >= 1 and any(x < 1 for x in a):
            bad.append((d, a, "zero branch length"))
    return CheckResult(
        "degree vs branch-length bounds",
        not bad,
        "" if not bad else f"violations: {bad[:3]}",
    )


def check_all_inclusions(model, levels) -> CheckResult:
    total = 0
    failed = 0
    for level in levels:
        for ideal in level:
            total += 1
            if not check_inclusions(model, ideal):
                failed += 1
    return CheckResult(
        "filtration sandwich F^{a+c} <= I <= F^a",
        failed == 0,
        f"{total} ideals",
    )


def _const(p) -> int:
    if not p.is_constant():
        raise VerificationError(f"expected a constant class, got {p}")
    return p.eval(0)


def check_series_consistency(table: StratumTable, inv, levels) -> CheckResult:
    try:
        result = assemble_punctual_zeta(table, inv)
    except VerificationError as exc:
        return CheckResult("assembled zeta matches raw counts", False, str(exc))
    series = result.zeta.series(table.d_max + 1)
    raw = [len(level) for level in levels]
    ok = all(_const(series[d]) == raw[d] for d in range(len(raw))) and raw[0] == 1
    return CheckResult(
        "assembled zeta matches raw counts",
        ok and result.zeta.den_Lt == 0 and result.zeta.den_t <= inv.s,
        f"series {raw}",
    )


def check_axes_cross(table: StratumTable, n: int, q: int, d_max: int) -> CheckResult:
    closed = axes_zeta(n).specialize(q).series(d_max + 1)
    raw = table.totals()
    ok = all(_const(closed[d]) == raw[d] for d in range(d_max + 1))
    return CheckResult("closed form matches enumeration", ok)

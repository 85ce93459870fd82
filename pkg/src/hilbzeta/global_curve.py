"""Hilbert zeta functions of global rational curves: a product of the
Kapranov zeta of the smooth locus with one punctual factor per singularity."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GermInputError
from .motive import ONE, LPoly, ZetaRat


@dataclass(frozen=True)
class SmoothComponent:
    kind: str  # "P1" or "A1"
    punctures: int = 0

    def __post_init__(self):
        if self.kind not in ("P1", "A1"):
            raise GermInputError(f"unknown component kind {self.kind!r}")
        if self.punctures < 0:
            raise GermInputError("punctures must be nonnegative")


@dataclass(frozen=True)
class SmoothLocusDesc:
    components: tuple

    @classmethod
    def from_json(cls, data) -> "SmoothLocusDesc":
        return cls(
            tuple(
                SmoothComponent(d["kind"], int(d.get("punctures", 0))) for d in data
            )
        )


@dataclass(frozen=True)
class GlobalCurveDesc:
    """Smooth part plus the punctual zeta of each singular point.

    Entries of `singularities` are ZetaRat factors (or objects with a .zeta
    attribute holding one, e.g. PunctualZetaResult)."""

    smooth: SmoothLocusDesc
    singularities: tuple = field(default_factory=tuple)


def smooth_zeta(desc: SmoothLocusDesc) -> ZetaRat:
    """Kapranov zeta of the smooth locus: 1/((1-t)(1-Lt)) per projective
    line, 1/(1-Lt) per affine line, times (1-t) per removed closed point."""
    out = ZetaRat.one()
    minus_point = ZetaRat([ONE, LPoly.const(-1)])
    for comp in desc.components:
        if comp.kind == "P1":
            out = out * ZetaRat([ONE], den_t=1, den_Lt=1)
        else:
            out = out * ZetaRat([ONE], den_Lt=1)
        for _ in range(comp.punctures):
            out = out * minus_point
    return out


def curve_zeta(desc: GlobalCurveDesc) -> ZetaRat:
    """Product of the smooth-locus zeta with all punctual factors."""
    out = smooth_zeta(desc.smooth)
    for k, entry in enumerate(desc.singularities):
        factor = getattr(entry, "zeta", entry)
        if factor is None:
            raise GermInputError(
                f"singularity {k}: punctual zeta was not computed exactly"
            )
        if not isinstance(factor, ZetaRat):
            raise GermInputError(f"singularity {k}: expected a zeta factor")
        out = out * factor
    return out

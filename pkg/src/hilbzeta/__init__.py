"""Exact motivic Hilbert zeta functions of reduced curve singularities.

Library layout:

- motive: Z[L] polynomials, rational zeta functions, Gaussian binomials
- germ: branch-parametrized germs, truncated models, delta/conductor
- hilb_enum: brute-force colength-d ideal enumeration over F_p
- zeta_assembly: stabilization checks, zeta assembly, Z[L] interpolation
- axes: closed form for the coordinate-axes family
- degeneration: monomial (toric) degenerations via weighted leading terms
- global_curve: Kapranov factors and the global product formula
- cli: the hilbzeta command
"""

from .axes import axes_hilb_class, axes_zeta, gr0
from .errors import (
    GermInputError,
    HilbZetaError,
    NonStabilizingError,
    ResourceGuardError,
    TruncationError,
    VerificationError,
)
from .germ import (
    FiltrationIndex,
    GermInvariants,
    GermModel,
    GermPresentation,
    branch_valuation,
    build_model,
    filtration_subspace,
    invariants,
    parse_presentation,
)
from .global_curve import (
    GlobalCurveDesc,
    SmoothComponent,
    SmoothLocusDesc,
    curve_zeta,
    smooth_zeta,
)
from .hilb_enum import (
    IdealRep,
    StratumTable,
    branch_vector,
    check_inclusions,
    enumerate_colength_ideals,
    enumeration_model,
    stratum_table,
)
from .kernels import BACKEND
from .motive import (
    L,
    LPoly,
    PowerSeries,
    ZetaRat,
    gauss_binomial,
    lpoly_eval,
    series_expand,
    specialize,
)
from .degeneration import (
    MonomialGerm,
    WeightVector,
    associated_monomial_germ,
    choose_weight,
    verify_equinormalizable,
)
from .zeta_assembly import (
    PunctualZetaResult,
    TwistData,
    assemble_punctual_zeta,
    interpolate_class,
    punctual_zeta_L,
    twist_data,
    twist_ideal,
    verify_stabilization,
)

__version__ = "0.1.0"

"""Twist stabilization, zeta assembly over F_q, and Z[L] interpolation."""

import numpy as np
import pytest

from hilbzeta.errors import GermInputError, VerificationError
from hilbzeta.germ import filtration_subspace, invariants, parse_presentation
from hilbzeta.hilb_enum import (
    enumerate_colength_ideals,
    enumerate_levels,
    enumeration_model,
    stratum_table,
)
from hilbzeta.motive import L, ONE, LPoly, ZetaRat
from hilbzeta.zeta_assembly import (
    assemble_punctual_zeta,
    interpolate_class,
    punctual_zeta_L,
    required_dmax,
    twist_data,
    twist_ideal,
    verify_stabilization,
)

NODE = parse_presentation("node")
CUSP = parse_presentation("cusp")
AX3 = parse_presentation("axes:3")
SG34 = parse_presentation("semigroup:3,4")


def test_twist_node_maximal_ideal():
    model = enumeration_model(NODE, 2, 2)
    (m,) = enumerate_colength_ideals(model, 2, 1)
    out = twist_ideal(model, m, 1)
    assert out.colength == 2
    assert out.branch_vector == (1, 2)


def test_twist_cusp():
    model = enumeration_model(CUSP, 2, 2)
    (m,) = enumerate_colength_ideals(model, 2, 1)
    assert m.branch_vector == (2,)
    out = twist_ideal(model, m, 0)
    assert out.colength == 2 and out.branch_vector == (3,)


def test_twist_precondition():
    model = enumeration_model(CUSP, 2, 1)
    (full,) = enumerate_levels(model, 0)[0]
    with pytest.raises(VerificationError):
        twist_ideal(model, full, 0)  # a_1 = 0 < c_1 = 2


def _eps_shift(model, data, ideal):
    """Apply the normalizing multiplier to an ideal's rows, per branch."""
    shifts = data.eps_exponents(ideal.colength, ideal.branch_vector)
    offsets = model.offsets()
    out = np.zeros_like(ideal.basis)
    for j, b in enumerate(model.box):
        k = shifts[j]
        src = ideal.basis[:, offsets[j] : offsets[j] + b]
        if k >= 0:
            out[:, offsets[j] : offsets[j] + b - k] = src[:, k:]
        else:
            out[:, offsets[j] - k : offsets[j] + b] = src[:, : b + k]
    return out


@pytest.mark.parametrize("name", ["node", "cusp"])
def test_twist_reference_lattice_dimension(name):
    # every twistable ideal, shifted, sits exactly C-dimensionally over the
    # fixed lattice F^{(c_1, .., C + c_i, ..)}; that is what makes the strata
    # land in one common Grassmannian
    pres = parse_presentation(name)
    inv = invariants(pres)
    from hilbzeta import kernels

    for i in range(inv.s):
        model = enumeration_model(pres, 3, 3, inv)
        data = twist_data(model, i)
        offsets = model.offsets()
        window = [
            offsets[j] + e for j in range(inv.s) for e in range(data.n0_index[j])
        ]
        for d in range(1, 4):
            for ideal in enumerate_colength_ideals(model, 3, d):
                a = ideal.branch_vector
                if a[i] < inv.conductor[i]:
                    continue
                # the pre-normalization lattice n1 sits inside the ideal
                n1 = tuple(min(x, b) for x, b in zip(data.n1_index(d, a), model.box))
                n1_rows, _ = filtration_subspace(model, n1)
                if len(n1_rows):
                    stacked = kernels.rref(
                        np.vstack([ideal.basis, np.asarray(n1_rows)]), 3
                    )[0]
                    assert stacked.shape[0] == ideal.basis.shape[0]
                # after normalization the ideal is C-dimensional over n0
                shifted = _eps_shift(model, data, ideal)
                _rows, piv = kernels.rref(shifted[:, window], 3)
                assert len(piv) == inv.big_c


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("name", ["node", "cusp", "axes:3", "semigroup:3,4"])
def test_stabilization_all_presets(name, q):
    pres = parse_presentation(name)
    inv = invariants(pres)
    from hilbzeta.verification import default_dmax

    report = verify_stabilization(pres, q, default_dmax(inv), inv)
    assert report.checks, "stabilization suite must check something"
    assert report.ok


def test_stabilization_frozen_counts():
    t = stratum_table(NODE, 2, 2)
    assert t.count(1, (1, 1)) == t.count(2, (2, 1)) == t.count(2, (1, 2)) == 1
    t = stratum_table(CUSP, 3, 3)
    assert t.count(2, (2,)) == 3 == t.count(3, (3,))
    # the d=2 interior stratum of the three axes stays fixed under twisting
    t = stratum_table(AX3, 2, 3)
    assert t.count(2, (1, 1, 1)) == 4 == t.count(3, (2, 1, 1))


def test_assemble_node_q2():
    inv = invariants(NODE)
    r = assemble_punctual_zeta(stratum_table(NODE, 2, 2, inv), inv)
    assert r.zeta == 1 + ZetaRat([LPoly(), ONE, ONE], den_t=2)
    assert r.ring == "integers at q=2"


def test_assemble_cusp_q2():
    inv = invariants(CUSP)
    r = assemble_punctual_zeta(stratum_table(CUSP, 2, 2, inv), inv)
    assert r.zeta == 1 + ZetaRat([LPoly(), ONE, LPoly.const(2)], den_t=1)


def test_assemble_axes3_q2():
    inv = invariants(AX3)
    r = assemble_punctual_zeta(stratum_table(AX3, 2, 3, inv), inv)
    assert r.zeta == 1 + ZetaRat(
        [LPoly(), ONE, LPoly.const(4), ONE], den_t=3
    )


def test_assemble_requires_complete_table():
    inv = invariants(SG34)
    assert required_dmax(inv) == 8
    short = stratum_table(SG34, 2, 5, inv)
    with pytest.raises(VerificationError, match="missing strata"):
        assemble_punctual_zeta(short, inv)


@pytest.mark.parametrize("name,q", [("node", 2), ("node", 3), ("cusp", 2), ("cusp", 3), ("axes:3", 2), ("axes:3", 3)])
def test_series_consistency(name, q):
    pres = parse_presentation(name)
    inv = invariants(pres)
    from hilbzeta.verification import default_dmax

    d_max = default_dmax(inv)
    model = enumeration_model(pres, q, d_max, inv)
    raw = [len(level) for level in enumerate_levels(model, d_max)]
    r = assemble_punctual_zeta(stratum_table(pres, q, d_max, inv), inv)
    series = r.zeta.series(d_max + 1)
    assert [c.eval(0) for c in series.coeffs] == raw
    assert raw[0] == 1
    assert r.zeta.den_Lt == 0 and r.zeta.den_t <= inv.s


def test_interpolate_frozen_examples():
    # oracle checkpoint: subspace counts of 1-dim subspaces in F_q^3
    assert interpolate_class({2: 7, 3: 13, 5: 31, 7: 57}, 2) == L ** 2 + L + 1
    assert interpolate_class({2: 1, 3: 1, 5: 1}, 0) == ONE
    # Hilb^3 of the three axes: counts 4q^2+q+1 from enumeration
    assert interpolate_class({2: 19, 3: 40, 5: 106, 7: 204}, 2) == 4 * L ** 2 + L + 1


def test_interpolate_rejects_non_polynomial_data():
    assert interpolate_class({2: 4, 3: 8, 5: 32, 7: 128}, 2) is None
    # held-out mismatch: degree-1 fit through 2,3 misses the q^2 growth at 5
    assert interpolate_class({2: 4, 3: 10, 5: 28}, 1) is None


def test_interpolate_requires_enough_primes():
    with pytest.raises(GermInputError):
        interpolate_class({2: 7, 3: 13, 5: 31}, 2)


def test_punctual_zeta_L_node():
    r = punctual_zeta_L(NODE, (2, 3, 5))
    assert r.conjectural
    assert r.zeta == 1 + ZetaRat([LPoly(), ONE, L - 1], den_t=2)


def test_punctual_zeta_L_cusp():
    r = punctual_zeta_L(CUSP, (2, 3, 5))
    assert r.zeta == 1 + ZetaRat([LPoly(), ONE, L], den_t=1)


def test_punctual_zeta_L_axes3():
    r = punctual_zeta_L(AX3, (2, 3, 5, 7))
    assert r.zeta == 1 + ZetaRat(
        [LPoly(), ONE, L ** 2 + L - 2, (L - 1) ** 2], den_t=3
    )


def test_punctual_zeta_L_diagnostics_on_too_few_primes():
    r = punctual_zeta_L(AX3, (2, 3, 5))
    assert r.zeta is None and not r.conjectural
    assert r.diagnostics and "not polynomial" in r.diagnostics[0]
    assert set(r.per_prime) == {2, 3, 5}  # per-prime results still exact
    assert r.per_prime[2].zeta == 1 + ZetaRat(
        [LPoly(), ONE, LPoly.const(4), ONE], den_t=3
    )


def test_punctual_zeta_L_requires_three_primes():
    with pytest.raises(GermInputError):
        punctual_zeta_L(NODE, (2, 3))


def test_specialize_then_assemble_matches_per_prime():
    for pres, primes in ((NODE, (2, 3, 5)), (CUSP, (2, 3, 5)), (AX3, (2, 3, 5, 7))):
        r = punctual_zeta_L(pres, primes)
        assert r.zeta is not None
        for q in primes:
            assert r.zeta.specialize(q) == r.per_prime[q].zeta


def test_semigroup34_zeta_full_run():
    # the deepest preset: strata out to d = 8, one class of degree 3 (needs
    # five primes for validated interpolation)
    r = punctual_zeta_L(SG34, (2, 3, 5, 7))
    assert r.zeta is None and any("(d=6, a=(6,))" in d for d in r.diagnostics)
    r = punctual_zeta_L(SG34, (2, 3, 5, 7, 11))
    assert r.zeta == 1 + ZetaRat(
        [LPoly(), ONE, L, L ** 2, L ** 2, LPoly(), L ** 3], den_t=1
    )
    for q in (2, 3):
        assert r.zeta.specialize(q) == r.per_prime[q].zeta


def test_tacnode_full_pipeline():
    # not a preset: two smooth branches glued to first order (delta 2,
    # conductor (2,2)); degree-2 counts must see P^1 since the germ is planar
    pres = parse_presentation(
        {"branches": 2, "generators": [[[0, 1], [0, 1]], [[0, 0, 1], [0]]]}
    )
    inv = invariants(pres)
    assert (inv.delta, inv.conductor, inv.big_c) == (2, (2, 2), 4)
    for q in (2, 3):
        table = stratum_table(pres, q, 6, inv)
        assert table.totals() == [
            1,
            1,
            q + 1,
            q + 1,
            q * q + q + 1,
            2 * q * q + q + 1,
            3 * q * q + q + 1,
        ]
        assert verify_stabilization(pres, q, 6, inv).ok
    r = punctual_zeta_L(pres, (2, 3, 5, 7), inv)
    assert r.zeta == 1 + ZetaRat([LPoly(), ONE, L - 1, -L, L ** 2], den_t=2)
    for q in (2, 3, 5, 7):
        assert r.zeta.specialize(q) == r.per_prime[q].zeta


def test_result_json_shape():
    r = punctual_zeta_L(NODE, (2, 3, 5))
    data = r.to_json()
    assert data["conjectural"] is True
    assert set(data["per_prime"]) == {"2", "3", "5"}
    assert data["zeta"]["den_t"] == 2

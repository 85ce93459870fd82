"""Brute-force ideal enumeration: counts, branch vectors, guard rails."""

import numpy as np
import pytest

from hilbzeta.errors import GermInputError, ResourceGuardError
from hilbzeta.germ import filtration_subspace, invariants, parse_presentation
from hilbzeta.hilb_enum import (
    branch_vector,
    check_inclusions,
    enumerate_colength_ideals,
    enumerate_levels,
    enumeration_model,
    guard_dmax,
    make_ideal,
    predicted_dim,
    stratum_table,
)

from oracles import projective_space_count

NODE = parse_presentation("node")
CUSP = parse_presentation("cusp")
AX3 = parse_presentation("axes:3")


def test_local_ring_has_unique_colength_one_ideal():
    model = enumeration_model(NODE, 2, 1)
    assert len(enumerate_colength_ideals(model, 2, 1)) == 1


def test_node_degree_two_is_projective_line():
    model = enumeration_model(NODE, 2, 2)
    assert len(enumerate_colength_ideals(model, 2, 2)) == 3


@pytest.mark.parametrize("q,expected", [(2, 7), (3, 13)])
def test_axes3_degree_two_is_projective_plane(q, expected):
    model = enumeration_model(AX3, q, 2)
    ideals = enumerate_colength_ideals(model, q, 2)
    assert len(ideals) == expected == projective_space_count(2, q)


def test_branch_vector_examples():
    model = enumeration_model(NODE, 2, 2)
    levels = enumerate_levels(model, 2)
    (maximal,) = levels[1]
    assert maximal.branch_vector == (1, 1)

    # the ideal (x1^2, x2, x3) of the three axes has branch vector (2,1,1)
    ax = enumeration_model(AX3, 2, 2)
    rows, _ = filtration_subspace(ax, (2, 1, 1))
    ideal = make_ideal(ax, np.asarray(rows))
    assert ideal.colength == 2
    assert ideal.branch_vector == (2, 1, 1)


def test_branch_vector_cusp_pivot():
    model = enumeration_model(CUSP, 3, 3)  # box (6,): exponents 0..5
    rows = np.zeros((2, model.ambient_dim), dtype=np.int64)
    rows[0, 3] = 1
    rows[0, 4] = 1  # x^3 + x^4
    rows[1, 5] = 1  # x^5
    assert branch_vector(model, rows) == (3,)


def test_stratum_tables_frozen():
    t = stratum_table(NODE, 2, 2)
    assert t.entries == {
        (0, (0, 0)): 1,
        (1, (1, 1)): 1,
        (2, (1, 1)): 1,
        (2, (2, 1)): 1,
        (2, (1, 2)): 1,
    }
    t = stratum_table(CUSP, 3, 2)
    assert t.entries == {
        (0, (0,)): 1,
        (1, (2,)): 1,
        (2, (2,)): 3,
        (2, (3,)): 1,
    }
    t = stratum_table(AX3, 2, 1)
    assert t.entries == {(0, (0, 0, 0)): 1, (1, (1, 1, 1)): 1}


def test_partition_invariant():
    for pres, q in ((NODE, 2), (NODE, 3), (CUSP, 2), (AX3, 2)):
        inv = invariants(pres)
        d_max = 3
        model = enumeration_model(pres, q, d_max, inv)
        levels = enumerate_levels(model, d_max)
        table = stratum_table(pres, q, d_max, inv)
        assert table.totals() == [len(level) for level in levels]


def test_bounds_invariant():
    for pres, q in ((NODE, 2), (CUSP, 3), (AX3, 2)):
        inv = invariants(pres)
        table = stratum_table(pres, q, 3, inv)
        for (d, a), count in table.entries.items():
            assert count > 0
            assert sum(a) - inv.delta <= d <= sum(a) + inv.big_c - inv.delta - 1
            if d >= 1:
                assert all(x >= 1 for x in a)


def test_inclusions_hold_for_all_enumerated_ideals():
    for pres, q, d_max in ((NODE, 2, 3), (CUSP, 2, 3), (CUSP, 3, 3), (AX3, 2, 3)):
        model = enumeration_model(pres, q, d_max)
        for level in enumerate_levels(model, d_max):
            for ideal in level:
                assert check_inclusions(model, ideal)


def test_inclusions_negative_control():
    # drop one basis row of F^{a+c} out of an honest ideal: the sandwich fails
    model = enumeration_model(NODE, 2, 2)
    ideals = enumerate_colength_ideals(model, 2, 2)
    victim = next(i for i in ideals if i.branch_vector == (1, 1))
    corrupted = make_ideal(model, victim.basis[:-1])
    bad = type(victim)(
        basis=corrupted.basis,
        pivots=corrupted.pivots,
        colength=victim.colength,
        branch_vector=victim.branch_vector,
        key=corrupted.key,
    )
    assert not check_inclusions(model, bad)


def test_enumeration_deterministic():
    a = stratum_table(AX3, 2, 3)
    b = stratum_table(AX3, 2, 3)
    assert a.entries == b.entries
    m1 = enumeration_model(AX3, 2, 3)
    m2 = enumeration_model(AX3, 2, 3)
    k1 = [i.key for lvl in enumerate_levels(m1, 3) for i in lvl]
    k2 = [i.key for lvl in enumerate_levels(m2, 3) for i in lvl]
    assert k1 == k2


def test_guard_refuses_oversized_runs():
    inv = invariants(AX3)
    limit = guard_dmax(inv)
    assert predicted_dim(inv, limit) <= 24 < predicted_dim(inv, limit + 1)
    with pytest.raises(ResourceGuardError):
        stratum_table(AX3, 2, limit + 1)
    # raising the cap unlocks the same call
    stratum_table(AX3, 2, limit + 1, dim_cap=predicted_dim(inv, limit + 1))


def test_box_too_small_refused():
    model = enumeration_model(NODE, 2, 1)
    with pytest.raises(ResourceGuardError):
        enumerate_colength_ideals(model, 2, 3)


def test_wrong_prime_rejected():
    model = enumeration_model(NODE, 2, 1)
    with pytest.raises(GermInputError):
        enumerate_colength_ideals(model, 3, 1)
    with pytest.raises(GermInputError):
        enumeration_model(NODE, 4, 1)


def test_ideals_closed_under_multiplication():
    # the defining property of an IdealRep: stable under every generator op
    for pres, q in ((NODE, 2), (CUSP, 3), (AX3, 2)):
        model = enumeration_model(pres, q, 2)
        piv = None
        for level in enumerate_levels(model, 2):
            for ideal in level:
                piv = np.array(ideal.pivots, dtype=np.int64)
                for op in model.mult_ops:
                    from hilbzeta.kernels import in_span

                    image = ideal.basis @ op % q
                    assert in_span(image, ideal.basis, piv, q)


def test_smooth_germ_enumeration():
    # a smooth branch has exactly one ideal per colength, (x^d)
    ax1 = parse_presentation("axes:1")
    table = stratum_table(ax1, 2, 3)
    assert table.entries == {
        (0, (0,)): 1,
        (1, (1,)): 1,
        (2, (2,)): 1,
        (3, (3,)): 1,
    }


def test_table_json_sorted():
    t = stratum_table(NODE, 2, 2)
    data = t.to_json()
    assert data["q"] == 2 and data["d_max"] == 2
    keys = [(e["d"], tuple(e["a"])) for e in data["entries"]]
    assert keys == sorted(keys)
    assert all(e["count"] >= 1 for e in data["entries"])

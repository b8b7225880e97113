from fractions import Fraction
from itertools import permutations, product

import numpy as np
import pytest

from elastinv.basis import catalog251, describe, evaluate_word, find_descriptor, invariant_inputs
from elastinv.exceptions import ContractError
from elastinv.harmonic import HarmonicParts
from elastinv.relations import (
    INDEPENDENT,
    RELATION_FOUND,
    build_joints,
    certify_table1_degree,
    exact_rank,
    exact_value,
    find_relation,
    sample_point,
    solve_exact,
)


def test_sample_points_deterministic_and_distinct():
    pts = [sample_point(s) for s in range(10)]
    assert pts[3] == sample_point(3)
    assert len({p.as_list().__repr__() for p in pts}) == 10
    for p in pts:
        assert all(isinstance(x, Fraction) for x in p.as_list())
        assert all(-20 <= x.numerator <= 20 and 1 <= x.denominator <= 12 for x in p.as_list())
        a, d1, d2 = p.tensors()
        # exact harmonicity: fully symmetric and traceless in Fractions
        for idx in product(range(3), repeat=4):
            assert all(a[idx] == a[perm] for perm in permutations(idx))
        for k, l in product(range(3), repeat=2):
            assert sum(a[i, i, k, l] for i in range(3)) == 0
        assert sum(d1[i, i] for i in range(3)) == 0 and sum(d2[i, i] for i in range(3)) == 0


def test_build_joints_small_catalogs():
    toy = [describe("λ", 1), describe("μ", 1)]
    joints, total = build_joints(2, toy)
    assert [j.name for j in joints] == ["λ * λ", "λ * μ", "μ * μ"] and total == 3
    joints, total = build_joints(3, toy)
    assert len(joints) == total == 4
    # no lower-degree entries: only same-degree candidates remain
    quartic = [describe("J4", 4), describe("tr B^2", 4)]
    joints, total = build_joints(4, quartic, target=quartic[0])
    assert [j.name for j in joints] == ["tr B^2"] and total == 1
    with pytest.raises(ContractError):
        build_joints(1, toy)


def test_build_joints_truncation():
    joints, total = build_joints(6, catalog251(), max_joints=7)
    assert len(joints) == 7 and total > 7
    # same-degree candidates come first
    assert all(len(j.factors) == 1 and j.degree == 6 for j in joints)


def test_exact_linear_algebra():
    m = [[1, 2], [2, 4], [0, 1]]
    assert exact_rank(m) == 2
    assert exact_rank([[Fraction(1, 3), Fraction(2, 3)], [1, 2]]) == 1
    rank_m, rank_mb, sol = solve_exact(m, [3, 6, 1])
    assert (rank_m, rank_mb) == (2, 2) and sol == [1, 1]
    rank_m, rank_mb, sol = solve_exact(m, [3, 7, 1])
    assert (rank_m, rank_mb, sol) == (2, 3, None)


def test_trace_b_equals_j2():
    r = find_relation(find_descriptor("tr B"), 50)
    assert r.status == RELATION_FOUND
    assert r.relation() == {"J2": 1}
    assert r.verified_points == 10
    assert {j.name for j in r.vanishing_joints} >= {"λ * λ", "μ * μ"}


def test_trace_f_vanishes():
    r = find_relation(find_descriptor("tr F"), 50)
    assert r.found and r.relation() == {}


def test_mixed_deviator_trace_independent():
    r = find_relation(find_descriptor("tr D1 D2"), 50)
    assert r.status == INDEPENDENT and not r.truncated
    assert r.rank == r.num_joints


def test_isotropic_moduli_are_free():
    for name in ("λ", "mu"):
        assert find_relation(find_descriptor(name), 0).status == INDEPENDENT


def test_certify_low_degrees():
    assert [r.status for r in certify_table1_degree(1, 50)] == [INDEPENDENT, INDEPENDENT]
    for d in (2, 3):
        reports = certify_table1_degree(d, 50)
        assert len(reports) == sum(t.table_degree == d for t in catalog251())
        assert all(r.status == INDEPENDENT and r.rank == r.num_joints for r in reports)
    with pytest.raises(ContractError):
        certify_table1_degree(12, 50)


def test_duplicate_suspect_twin_found():
    target = next(t for t in catalog251() if t.name == "tr B H K" and t.table_degree == 10)
    r = find_relation(target, 60, max_joints=60)
    assert r.found and r.truncated
    assert r.relation() == {"tr B H K": 1}


def test_too_few_samples():
    with pytest.raises(ContractError):
        find_relation(find_descriptor("tr D1 D2"), 2)


def test_rank_monotone_in_samples():
    target = find_descriptor("tr D1 D2")
    ranks = [find_relation(target, m, seed=5).rank for m in (6, 10, 20)]
    assert ranks == sorted(ranks)


def test_deterministic_reports():
    t = find_descriptor("tr B^2")
    assert find_relation(t, 30).to_dict() == find_relation(t, 30).to_dict()


def test_found_relations_hold_at_new_points():
    r = find_relation(find_descriptor("tr B"), 50)
    for s in range(500, 505):
        lhs = sum((c * j.value(s) for c, j in zip(r.coefficients, r.joints)), Fraction(0))
        assert lhs == exact_value(r.target, s)


def test_exact_matches_float_evaluation():
    for seed in (0, 1):
        p = sample_point(seed)
        a, d1, d2 = (np.array(t, dtype=float) for t in p.tensors())
        tensors, scalars = invariant_inputs(HarmonicParts(0.0, 0.0, d1, d2, a))
        for t in catalog251()[::7]:
            exact = float(exact_value(t, seed))
            approx = float(evaluate_word(t.word, tensors, scalars))
            assert abs(exact - approx) <= 1e-10 * max(1.0, abs(exact))

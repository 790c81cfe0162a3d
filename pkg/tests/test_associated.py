from __future__ import annotations

import random

import pytest
from mpmath import mp

from christoffel import (
    Polynomial,
    associated,
    associated_identity_residual,
    extension_identity_residual,
    mp_family,
    pj_family,
)


def test_order_zero_is_one(policy):
    fam = mp_family("0.5", "0.9", policy)
    assert associated(fam, 8, 0, policy) == Polynomial([1])


def test_order_one_is_linear_in_anchor_coefficient(policy):
    fam = mp_family("0.5", "0.9", policy)
    for anchor in (3, 6, 11):
        with policy.workprec():
            expect = Polynomial([-fam.C(anchor), 1])
            assert (associated(fam, anchor, 1, policy) - expect).inf_norm() == 0


def test_order_two_unrolls_one_step(policy):
    fam = mp_family("0.5", "0.9", policy)
    with policy.workprec():
        lhs = associated(fam, 6, 2, policy)
        rhs = Polynomial([-fam.C(5), 1]) * Polynomial([-fam.C(6), 1]) - fam.Lambda(6) * Polynomial([1])
        assert (lhs - rhs).inf_norm() < policy.rel_tol


def test_degree_and_monicity(policy):
    for fam in (mp_family(20, "0.1", policy), pj_family(-35, 8, policy)):
        for n in range(0, 21):
            for m in range(0, n + 1):
                s = associated(fam, n, m, policy)
                assert s.degree == m
                assert s.coeffs[-1] == 1


def test_anchor_matters(policy):
    fam = mp_family("0.5", "0.9", policy)
    assert associated(fam, 10, 2, policy) != associated(fam, 9, 2, policy)


def test_bridge_identity_reduces_to_recurrence_at_gap_two(policy):
    fam = mp_family("0.5", "0.9", policy)
    for x in ("-1.5", "0.3", "4"):
        assert associated_identity_residual(fam, 9, 2, x, policy) < mp.ldexp(1, -200)


def test_bridge_identity_residuals_full_triangle(policy):
    rng = random.Random(3)
    for fam in (mp_family("0.5", "0.9", policy), pj_family(-35, 8, policy)):
        for n in range(2, 21):
            for m in range(2, n + 1):
                for _ in range(10):
                    x = rng.uniform(-4, 4)
                    assert associated_identity_residual(fam, n, m, x, policy) <= policy.rel_tol


def test_bridge_identity_residuals_other_parameters(policy):
    rng = random.Random(4)
    fam = mp_family(20, "0.1", policy)
    for n in (6, 13, 20):
        for m in range(2, n + 1, 4):
            for _ in range(3):
                x = rng.uniform(-4, 4)
                assert associated_identity_residual(fam, n, m, x, policy) <= policy.rel_tol


def test_bridge_identity_specific_points(policy):
    assert associated_identity_residual(mp_family("0.5", "0.9", policy), 10, 5, "0.7", policy) <= policy.rel_tol
    assert associated_identity_residual(pj_family(-35, 8, policy), 12, 7, "-2.1", policy) <= policy.rel_tol


def test_extension_identity_trivial_orders(policy):
    fam = pj_family(-35, 8, policy)
    for x in ("-2", "0.1"):
        assert extension_identity_residual(fam, 5, 0, x, policy) == 0
        assert extension_identity_residual(fam, 5, 1, x, policy) <= policy.rel_tol


def test_extension_identity_residuals_full_range(policy):
    rng = random.Random(5)
    for fam in (mp_family(20, "0.1", policy), pj_family(-26, -4, policy)):
        for n in range(1, 11):
            for m in range(0, 11):
                for _ in range(10):
                    x = rng.uniform(-4, 4)
                    assert extension_identity_residual(fam, n, m, x, policy) <= policy.rel_tol
    assert extension_identity_residual(mp_family(20, "0.1", policy), 6, 4, "3.3", policy) <= policy.rel_tol


def test_index_validation(policy):
    fam = mp_family("0.5", "0.9", policy)
    with pytest.raises(ValueError):
        associated(fam, 5, 6, policy)
    with pytest.raises(ValueError):
        associated_identity_residual(fam, 5, 1, 0, policy)
    with pytest.raises(ValueError):
        extension_identity_residual(fam, 0, 2, 0, policy)
    pj = pj_family("-5.5", 0, policy)
    with pytest.raises(ValueError):
        extension_identity_residual(pj, 3, 4, 0, policy)

"""Invariants as property tests; random data comes from hypothesis-drawn seeds."""

import random

import numpy as np
from hypothesis import given, strategies as st

from nilalg import GF, QQ, catalog
from nilalg.construct import abelian, direct_sum, heisenberg
from nilalg.fileformat import parse_algebra, serialize_algebra
from nilalg.isomorph import BasisChange, apply_basis_change, check_isomorphism, find_isomorphism, fingerprint, \
    random_basis_change
from nilalg.liealg import center, hypothesis_check, jacobi_check, lower_central_series, moneyhun_check
from nilalg.multiplier import ce_h2_dim, invariant_bundle, tail_multiplier
from nilalg.normal_form import NormalForm, batch_hypotheses, batch_tensors

SMALL = ("L5_9", "GH5", "H(1)", "H(2)", "A(3)", "F2(3)")
SEVEN = ("L1", "L2", "L3", "L4")
fields = st.sampled_from([GF(3), GF(5), GF(7)])
seeds = st.integers(0, 2 ** 32 - 1)


def moved(name, F, seed):
    L = catalog(name, F)
    return L, apply_basis_change(L, random_basis_change(F, L.dim, random.Random(seed)))


@given(st.sampled_from(SMALL + SEVEN), fields, seeds)
def test_basis_change_preserves_jacobi_and_invariants(name, F, seed):
    L, M = moved(name, F, seed)
    assert jacobi_check(M) == []
    assert fingerprint(M) == fingerprint(L)
    assert invariant_bundle(M) == invariant_bundle(L)


@given(st.sampled_from(SMALL + SEVEN), fields, seeds)
def test_multiplier_routes_agree(name, F, seed):
    _, M = moved(name, F, seed)
    assert ce_h2_dim(M) == tail_multiplier(M).dim_multiplier


@given(st.sampled_from(SMALL), st.sampled_from(SMALL[2:]), fields)
def test_direct_sum_multiplier_formula(a, b, F):
    # M(A + B) = M(A) + M(B) + (A/A^2) (x) (B/B^2)
    A, B = catalog(a, F), catalog(b, F)
    ab = lambda L: L.dim - lower_central_series(L)[1].dim  # noqa: E731
    S = direct_sum(A, B)
    assert jacobi_check(S) == []
    assert ce_h2_dim(S) == ce_h2_dim(A) + ce_h2_dim(B) + ab(A) * ab(B)


@given(st.sampled_from(SMALL + SEVEN), st.sampled_from([QQ, GF(3), GF(5)]))
def test_bounds(name, F):
    L = catalog(name, F)
    inv = invariant_bundle(L)
    assert moneyhun_check(L).holds
    assert 0 <= inv.t
    assert center(L).intersect(lower_central_series(L)[1]).dim <= inv.dim_multiplier


@given(st.sampled_from(SMALL + SEVEN), fields, seeds, seeds)
def test_group_action_laws(name, F, s1, s2):
    L = catalog(name, F)
    P = random_basis_change(F, L.dim, random.Random(s1))
    Q = random_basis_change(F, L.dim, random.Random(s2))
    assert apply_basis_change(L, BasisChange.identity(F, L.dim)) == L
    assert apply_basis_change(apply_basis_change(L, P), Q) == apply_basis_change(L, P.then(Q))
    assert apply_basis_change(apply_basis_change(L, P), P.inverse()) == L


@given(st.sampled_from(("L5_9", "H(1)", "A(3)", "GH5")), st.sampled_from([GF(3), GF(5)]), seeds)
def test_search_recovers_a_random_change(name, F, seed):
    L, M = moved(name, F, seed)
    res = find_isomorphism(L, M)
    assert isinstance(res, BasisChange) and check_isomorphism(L, M, res)


@given(st.sampled_from(SMALL + SEVEN), st.sampled_from([QQ, GF(5)]), seeds)
def test_text_round_trip(name, F, seed):
    _, M = moved(name, F, seed)
    assert parse_algebra(serialize_algebra(M)) == M


@given(st.sampled_from([3, 5]), st.lists(st.integers(0, 4), min_size=10, max_size=10))
def test_hypotheses_iff_two_dim_center_on_normal_forms(p, raw):
    F = GF(p)
    alpha = tuple(a % p for a in raw)
    L = NormalForm(F, alpha).algebra()
    exact = hypothesis_check(L).satisfies
    assert exact == (center(L).dim == 2)
    assert bool(batch_hypotheses(batch_tensors(np.array([alpha]), p), p)["satisfies"][0]) == exact


@given(st.integers(1, 3), st.integers(0, 3), fields)
def test_heisenberg_plus_abelian(m, k, F):
    L = direct_sum(heisenberg(m, F), abelian(k, F)) if k else heisenberg(m, F)
    assert jacobi_check(L) == []
    assert center(L).dim == 1 + k

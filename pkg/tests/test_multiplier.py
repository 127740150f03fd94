import random
from math import comb

import pytest

from nilalg import GF, QQ, catalog
from nilalg.construct import abelian, direct_sum, free_nilpotent_class2, heisenberg
from nilalg.errors import BadDefset
from nilalg.linalg import Subspace
from nilalg.multiplier import ce_h2_dim, invariant_bundle, tail_multiplier
from nilalg.normal_form import NormalForm

NORMAL_DEFSET = [(1, 2), (1, 3), (2, 3)]


@pytest.mark.parametrize("n", range(0, 7))
def test_abelian_multiplier(n):
    assert ce_h2_dim(abelian(n, QQ)) == comb(n, 2)
    assert tail_multiplier(abelian(n, QQ)).dim_multiplier == comb(n, 2)


@pytest.mark.parametrize("name, m", [("L1", 8), ("L2", 8), ("L3", 6), ("L4", 6)])
def test_catalog_multipliers(name, m):
    for F in (QQ, GF(3), GF(5)):
        L = catalog(name, F)
        assert ce_h2_dim(L) == m
        assert tail_multiplier(L).dim_multiplier == m


def test_heisenberg_multipliers():
    # dim M(H(1)) = 2, dim M(H(m)) = 2m^2 - m - 1 for m >= 2
    assert ce_h2_dim(heisenberg(1, QQ)) == 2 == tail_multiplier(heisenberg(1, QQ)).dim_multiplier
    for m in (2, 3):
        H = heisenberg(m, QQ)
        assert ce_h2_dim(H) == tail_multiplier(H).dim_multiplier == 2 * m * m - m - 1


@pytest.mark.parametrize("g", [2, 3, 4])
def test_free_class_two(g):
    # M(F/gamma_3 F) = gamma_3 F / gamma_4 F, of dimension (g^3 - g) / 3
    L = free_nilpotent_class2(g, QQ)
    assert ce_h2_dim(L) == tail_multiplier(L).dim_multiplier == (g ** 3 - g) // 3


def test_multiplier_of_direct_sum():
    # M(A + B) = M(A) + M(B) + A/A^2 (x) B/B^2
    A, B = heisenberg(1, QQ), abelian(2, QQ)
    assert ce_h2_dim(direct_sum(A, B)) == 2 + 1 + 2 * 2


def _pair_index():
    pairs = [(i, j) for i in range(1, 8) for j in range(i + 1, 8) if (i, j) not in NORMAL_DEFSET]
    return {k + 1: pq for k, pq in enumerate(pairs)}


def _printed_relations(F, a):
    """The Jacobi relations on s1..s18 for the normal form, as printed for the general tuple."""
    s = _pair_index()
    names = sorted(s)

    def form(coeffs):
        return tuple(F.canon(coeffs.get(k, 0)) for k in names)

    a1, a2, a3, a4, a5, a6, a7, a8, a9, a10 = a
    rels = [form({4: 1, 7: -1})]
    rels += [form({k: 1}) for k in (11, 12, 14, 15, 16, 17, 18)]
    rels.append(form({3: a5, 4: a6, 7: -a1, 8: -a2, 9: -1}))
    rels.append(form({3: a7, 4: a8, 7: -a3, 8: -a4, 10: -1}))
    rels.append(form({3: a9, 4: a10}))
    rels.append(form({7: a9, 8: a10}))
    return rels


def _relation_space(L):
    tp = tail_multiplier(L, NORMAL_DEFSET)
    index = _pair_index()
    assert tp.tails == tuple(index[k] for k in sorted(index))
    rows = [tuple(rel.coefficients.get(index[k], 0) for k in sorted(index)) for rel in tp.relations]
    return Subspace(L.field, 18, rows), tp


def test_l1_relation_pattern():
    L1 = catalog("L1", QQ)
    R, tp = _relation_space(L1)
    alpha = (1, 0, 0, 1, 0, 0, 0, 0, 0, 0)
    assert NormalForm(QQ, alpha).algebra() == L1
    assert R == Subspace(QQ, 18, _printed_relations(QQ, alpha))
    assert tp.dim_multiplier == 8


def test_l4_case2_relations_kill_tails():
    L4 = catalog("L4", QQ)
    alpha = (0, 0, 0, 0, 1, 0, 0, 0, 0, 1)
    assert NormalForm(QQ, alpha).algebra() == L4
    R, tp = _relation_space(L4)
    # alpha9 s3 + alpha10 s4 = 0 with alpha9 = 0, alpha10 = 1 kills s4
    s4 = tuple(int(k == 4) for k in range(1, 19))
    assert s4 in R
    assert R == Subspace(QQ, 18, _printed_relations(QQ, alpha))
    assert tp.dim_multiplier == 6


@pytest.mark.parametrize("F", [QQ, GF(3), GF(5), GF(7)], ids=str)
def test_relations_match_printed_family(F):
    rng = random.Random(17)
    for _ in range(25):
        if F == QQ:
            a = tuple(rng.randint(-3, 3) for _ in range(10))
        else:
            a = tuple(F.random(rng) for _ in range(10))
        L = NormalForm(F, a).algebra()
        R, _ = _relation_space(L)
        assert R == Subspace(F, 18, _printed_relations(F, [F.canon(x) for x in a])), a


def test_bad_defset():
    with pytest.raises(BadDefset):
        tail_multiplier(catalog("L1", QQ), [(1, 2), (1, 4), (4, 5)])
    with pytest.raises(BadDefset):
        tail_multiplier(catalog("L1", QQ), [(2, 1), (1, 3), (2, 3)])


def test_invariant_bundles():
    b = invariant_bundle(catalog("L1", QQ))
    assert (b.dim, b.dim_multiplier, b.t) == (7, 8, 13)
    b = invariant_bundle(catalog("L3", QQ))
    assert (b.dim_multiplier, b.t) == (6, 15)
    b = invariant_bundle(abelian(3, QQ))
    assert (b.dim_multiplier, b.t) == (3, 0)
    assert b.routes_agree


def test_describe_lists_relations():
    lines = tail_multiplier(heisenberg(1, QQ)).describe()
    assert lines == [] or all(line.startswith("J(") for line in lines)

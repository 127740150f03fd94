import pytest

from nilalg import GF, QQ, catalog
from nilalg.construct import (DerivationAction, abelian, central_product, direct_sum, free_nilpotent_class2,
                              heisenberg, is_derivation, l5_9, recognize_dim1_derived, semidirect_sum,
                              stem_decompose)
from nilalg.errors import AbelianInput, NotADerivation, NotCentralDomain, UnknownName, WrongDerivedDim
from nilalg.liealg import center, hypothesis_check, is_stem, jacobi_check, lower_central_series, quotient, series
from nilalg.linalg import Matrix, Subspace, unit_vector


def e(n, i):
    return unit_vector(n, i - 1)


def test_heisenberg_dimensions():
    H = heisenberg(1, QQ)
    s = series(H)
    assert H.dim == 3 and s.gamma_dims[1] == 1 and center(H).dim == 1 and s.nilpotency_class == 2


def test_free_class2_quotient_is_generalised_heisenberg():
    F3 = free_nilpotent_class2(3, QQ)
    assert F3.dim == 6
    Q = quotient(F3, Subspace(QQ, 6, [e(6, 6)])).algebra
    assert Q.dim == 5
    assert lower_central_series(Q)[1] == center(Q) and center(Q).dim == 2


def test_abelian_zero():
    assert abelian(0, QQ).dim == 0


def test_direct_sums():
    S = direct_sum(heisenberg(1, QQ), abelian(2, QQ))
    assert S.dim == 5 and center(S).dim == 3
    L = catalog("L1", QQ)
    assert direct_sum(abelian(0, QQ), L) == L
    assert not is_stem(direct_sum(l5_9(QQ), abelian(1, QQ)))


def test_zero_action_is_direct_sum():
    I, J = l5_9(QQ), abelian(2, QQ)
    zero = DerivationAction((Matrix.zeros(QQ, 5, 5),) * 2)
    assert semidirect_sum(I, J, zero) == direct_sum(I, J)


def test_clause_i_action():
    I = l5_9(QQ)
    act = DerivationAction.from_images(QQ, 5, [{0: e(5, 4)}])
    assert is_derivation(I, act.matrices[0])
    L = semidirect_sum(I, abelian(1, QQ), act)
    assert jacobi_check(L) == []
    # 0 != [I, A] inside Z(L)
    IA = L.bracket(e(6, 1), e(6, 6))
    assert IA != (0,) * 6 and IA in center(L)


def test_non_derivation_rejected():
    I = l5_9(QQ)
    act = DerivationAction.from_images(QQ, 5, [{0: e(5, 1)}])
    with pytest.raises(NotADerivation):
        semidirect_sum(I, abelian(1, QQ), act)


def test_central_product_of_heisenbergs():
    H = heisenberg(1, QQ)
    phi = Matrix(QQ, [(0, 0, 1, 0, 0, 1)])     # z of the first copy -> z of the second
    L = central_product(H, H, phi)
    assert L.dim == 5 and lower_central_series(L)[1].dim == 1


def test_empty_central_product_is_direct_sum():
    H = heisenberg(1, QQ)
    assert central_product(H, H, Matrix(QQ, [], 6)) == direct_sum(H, H)


def test_clause_ii_glue():
    # z of H(1) identified with x4 of L5_9: n = 2m + 5 = 7
    phi = Matrix(QQ, [(0, 0, 1) + e(5, 4)])
    L = central_product(heisenberg(1, QQ), l5_9(QQ), phi)
    assert L.dim == 7
    assert hypothesis_check(L).satisfies


def test_central_product_rejects_noncentral():
    phi = Matrix(QQ, [(1, 0, 0) + e(5, 4)])
    with pytest.raises(NotCentralDomain):
        central_product(heisenberg(1, QQ), l5_9(QQ), phi)


def test_stem_decomposition():
    d = stem_decompose(direct_sum(heisenberg(1, QQ), abelian(3, QQ)))
    assert d.stem.dim == 3 and d.abelian.dim == 3
    d = stem_decompose(catalog("L4", QQ))
    assert d.stem.dim == 7 and d.abelian.dim == 0
    with pytest.raises(AbelianInput):
        stem_decompose(abelian(5, QQ))


def test_dim1_derived():
    r = recognize_dim1_derived(heisenberg(1, QQ))
    assert (r.m, r.abelian_dim, r.capable) == (1, 0, True)
    r = recognize_dim1_derived(direct_sum(heisenberg(2, QQ), abelian(1, QQ)))
    assert (r.m, r.abelian_dim, r.capable) == (2, 1, False)
    with pytest.raises(WrongDerivedDim):
        recognize_dim1_derived(catalog("L1", QQ))


def test_catalog_presentations():
    L3 = catalog("L3", QQ)
    assert L3.bracket(e(7, 4), e(7, 5)) == e(7, 7)
    assert L3.bracket(e(7, 2), e(7, 3)) == e(7, 7)
    L4 = catalog("L4", GF(3))
    assert L4.bracket(e(7, 2), e(7, 4)) == e(7, 6)
    with pytest.raises(UnknownName):
        catalog("L9", QQ)


@pytest.mark.parametrize("name", ["A(3)", "H(2)", "F2(3)", "GH5", "L5_9", "L1", "L2", "L3", "L4"])
def test_catalog_entries_are_lie_algebras(name):
    for F in (QQ, GF(3), GF(5)):
        assert jacobi_check(catalog(name, F)) == []

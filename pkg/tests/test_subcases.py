import random

import pytest

from nilalg import GF, catalog
from nilalg.errors import UnknownName
from nilalg.isomorph import apply_basis_change, fingerprint
from nilalg.liealg import hypothesis_check
from nilalg.normal_form import NormalForm
from nilalg.subcases import LITERAL, SUBCASES, get_subcase, is_admissible, replay, sample_admissible

F5 = GF(5)


@pytest.mark.parametrize("name", ["1.1", "2.1", "3.1"])
def test_repaired_scripts_land_exactly(name):
    sub = SUBCASES[name]
    for nf in sample_admissible(sub, F5, random.Random(30), 10):
        out = replay(sub, nf)
        assert out.exact, nf
        assert out.final_table == dict(catalog(sub.target, F5).table)


@pytest.mark.parametrize("name", sorted(SUBCASES))
def test_replay_change_reproduces_final(name):
    sub = SUBCASES[name]
    for nf in sample_admissible(sub, F5, random.Random(31), 3):
        out = replay(sub, nf)
        final = apply_basis_change(nf.algebra(), out.change)
        assert dict(final.table) == out.final_table
        assert hypothesis_check(final).satisfies


@pytest.mark.parametrize("name", sorted(SUBCASES))
def test_samples_satisfy_case_conditions(name):
    sub = SUBCASES[name]
    for nf in sample_admissible(sub, F5, random.Random(32), 5):
        a = nf.alpha
        if sub.case == 1:
            assert a[8] == a[9] == 0
        if sub.case == 2:
            assert a[9] == 0 and a[8] != 0
        if sub.case == 3:
            assert a[8] == 0 and a[9] != 0
        assert all(a[i - 1] == a[j - 1] for i, j in sub.equalities)
        assert is_admissible(sub, nf)


def test_admissibility_rejects_wrong_case():
    sub = SUBCASES["3.1"]
    nf = sample_admissible(sub, F5, random.Random(33), 1)[0]
    a = list(nf.alpha)
    a[9] = 0
    assert not is_admissible(sub, NormalForm(F5, tuple(a)))


def test_admissibility_rejects_broken_equality():
    sub = SUBCASES["1.1"]
    a = list(sample_admissible(sub, F5, random.Random(34), 1)[0].alpha)
    a[5] = (a[0] + 1) % 5
    assert not is_admissible(sub, NormalForm(F5, tuple(a)))


def test_admissibility_rejects_failed_inversion():
    # a2 = 0 makes the `scale 4 by inv(a2)` step undefined
    sub = SUBCASES["1.1"]
    a = list(sample_admissible(sub, F5, random.Random(35), 1)[0].alpha)
    a[1] = 0
    assert not is_admissible(sub, NormalForm(F5, tuple(a)))


@pytest.mark.parametrize("name", sorted(LITERAL))
def test_literal_variants_stay_in_the_isomorphism_class(name):
    sub = LITERAL[name]
    for nf in sample_admissible(sub, F5, random.Random(36), 3):
        out = replay(sub, nf)
        final = apply_basis_change(nf.algebra(), out.change)
        assert fingerprint(final) == fingerprint(nf.algebra())


def test_lookup():
    assert get_subcase("2.1").target == "L4"
    assert get_subcase("2.1", literal=True).name == "2.1-literal"
    with pytest.raises(UnknownName):
        get_subcase("4.1")
    with pytest.raises(UnknownName):
        get_subcase("1.2", literal=True)


def test_scripts_declare_their_target():
    for sub in list(SUBCASES.values()) + list(LITERAL.values()):
        assert sub.script().target == sub.target

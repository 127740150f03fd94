import random

import pytest

from nilalg import GF, QQ, catalog
from nilalg.construct import abelian, heisenberg
from nilalg.errors import HypothesisFailure, UnknownName
from nilalg.isomorph import apply_basis_change, random_basis_change
from nilalg.liealg import center
from nilalg.linalg import Subspace, unit_vector
from nilalg.theorem_a import CLAUSES, clause_exemplar, theorem_a_classify
from nilalg.verify import verify_theorem_a


def span(n, *idx):
    return Subspace(QQ, n, [unit_vector(n, k - 1) for k in idx])


def test_base_case():
    w = theorem_a_classify(catalog("L5_9", QQ))
    assert w.clause == "base" and w.valid


def test_l5_9_witness_columns_realise_l5_9():
    L = clause_exemplar("v", QQ)
    w = theorem_a_classify(L)
    u, v, x3, x4, x5 = w.l5_9_basis.columns()
    assert L.bracket(u, v) == x3
    assert L.bracket(u, x3) == x4 and L.bracket(v, x3) == x5
    assert L.bracket(u, x4) == L.bracket(x3, x5) == (0,) * L.dim


def test_seven_dim_catalog_clauses():
    # L1, L2: [x4, x5] = 0 so the complement to I is abelian and acts on I
    for name in ("L1", "L2"):
        w = theorem_a_classify(catalog(name, QQ))
        assert w.clause == "i" and w.A.dim == 2 and w.valid
    # L3: T = <x4, x5, x7> is a Heisenberg ideal commuting with I
    w3 = theorem_a_classify(catalog("L3", QQ))
    assert w3.clause == "ii" and w3.m == 1
    assert w3.T == span(7, 4, 5, 7)
    # L4: the same T, now with [x2, x4] = x6 a line in the centre
    w4 = theorem_a_classify(catalog("L4", QQ))
    assert w4.clause == "vi" and w4.m == 1 and w4.valid


@pytest.mark.parametrize("clause", CLAUSES)
def test_exemplars_land_in_their_clause(clause):
    L = clause_exemplar(clause, QQ)
    w = theorem_a_classify(L)
    assert w.clause == clause
    assert w.valid, w.failed_checks()
    assert w.I.dim == 5
    assert center(L).dim == 2


def test_viii_variants():
    assert theorem_a_classify(clause_exemplar("viii", QQ)).variant == "central"
    w = theorem_a_classify(clause_exemplar("viii-action", QQ))
    assert w.clause == "viii" and w.variant == "action" and w.valid


# the clause records how I meets the complement, and another copy of L5_9
# can meet it differently; the complement's type and dim A do persist
FAMILY = {"i": "abelian", "ii": "T", "iv": "T", "vi": "T", "iii": "T+A", "v": "T+A", "vii": "T+A",
          "viii": "K", "ix": "K+A"}


@pytest.mark.parametrize("clause", sorted(FAMILY))
def test_classification_survives_a_basis_change(clause):
    F = GF(5)
    rng = random.Random(len(clause))
    L = clause_exemplar(clause, F)
    base = theorem_a_classify(L)
    for _ in range(5):
        w = theorem_a_classify(apply_basis_change(L, random_basis_change(F, L.dim, rng)))
        assert w.valid, w.failed_checks()
        assert FAMILY[w.clause] == FAMILY[clause]
        assert (w.m, w.r) == (base.m, base.r)


def test_clause_depends_on_the_chosen_copy_of_l5_9():
    # the ii exemplar is H(1) = <x1, x2, x6> glued to L5_9 = <x3, x4, x5, x6, x7>.
    # Renaming x3 + x1 as x3 makes the first copy of L5_9 found contain x3 + x1,
    # which no longer commutes with x2, so [I, T] != 0
    from nilalg.isomorph import BasisChange
    from nilalg.linalg import Matrix

    L = clause_exemplar("ii", QQ)
    n = L.dim
    cols = [unit_vector(n, k) for k in range(n)]
    cols[2] = tuple(a + b for a, b in zip(cols[2], cols[0]))
    w = theorem_a_classify(apply_basis_change(L, BasisChange(Matrix.from_columns(QQ, cols, n))))
    assert w.valid
    assert w.clause in ("iv", "vi")


@pytest.mark.parametrize("L", [abelian(5, QQ), heisenberg(2, QQ), catalog("GH5", QQ)], ids=["A5", "H2", "GH5"])
def test_hypothesis_failures(L):
    with pytest.raises(HypothesisFailure):
        theorem_a_classify(L)


def test_unknown_exemplar():
    with pytest.raises(UnknownName):
        clause_exemplar("x")


def test_verify_runner():
    runs = verify_theorem_a()
    assert {r.name for r in runs} == set(CLAUSES) | {"viii-action"}
    assert all(r.ok for r in runs), [r for r in runs if not r.ok]
    bad = verify_theorem_a({"A(5)": abelian(5, QQ), "L3": (catalog("L3", QQ), "ii")})
    assert not bad[0].ok and bad[0].error.startswith("hypotheses fail")
    assert bad[1].ok


def test_clause_vi_refinement_is_recorded_for_l4():
    # [I, T] = <x6> from [x2, x4] = x6, while T^2 = <x7>; x6 is outside T
    w = theorem_a_classify(catalog("L4", QQ))
    assert w.notes == {"[I, T] = T^2": False, "T is an ideal": False}


CORPUS = [c for c in CLAUSES if c != "base"] + ["viii-action"]


def _corpus(F):
    out = {c: clause_exemplar(c, F) for c in CORPUS}
    out.update({n: catalog(n, F) for n in ("L1", "L2", "L3", "L4")})
    return out


def test_witnesses_valid_under_100_basis_changes():
    F = GF(5)
    rng = random.Random(100)
    bad = []
    for name, L in _corpus(F).items():
        for _ in range(100):
            w = theorem_a_classify(apply_basis_change(L, random_basis_change(F, L.dim, rng)))
            if not w.valid:
                bad.append((name, w.clause, w.failed_checks()))
    assert bad == []


def test_clause_label_stability():
    """The clause label should not depend on the basis; counterexamples are listed on failure."""
    F = GF(5)
    rng = random.Random(101)
    unstable = {}
    for name, L in _corpus(F).items():
        base = theorem_a_classify(L).clause
        for _ in range(20):
            got = theorem_a_classify(apply_basis_change(L, random_basis_change(F, L.dim, rng))).clause
            if got != base:
                unstable.setdefault(f"{name} ({base})", set()).add(got)
    assert unstable == {}, {k: sorted(v) for k, v in unstable.items()}

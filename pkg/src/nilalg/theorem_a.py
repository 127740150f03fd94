"""Structure of stem algebras of class 3 with dim L^2 = 3 and Z(L) = gamma_3(L) of dimension 2.

Every such L of dimension n >= 6 is built from a copy I of L5_9 together with
one of: an abelian part A acting on I, a Heisenberg algebra T = H(m) sharing a
central line with I, or a rank-2 generalised Heisenberg algebra K sharing the
whole centre.  ``theorem_a_classify`` follows the constructive proof and
returns the pieces along with every side condition it checked.

Choices are deterministic: "first" always means the first basis pair in lex
order, and complements are pivot-greedy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .construct import (DerivationAction, abelian, central_product, gh5, heisenberg, l5_9,
                        recognize_dim1_derived, semidirect_sum, seven_dim)
from .errors import StructureMismatch, UnknownName
from .liealg import (LieAlgebra, bracket_space, center, centralizer, quotient, require_hypotheses,
                     series)
from .linalg import Matrix, Subspace, rank_rows, unit_vector
from .scalar import QQ, Field

CLAUSES = ("base", "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix")


@dataclass(frozen=True)
class ClauseWitness:
    clause: str
    I: Subspace
    l5_9_basis: Matrix          # columns u, v, [u,v], [u,[u,v]], [v,[u,v]] realise L5_9 exactly
    T: Subspace | None = None
    K: Subspace | None = None
    A: Subspace | None = None
    m: int | None = None        # T = H(m)
    r: int | None = None        # dim A
    variant: str | None = None  # viii / ix: "central" when [I, K] = 0, else "action"
    checks: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)   # recorded facts that do not affect the branch

    @property
    def valid(self) -> bool:
        return all(self.checks.values())

    def failed_checks(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def _l5_9_basis(L: LieAlgebra, u, v) -> tuple[Matrix, bool]:
    x3 = L.bracket(u, v)
    x4 = L.bracket(u, x3)
    x5 = L.bracket(v, x3)
    vecs = [tuple(u), tuple(v), x3, x4, x5]
    ok = rank_rows(L.field, vecs, L.dim) == 5
    expected = {(0, 1): 2, (0, 2): 3, (1, 2): 4}
    for a, b in combinations(range(5), 2):
        w = L.bracket(vecs[a], vecs[b])
        want = vecs[expected[(a, b)]] if (a, b) in expected else (0,) * L.dim
        ok = ok and w == want
    return Matrix.from_columns(L.field, vecs, L.dim), ok


def _center_of(L: LieAlgebra, S: Subspace) -> Subspace:
    return centralizer(L, S).intersect(S)


def _is_heisenberg(L: LieAlgebra, T: Subspace) -> bool:
    D = bracket_space(L, T, T)
    return D.dim == 1 and _center_of(L, T) == D and T.dim % 2 == 1


def theorem_a_classify(L: LieAlgebra) -> ClauseWitness:
    require_hypotheses(L)
    n = L.dim
    full = L.full()
    s = series(L)
    D = s.gamma[1]
    Z = center(L)

    if n == 5:
        u, v = _first_noncommuting_pair(L)
        P, ok = _l5_9_basis(L, u, v)
        return ClauseWitness("base", full, P, checks={"I = L5_9": ok})

    Q = quotient(L, Z)
    rep = recognize_dim1_derived(Q.algebra)
    if rep.m != 1:
        raise StructureMismatch(f"L/Z(L) = H({rep.m}) (+) A({rep.abelian_dim}), expected H(1) (+) A(n-5)")
    qa, qb = _first_noncommuting_pair(Q.algebra)
    w = Q.algebra.bracket(qa, qb)
    ZQ = center(Q.algebra)
    Hpart = Q.algebra.span([qa, qb, w])
    Ab = Q.algebra.span([w]).complement_in(ZQ)
    I1 = Q.preimage(Hpart)
    I2 = Q.preimage(Ab)
    u, v = Q.lift(qa), Q.lift(qb)
    P, iso_ok = _l5_9_basis(L, u, v)

    gI = bracket_space(L, I1, I1)
    checks = {
        "I = L5_9": iso_ok and I1.dim == 5,
        "gamma2(I) = L^2": gI == D,
        "Z(L) = Z(I) = gamma3(I) = gamma3(L)": (_center_of(L, I1) == Z and bracket_space(L, gI, I1) == Z
                                               and s.gamma[2] == Z),
        "I + I2 = L": (I1 + I2) == full,
    }

    D2 = bracket_space(L, I2, I2)
    if D2.dim == 0:
        A = Z.complement_in(I2)
        IA = bracket_space(L, I1, A)
        checks.update({
            "A abelian": bracket_space(L, A, A).dim == 0,
            "A meets Z(L) trivially": A.intersect(Z).dim == 0,
            "0 != [I, A] <= Z(L)": IA.dim > 0 and Z.contains(IA),
            "dim A = n - 5": A.dim == n - 5,
        })
        return ClauseWitness("i", I1, P, A=A, r=A.dim, checks=checks)

    ZI2 = _center_of(L, I2)
    if D2.dim == 1:
        zline = D2.complement_in(Z)
        A = Z.complement_in(ZI2)
        T = D2 + ZI2.complement_in(I2)
        m = (T.dim - 1) // 2
        IT = bracket_space(L, I1, T)
        checks.update({
            "T = H(m)": _is_heisenberg(L, T),
            "gamma2(T) < Z(L)": Z.contains(D2) and D2 != Z,
            "Z(L) = T^2 + <z>": (D2 + zline) == Z,
            "[A, T] = 0": bracket_space(L, A, T).dim == 0,
            "I + T + A = L": (I1 + T + A) == full,
        })
        if A.dim:
            IA = bracket_space(L, I1, A)
            checks["0 != [I, A] <= Z(L)"] = IA.dim > 0 and Z.contains(IA)
            checks["A meets Z(L) trivially"] = A.intersect(Z).dim == 0
            checks["n = 2m + 5 + r"] = n == 2 * m + 5 + A.dim
        else:
            checks["n = 2m + 5"] = n == 2 * m + 5
        table = {(0, False): "ii", (0, True): "iii", (2, False): "iv", (2, True): "v",
                 (1, False): "vi", (1, True): "vii"}
        clause = table[(IT.dim, A.dim > 0)]
        notes = {}
        if IT.dim == 2:
            checks["[I, T] = Z(L)"] = IT == Z
        elif IT.dim == 1:
            checks["[I, T] is a line in Z(L)"] = Z.contains(IT)
            # the refinement "if [I, T] = T^2 then T is an ideal", recorded only
            notes["[I, T] = T^2"] = IT == D2
            notes["T is an ideal"] = T.contains(bracket_space(L, full, T))
        return ClauseWitness(clause, I1, P, T=T, A=A if A.dim else None, m=m, r=A.dim or None, checks=checks,
                             notes=notes)

    if D2 != Z:
        raise StructureMismatch("derived algebra of I2 is two-dimensional but differs from Z(L)")
    A = Z.complement_in(ZI2)
    K = D2 + ZI2.complement_in(I2)
    IK = bracket_space(L, I1, K)
    KK = bracket_space(L, K, K)
    checks.update({
        "K^2 = Z(K) = Z(L)": KK == Z and _center_of(L, K) == Z,
        "[A, K] = 0": bracket_space(L, A, K).dim == 0,
        "[I, K] <= Z(L)": Z.contains(IK),
        "I + K + A = L": (I1 + K + A) == full,
    })
    if A.dim:
        IA = bracket_space(L, I1, A)
        checks["0 != [I, A] <= Z(L)"] = IA.dim > 0 and Z.contains(IA)
        checks["A meets Z(L) trivially"] = A.intersect(Z).dim == 0
        checks["dim K = n - 3 - r"] = K.dim == n - 3 - A.dim
    else:
        checks["dim K = n - 3"] = K.dim == n - 3
    variant = "central" if IK.dim == 0 else "action"
    return ClauseWitness("ix" if A.dim else "viii", I1, P, K=K, A=A if A.dim else None,
                         r=A.dim or None, variant=variant, checks=checks)


def _first_noncommuting_pair(L: LieAlgebra):
    for a, b in combinations(range(L.dim), 2):
        if L.table.get((a, b)):
            return unit_vector(L.dim, a), unit_vector(L.dim, b)
    raise StructureMismatch("algebra is abelian")


# --------------------------------------------------------------------------
# exemplars for each clause, assembled from the construct module


def _shift_action(F: Field, dim_i: int, source: int, target: int) -> DerivationAction:
    """A(1) acting on I by x_source -> x_target (0-based), zero elsewhere."""
    return DerivationAction.from_images(F, dim_i, [{source: unit_vector(dim_i, target)}])


def _glue(A: LieAlgebra, a_vecs, B: LieAlgebra, b_vecs) -> LieAlgebra:
    rows = [tuple(x) + tuple(y) for x, y in zip(a_vecs, b_vecs)]
    return central_product(A, B, Matrix(A.field, rows, A.dim + B.dim))


def clause_exemplar(clause: str, field: Field = QQ) -> LieAlgebra:
    """A small algebra (dim <= 9) in each clause, built by sums and products."""
    F = field
    base = l5_9(F)   # x1, x2, x3 = [x1,x2], x4 = [x1,x3], x5 = [x2,x3]
    e = lambda n, k: unit_vector(n, k)  # noqa: E731
    if clause == "base":
        return base
    if clause == "i":
        return semidirect_sum(base, abelian(1, F), _shift_action(F, 5, 0, 3))
    if clause == "ii":
        return _glue(heisenberg(1, F), [e(3, 2)], base, [e(5, 3)])
    if clause == "iii":
        Li = clause_exemplar("i", F)
        return _glue(heisenberg(1, F), [e(3, 2)], Li, [e(6, 4)])
    if clause == "iv":
        # ((L5_9 + <y>) + <t>): [x2, y] = x5, [t, x1] = x4, [t, y] = x5; T = <y, t, x5>
        N = semidirect_sum(base, abelian(1, F), DerivationAction.from_images(F, 5, [{1: tuple(-a for a in e(5, 4))}]))
        act = {0: e(6, 3), 5: e(6, 4)}
        return semidirect_sum(N, abelian(1, F), DerivationAction.from_images(F, 6, [act]))
    if clause == "v":
        Liv = clause_exemplar("iv", F)
        return semidirect_sum(Liv, abelian(1, F), _shift_action(F, 7, 0, 3))
    if clause == "vi":
        return seven_dim("L4", F)
    if clause == "vii":
        Lvi = seven_dim("L4", F)
        return semidirect_sum(Lvi, abelian(1, F), _shift_action(F, 7, 0, 5))
    if clause == "viii":
        K = gh5(F)   # [y1,y2] = y4, [y1,y3] = y5
        return _glue(base, [e(5, 3), e(5, 4)], K, [e(5, 3), e(5, 4)])
    if clause == "viii-action":
        # [x1, y3] = x4 on top of the central product (x4 sits at index 6 there)
        Lc = clause_exemplar("viii", F)
        return _twist(Lc, 0, 5, 6)
    if clause == "ix":
        Li = clause_exemplar("i", F)
        K = gh5(F)
        return _glue(Li, [e(6, 3), e(6, 4)], K, [e(5, 3), e(5, 4)])
    raise UnknownName(f"no exemplar for clause {clause!r}")


def _twist(L: LieAlgebra, a: int, b: int, c: int) -> LieAlgebra:
    """Add [x_a, x_b] += x_c (0-based) to an algebra; Jacobi is re-checked."""
    table = {ij: list(v) for ij, v in L.table.items()}
    key = (min(a, b), max(a, b))
    sign = 1 if a < b else -1
    vec = table.get(key, [0] * L.dim)
    vec[c] = L.field.canon(vec[c] + sign)
    table[key] = vec
    return LieAlgebra(L.field, L.dim, {k: tuple(v) for k, v in table.items()})

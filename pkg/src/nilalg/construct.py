"""Standard families, sums and products, and the named catalog."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import (AbelianInput, BadParameter, DimensionMismatch, FieldMismatch, JacobiFailure,
                     NotADerivation, NotCentralDomain, NotCentralImage, NotInjective, UnknownName,
                     WrongDerivedDim)
from .liealg import (LieAlgebra, center, derived, jacobi_failures, quotient)
from .linalg import Matrix, Subspace, is_zero, rank_rows, unit_vector
from .scalar import QQ, Field


def abelian(n: int, field: Field = QQ) -> LieAlgebra:
    if n < 0:
        raise BadParameter("A(n) needs n >= 0")
    return LieAlgebra(field, n, check=False)


def heisenberg(m: int, field: Field = QQ) -> LieAlgebra:
    """H(m): [x_i, x_{m+i}] = x_{2m+1}."""
    if m < 1:
        raise BadParameter("H(m) needs m >= 1")
    n = 2 * m + 1
    return LieAlgebra(field, n, {(i, m + i): {n - 1: 1} for i in range(m)}, check=False)


def free_nilpotent_class2(g: int, field: Field = QQ) -> LieAlgebra:
    """Generators x_1..x_g followed by [x_i, x_j] (i<j) in lex order."""
    if g < 2:
        raise BadParameter("the free class-2 algebra needs at least 2 generators")
    pairs = list(combinations(range(g), 2))
    n = g + len(pairs)
    return LieAlgebra(field, n, {pq: {g + r: 1} for r, pq in enumerate(pairs)}, check=False)


def direct_sum(A: LieAlgebra, B: LieAlgebra) -> LieAlgebra:
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")
    n, m = A.dim, B.dim
    table = {}
    for (i, j), v in A.table.items():
        table[(i, j)] = tuple(v) + (0,) * m
    for (i, j), v in B.table.items():
        table[(n + i, n + j)] = (0,) * n + tuple(v)
    return LieAlgebra(A.field, n + m, table, check=False)


@dataclass(frozen=True)
class DerivationAction:
    """``matrices[b]`` is the derivation of I by which the b-th basis vector of J acts.

    Column a of ``matrices[b]`` is ``[y_b, x_a]`` in the basis of I.
    """

    matrices: tuple

    @classmethod
    def from_images(cls, field: Field, dim_i: int, images: Sequence[dict]) -> "DerivationAction":
        """``images[b] = {a: vector}`` for 0-based a; unlisted basis vectors go to 0."""
        mats = []
        for img in images:
            cols = [tuple(img.get(a, (0,) * dim_i)) for a in range(dim_i)]
            mats.append(Matrix.from_columns(field, cols, dim_i))
        return cls(tuple(mats))


def is_derivation(I: LieAlgebra, D: Matrix) -> bool:
    n = I.dim
    for a, b in combinations(range(n), 2):
        ea, eb = unit_vector(n, a), unit_vector(n, b)
        lhs = D @ I.basis_bracket(a, b)
        r1 = I.bracket(D @ ea, eb)
        r2 = I.bracket(ea, D @ eb)
        if tuple(I.field.canon(x - y - z) for x, y, z in zip(lhs, r1, r2)) != (0,) * n:
            return False
    return True


def semidirect_sum(I: LieAlgebra, J: LieAlgebra, action: DerivationAction) -> LieAlgebra:
    """I (+) J with I an ideal, basis of I first; ``[y_b, x_a] = action.matrices[b] x_a``."""
    if I.field != J.field:
        raise FieldMismatch(f"{I.field} vs {J.field}")
    if len(action.matrices) != J.dim:
        raise DimensionMismatch(f"{len(action.matrices)} derivations for {J.dim} basis vectors of J")
    n, m = I.dim, J.dim
    for b, D in enumerate(action.matrices):
        if D.shape != (n, n):
            raise DimensionMismatch(f"derivation {b + 1} has shape {D.shape}")
        if not is_derivation(I, D):
            raise NotADerivation(f"matrix for basis vector {b + 1} of J is not a derivation of I")
    table = {}
    for (i, j), v in I.table.items():
        table[(i, j)] = tuple(v) + (0,) * m
    for (i, j), v in J.table.items():
        table[(n + i, n + j)] = (0,) * n + tuple(v)
    F = I.field
    for b, D in enumerate(action.matrices):
        for a in range(n):
            col = D.column(a)
            if not is_zero(col):
                # [x_a, y_b] = -[y_b, x_a]
                table[(a, n + b)] = tuple(F.canon(-c) for c in col) + (0,) * m
    L = LieAlgebra(F, n + m, table, check=False)
    bad = jacobi_failures(L)
    if bad:
        i, j, k = bad[0]
        raise JacobiFailure((i + 1, j + 1, k + 1))
    return L


def central_product(A: LieAlgebra, B: LieAlgebra, phi: Matrix) -> LieAlgebra:
    """Glue A and B along central subspaces.

    ``phi`` has one row per identified vector: the first ``A.dim`` entries are
    a central vector z of A and the remaining ``B.dim`` entries its image
    phi(z) in Z(B).  The result is (A (+) B) / span{(z, -phi(z))}.
    """
    if A.field != B.field or phi.field != A.field:
        raise FieldMismatch("central product needs a common field")
    n, m = A.dim, B.dim
    if phi.ncols != n + m:
        raise DimensionMismatch(f"phi must have {n + m} columns, got {phi.ncols}")
    F = A.field
    ZA, ZB = center(A), center(B)
    dom = [r[:n] for r in phi.rows]
    img = [r[n:] for r in phi.rows]
    for z in dom:
        if z not in ZA:
            raise NotCentralDomain("phi is defined on a vector outside Z(A)")
    for w in img:
        if w not in ZB:
            raise NotCentralImage("phi maps into a vector outside Z(B)")
    k = phi.nrows
    if rank_rows(F, dom, n) != k or rank_rows(F, img, m) != k:
        raise NotInjective("phi must be an injective map given on a basis of its domain")
    S = direct_sum(A, B)
    glue = Subspace(F, n + m, [tuple(z) + tuple(F.canon(-a) for a in w) for z, w in zip(dom, img)])
    return quotient(S, glue).algebra


@dataclass(frozen=True)
class StemDecomposition:
    stem: Subspace      # contains L^2, with Z(stem) inside stem^2
    abelian: Subspace   # central, meets L^2 trivially


def stem_decompose(L: LieAlgebra) -> StemDecomposition:
    """L = S (+) A with A central abelian and S a stem subalgebra containing L^2."""
    if L.is_abelian():
        raise AbelianInput("abelian algebras have no stem part")
    Z = center(L)
    D = derived(L)
    A = Z.intersect(D).complement_in(Z)
    C = (D + A).complement_in(L.full())
    return StemDecomposition(D + C, A)


@dataclass(frozen=True)
class Dim1Report:
    """L = H(m) (+) A(k) for an algebra with one-dimensional derived algebra."""

    m: int
    abelian_dim: int
    capable: bool
    heisenberg_part: Subspace
    abelian_part: Subspace


def recognize_dim1_derived(L: LieAlgebra) -> Dim1Report:
    D = derived(L)
    if D.dim != 1:
        raise WrongDerivedDim(f"dim L^2 = {D.dim}, need 1")
    Z = center(L)
    m, rem = divmod(L.dim - Z.dim, 2)
    if rem:  # pragma: no cover - alternating forms have even rank
        raise AssertionError("odd codimension of the centre")
    A = D.complement_in(Z)
    T = D + Z.complement_in(L.full())
    return Dim1Report(m, A.dim, m == 1, T, A)


# --------------------------------------------------------------------------
# catalog

_NORMAL_BASE = {(1, 2): 3, (1, 3): 6, (2, 3): 7}

_SEVEN = {
    "L1": {(1, 4): 6, (1, 5): 7},
    "L2": {(2, 4): 6, (1, 5): 7},
    "L3": {(4, 5): 7},
    "L4": {(2, 4): 6, (4, 5): 7},
}


def l5_9(field: Field = QQ) -> LieAlgebra:
    """The unique 5-dimensional stem algebra of class 3 with dim L^2 = 3 and Z(L) = gamma_3."""
    return LieAlgebra.from_brackets(field, 5, {(1, 2): 3, (1, 3): 4, (2, 3): 5}, check=False)


def gh5(field: Field = QQ) -> LieAlgebra:
    """Rank-2 generalised Heisenberg algebra of dimension 5: free class 2 on 3 generators mod one central line."""
    F3 = free_nilpotent_class2(3, field)
    return quotient(F3, Subspace(field, F3.dim, [unit_vector(F3.dim, 5)])).algebra


def seven_dim(name: str, field: Field = QQ) -> LieAlgebra:
    return LieAlgebra.from_brackets(field, 7, {**_NORMAL_BASE, **_SEVEN[name]}, check=False)


CATALOG_NAMES = ("L5_9", "L1", "L2", "L3", "L4", "GH5")

_PARAM_RE = re.compile(r"^(A|H|F2)\((\d+)\)$")


def catalog(name: str, field: Field = QQ) -> LieAlgebra:
    """Named algebras: L5_9, L1..L4, GH5, A(n), H(m), F2(g) (free class 2 on g generators)."""
    key = name.strip()
    if key == "L5_9":
        return l5_9(field)
    if key in _SEVEN:
        return seven_dim(key, field)
    if key == "GH5":
        return gh5(field)
    m = _PARAM_RE.match(key)
    if m:
        k = int(m.group(2))
        return {"A": abelian, "H": heisenberg, "F2": free_nilpotent_class2}[m.group(1)](k, field)
    raise UnknownName(f"no catalog entry named {name!r}")

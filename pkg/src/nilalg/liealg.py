"""Finite-dimensional Lie algebras given by structure constants.

Basis indices are 0-based in code and 1-based in every text format.  The
bracket table stores ``[e_i, e_j]`` for ``i < j`` only; antisymmetry fills in
the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from .errors import (BadParameter, DimensionMismatch, FieldMismatch, HypothesisFailure,
                     JacobiFailure, NotAnIdeal, NotApplicable, NotContained, NotNilpotent)
from .linalg import Matrix, Subspace, is_zero, lin_comb, nullspace_rows, unit_vector
from .scalar import Field


class LieAlgebra:
    __slots__ = ("field", "dim", "table", "_sparse", "_hash")

    def __init__(self, field: Field, dim: int, brackets: Mapping = (), *, check: bool = True):
        if dim < 0:
            raise BadParameter("dimension must be non-negative")
        table: dict[tuple[int, int], tuple] = {}
        items = brackets.items() if isinstance(brackets, Mapping) else brackets
        for (i, j), v in items:
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch(f"bracket index ({i + 1},{j + 1}) outside dimension {dim}")
            v = self._as_vector(field, dim, v)
            if i == j:
                if not is_zero(v):
                    raise BadParameter(f"[e{i + 1},e{i + 1}] must vanish")
                continue
            if i > j:
                i, j = j, i
                v = tuple(field.canon(-a) for a in v)
            if (i, j) in table and table[(i, j)] != v:
                raise BadParameter(f"conflicting values for [e{i + 1},e{j + 1}]")
            if not is_zero(v):
                table[(i, j)] = v
        self.field = field
        self.dim = dim
        self.table = dict(sorted(table.items()))
        sparse = [[() for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in self.table.items():
            sparse[i][j] = tuple((k, a) for k, a in enumerate(v) if a)
            sparse[j][i] = tuple((k, field.canon(-a)) for k, a in enumerate(v) if a)
        self._sparse = sparse
        self._hash = None
        if check:
            require_jacobi(self)

    @staticmethod
    def _as_vector(field, dim, v):
        if isinstance(v, Mapping):
            out = [0] * dim
            for k, a in v.items():
                if not 0 <= k < dim:
                    raise DimensionMismatch(f"basis index {k + 1} outside dimension {dim}")
                out[k] = field.canon(a)
            return tuple(out)
        v = tuple(field.canon(a) for a in v)
        if len(v) != dim:
            raise DimensionMismatch(f"bracket value of length {len(v)} in dimension {dim}")
        return v

    @classmethod
    def from_brackets(cls, field: Field, dim: int, brackets: Mapping, *, check=True) -> "LieAlgebra":
        """Build from 1-based ``{(i, j): {k: coeff}}`` data, as brackets are usually written."""
        data = {}
        for (i, j), rhs in brackets.items():
            if isinstance(rhs, int) and not isinstance(rhs, bool):
                rhs = {rhs: 1}
            data[(i - 1, j - 1)] = {k - 1: a for k, a in rhs.items()}
        return cls(field, dim, data, check=check)

    # -- arithmetic -----------------------------------------------------

    def basis_bracket(self, i: int, j: int) -> tuple:
        out = [0] * self.dim
        for k, a in self._sparse[i][j]:
            out[k] = a
        return tuple(out)

    def bracket(self, u: Sequence, v: Sequence) -> tuple:
        n = self.dim
        acc = [0] * n
        sp = self._sparse
        for i, ui in enumerate(u):
            if ui:
                row = sp[i]
                for j, vj in enumerate(v):
                    if vj and row[j]:
                        f = ui * vj
                        for k, a in row[j]:
                            acc[k] += f * a
        canon = self.field.canon
        return tuple(canon(a) for a in acc)

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> [x, y]``; column k is ``[x, e_k]``."""
        cols = [self.bracket(x, unit_vector(self.dim, k)) for k in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim) if self.dim else Matrix.zeros(self.field, 0, 0)

    def ad_columns(self, x: Sequence) -> list[tuple]:
        return [self.bracket(x, unit_vector(self.dim, k)) for k in range(self.dim)]

    def structure_constant(self, i: int, j: int, k: int):
        """Coefficient of ``e_k`` in ``[e_i, e_j]`` (0-based)."""
        for kk, a in self._sparse[i][j]:
            if kk == k:
                return a
        return 0

    def unit(self, i: int) -> tuple:
        return unit_vector(self.dim, i)

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def span(self, vectors) -> Subspace:
        return Subspace(self.field, self.dim, vectors)

    def change_field(self, field: Field, *, check=True) -> "LieAlgebra":
        """Same table read in another field (e.g. reduce rational constants mod p)."""
        return LieAlgebra(field, self.dim, {ij: tuple(field.canon(a) for a in v) for ij, v in self.table.items()},
                          check=check)

    def is_abelian(self) -> bool:
        return not self.table

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra) and self.field == other.field
                and self.dim == other.dim and self.table == other.table)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.dim, tuple(self.table.items())))
        return self._hash

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, field={self.field}, brackets={len(self.table)})"

    def describe(self) -> str:
        lines = []
        for (i, j), v in self.table.items():
            lines.append(f"[{i + 1},{j + 1}] = " + format_vector(self.field, v))
        return "\n".join(lines) if lines else "(abelian)"


def format_vector(F: Field, v: Sequence) -> str:
    terms = []
    for k, a in enumerate(v):
        if a:
            terms.append(f"x{k + 1}" if a == 1 else f"{F.fmt(a)}*x{k + 1}")
    return " + ".join(terms) if terms else "0"


def bracket(L: LieAlgebra, u: Sequence, v: Sequence) -> tuple:
    return L.bracket(u, v)


def jacobi_failures(L: LieAlgebra) -> list[tuple[int, int, int]]:
    n = L.dim
    F = L.field
    bad = []
    units = [unit_vector(n, i) for i in range(n)]
    for i, j, k in combinations(range(n), 3):
        a = L.bracket(L.basis_bracket(i, j), units[k])
        b = L.bracket(L.basis_bracket(j, k), units[i])
        c = L.bracket(L.basis_bracket(k, i), units[j])
        if any(F.canon(x + y + z) for x, y, z in zip(a, b, c)):
            bad.append((i, j, k))
    return bad


def jacobi_check(L: LieAlgebra) -> list[tuple[int, int, int]]:
    """1-based basis triples i < j < k on which the Jacobi identity fails."""
    return [(i + 1, j + 1, k + 1) for i, j, k in jacobi_failures(L)]


def require_jacobi(L: LieAlgebra) -> None:
    bad = jacobi_check(L)
    if bad:
        raise JacobiFailure(bad[0])


# --------------------------------------------------------------------------
# subspaces built from brackets


def bracket_space(L: LieAlgebra, U: Subspace, V: Subspace) -> Subspace:
    """``[U, V]`` = span of brackets of basis vectors."""
    vecs = [L.bracket(u, v) for u in U.basis for v in V.basis]
    return Subspace(L.field, L.dim, vecs)


def derived(L: LieAlgebra) -> Subspace:
    return Subspace(L.field, L.dim, L.table.values())


def centralizer(L: LieAlgebra, S: Subspace) -> Subspace:
    """``{x : [x, s] = 0 for all s in S}``."""
    n = L.dim
    rows = []
    for s in S.basis:
        cols = [L.bracket(unit_vector(n, i), s) for i in range(n)]
        rows.extend(zip(*cols))
    if not rows:
        return L.full()
    return Subspace(L.field, n, nullspace_rows(L.field, rows, n))


def center(L: LieAlgebra) -> Subspace:
    return centralizer(L, L.full())


def preimage_of_central(L: LieAlgebra, Z: Subspace) -> Subspace:
    """``{x : [x, L] <= Z}``, the next term of the upper central series above Z."""
    n = L.dim
    free = Z.free_columns()
    rows = []
    units = [unit_vector(n, i) for i in range(n)]
    for j in range(n):
        cols = [Z.reduce(L.bracket(units[i], units[j])) for i in range(n)]
        for k in free:
            rows.append(tuple(c[k] for c in cols))
    if not rows:
        return L.full()
    return Subspace(L.field, n, nullspace_rows(L.field, rows, n))


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    """[gamma_1 = L, gamma_2, ...] ending at the first repeat (0 for nilpotent L)."""
    terms = [L.full()]
    full = terms[0]
    while True:
        nxt = bracket_space(L, terms[-1], full)
        if nxt == terms[-1]:
            return terms
        terms.append(nxt)
        if nxt.dim == 0:
            return terms


def upper_central_series(L: LieAlgebra) -> list[Subspace]:
    """[Z_0 = 0, Z_1 = Z(L), ...] ending at the first repeat (L for nilpotent L)."""
    terms = [Subspace.zero(L.field, L.dim)]
    while True:
        nxt = preimage_of_central(L, terms[-1])
        if nxt == terms[-1]:
            return terms
        terms.append(nxt)
        if nxt.dim == L.dim:
            return terms


@dataclass(frozen=True)
class SeriesReport:
    gamma: tuple       # gamma_1 = L, ..., gamma_{c+1} = 0
    zeta: tuple        # Z_0 = 0, Z_1, ..., Z_c = L
    nilpotency_class: int

    @property
    def gamma_dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.gamma)

    @property
    def zeta_dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.zeta)

    def term(self, i: int) -> Subspace:
        """gamma_i for i >= 1, zero past the end."""
        if i - 1 < len(self.gamma):
            return self.gamma[i - 1]
        return self.gamma[-1]


def series(L: LieAlgebra) -> SeriesReport:
    gamma = lower_central_series(L)
    if gamma[-1].dim != 0:
        raise NotNilpotent(f"lower central series stabilises at dimension {gamma[-1].dim}")
    zeta = upper_central_series(L)
    cls = len(gamma) - 1
    if len(zeta) - 1 != cls:  # pragma: no cover - a theorem, kept as a tripwire
        raise AssertionError("upper and lower central series lengths disagree")
    return SeriesReport(tuple(gamma), tuple(zeta), cls)


def nilpotency_class(L: LieAlgebra) -> int:
    return series(L).nilpotency_class


def is_subalgebra(L: LieAlgebra, S: Subspace) -> bool:
    return all(L.bracket(u, v) in S for u, v in combinations(S.basis, 2))


def is_ideal(L: LieAlgebra, S: Subspace) -> bool:
    n = L.dim
    return all(L.bracket(unit_vector(n, i), s) in S for i in range(n) for s in S.basis)


def subalgebra_close(L: LieAlgebra, vectors) -> Subspace:
    S = Subspace(L.field, L.dim, vectors)
    while True:
        new = S + bracket_space(L, S, S)
        if new == S:
            return S
        S = new


def ideal_close(L: LieAlgebra, vectors) -> Subspace:
    S = Subspace(L.field, L.dim, vectors)
    full = L.full()
    while True:
        new = S + bracket_space(L, S, full)
        if new == S:
            return S
        S = new


def generated_series(L: LieAlgebra, K: Subspace) -> list[Subspace]:
    """Lower central series of the subalgebra K, as subspaces of L."""
    terms = [K]
    while terms[-1].dim:
        nxt = bracket_space(L, terms[-1], K)
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return terms


# --------------------------------------------------------------------------
# quotients and subalgebras as algebras


@dataclass(frozen=True)
class Quotient:
    """``L / I`` on the pivot-greedy coordinate complement of ``I``.

    ``columns[a]`` is the coordinate of L lifted to quotient basis vector a.
    """

    algebra: LieAlgebra
    ideal: Subspace
    columns: tuple

    def project(self, v: Sequence) -> tuple:
        r = self.ideal.reduce(v)
        return tuple(r[k] for k in self.columns)

    def lift(self, coords: Sequence) -> tuple:
        out = [0] * self.ideal.ambient_dim
        for k, a in zip(self.columns, coords):
            out[k] = a
        return tuple(out)

    def preimage(self, S: Subspace) -> Subspace:
        return Subspace(self.ideal.field, self.ideal.ambient_dim, [self.lift(v) for v in S.basis] + list(self.ideal.basis))

    @property
    def projection(self) -> Matrix:
        n = self.ideal.ambient_dim
        cols = [self.project(unit_vector(n, i)) for i in range(n)]
        return Matrix.from_columns(self.ideal.field, cols, len(self.columns))


def quotient(L: LieAlgebra, I: Subspace) -> Quotient:
    if I.field != L.field:
        raise FieldMismatch(f"{I.field} vs {L.field}")
    if not is_ideal(L, I):
        raise NotAnIdeal("subspace is not an ideal")
    cols = tuple(I.free_columns())
    n = L.dim
    table = {}
    for a, b in combinations(range(len(cols)), 2):
        r = I.reduce(L.bracket(unit_vector(n, cols[a]), unit_vector(n, cols[b])))
        v = tuple(r[k] for k in cols)
        if not is_zero(v):
            table[(a, b)] = v
    Q = LieAlgebra(L.field, len(cols), table, check=False)
    return Quotient(Q, I, cols)


@dataclass(frozen=True)
class SubalgebraView:
    """A subalgebra S of L rebuilt as an algebra in the RREF basis of S."""

    algebra: LieAlgebra
    space: Subspace

    def include(self, coords: Sequence) -> tuple:
        return lin_comb(self.space.field, coords, self.space.basis, self.space.ambient_dim)

    def coordinates(self, v: Sequence) -> tuple:
        return self.space.coordinates(v)


def restrict(L: LieAlgebra, S: Subspace) -> SubalgebraView:
    if not is_subalgebra(L, S):
        raise NotContained("subspace is not closed under the bracket")
    table = {}
    for a, b in combinations(range(S.dim), 2):
        v = S.coordinates(L.bracket(S.basis[a], S.basis[b]))
        if not is_zero(v):
            table[(a, b)] = v
    return SubalgebraView(LieAlgebra(L.field, S.dim, table, check=False), S)


# --------------------------------------------------------------------------
# hypothesis checks and small invariants


@dataclass(frozen=True)
class HypothesisReport:
    """The standing hypotheses: class 3, dim L^2 = 3, Z(L) = gamma_3, dim Z(L) = 2, stem."""

    nilpotency_class: int | None
    dim_derived: int
    dim_center: int
    dim_gamma3: int
    center_is_gamma3: bool
    is_stem: bool

    @property
    def class_is_3(self) -> bool:
        return self.nilpotency_class == 3

    @property
    def satisfies(self) -> bool:
        return (self.class_is_3 and self.dim_derived == 3 and self.dim_center == 2
                and self.center_is_gamma3 and self.is_stem)

    def failed(self) -> list[str]:
        out = []
        if not self.class_is_3:
            out.append(f"class is {self.nilpotency_class}, not 3")
        if self.dim_derived != 3:
            out.append(f"dim L^2 = {self.dim_derived}, not 3")
        if self.dim_center != 2:
            out.append(f"dim Z(L) = {self.dim_center}, not 2")
        if not self.center_is_gamma3:
            out.append("Z(L) != gamma_3(L)")
        if not self.is_stem:
            out.append("Z(L) is not inside L^2")
        return out


def hypothesis_check(L: LieAlgebra) -> HypothesisReport:
    gamma = lower_central_series(L)
    Z = center(L)
    nilpotent = gamma[-1].dim == 0
    cls = len(gamma) - 1 if nilpotent else None
    d2 = gamma[1].dim if len(gamma) > 1 else 0
    g2 = gamma[1] if len(gamma) > 1 else Subspace.zero(L.field, L.dim)
    g3 = gamma[2] if len(gamma) > 2 else Subspace.zero(L.field, L.dim)
    return HypothesisReport(cls, d2, Z.dim, g3.dim, Z == g3, g2.contains(Z))


def require_hypotheses(L: LieAlgebra) -> HypothesisReport:
    rep = hypothesis_check(L)
    if not rep.satisfies:
        raise HypothesisFailure(rep)
    return rep


def is_stem(L: LieAlgebra) -> bool:
    return derived(L).contains(center(L))


@dataclass(frozen=True)
class MoneyhunReport:
    """dim L^2 against the bound n(n-1)/2, where n = dim L / Z(L)."""

    n: int
    bound: int
    dim_derived: int
    holds: bool


def moneyhun_check(L: LieAlgebra) -> MoneyhunReport:
    n = L.dim - center(L).dim
    bound = comb(n, 2)
    d = derived(L).dim
    return MoneyhunReport(n, bound, d, d <= bound)


def t_invariant(L: LieAlgebra) -> int:
    """n(n-1)/2 - dim M(L)."""
    from .multiplier import ce_h2_dim

    return comb(L.dim, 2) - ce_h2_dim(L)


def t_of_derived(L: LieAlgebra) -> int:
    """n(n-1)/2 - dim L^2 with n = dim L / Z(L): the slack in the Moneyhun bound."""
    rep = moneyhun_check(L)
    return rep.bound - rep.dim_derived


def proposition_class_check(L: LieAlgebra) -> bool:
    """gamma_{c-i} is not inside Z_i for every 0 < i <= c - 1 (c = class, at least 2)."""
    s = series(L)
    c = s.nilpotency_class
    if c < 2:
        raise NotApplicable(f"class is {c}; the check needs class at least 2")
    return all(not s.zeta[i].contains(s.term(c - i)) for i in range(1, c))


def lemma_low_check(L: LieAlgebra, K: Subspace) -> bool:
    """For a subalgebra K with L^2 = K^2 + L^3, check K^i = L^i for i >= 2 and K is an ideal."""
    if not is_subalgebra(L, K):
        raise NotApplicable("K is not a subalgebra")
    gL = series(L).gamma
    gK = generated_series(L, K)
    K2 = gK[1] if len(gK) > 1 else Subspace.zero(L.field, L.dim)
    L3 = gL[2] if len(gL) > 2 else Subspace.zero(L.field, L.dim)
    if gL[1] != K2 + L3:
        raise NotApplicable("L^2 != K^2 + L^3")
    zero = Subspace.zero(L.field, L.dim)
    for i in range(1, max(len(gL), len(gK))):
        a = gL[i] if i < len(gL) else zero
        b = gK[i] if i < len(gK) else zero
        if a != b:
            return False
    return is_ideal(L, K)

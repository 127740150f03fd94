"""Dimension of the Schur multiplier M(L) = H_2(L), computed two independent ways.

``ce_h2_dim`` uses the Chevalley-Eilenberg chain complex
``Lambda^3 L -> Lambda^2 L -> L`` directly.  ``tail_multiplier`` builds the
universal central extension by attaching one central "tail" ``s_ij`` to every
bracket ``[x_i, x_j]``, kills the tails on a defining set of pairs whose
brackets form a basis of ``L^2``, and lets the Jacobi identity in the
extension cut down the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable

from .errors import BadDefset
from .liealg import LieAlgebra, derived, moneyhun_check, series
from .linalg import rank_rows, rref_rows
from .scalar import Field


def _wedge2_index(n: int) -> dict[tuple[int, int], int]:
    return {pair: r for r, pair in enumerate(combinations(range(n), 2))}


def boundary2(L: LieAlgebra) -> list[tuple]:
    """Rows of d2: Lambda^2 -> L, one per basis pair (i<j) in lex order: x_i ^ x_j -> -[x_i, x_j]."""
    F = L.field
    return [tuple(F.canon(-a) for a in L.basis_bracket(i, j)) for i, j in combinations(range(L.dim), 2)]


def boundary3(L: LieAlgebra) -> list[tuple]:
    """Rows of d3: Lambda^3 -> Lambda^2.

    x ^ y ^ z -> [x,y] ^ z - [x,z] ^ y + [y,z] ^ x, written in the lex basis of
    Lambda^2.
    """
    n = L.dim
    F = L.field
    idx = _wedge2_index(n)
    rows = []
    for i, j, k in combinations(range(n), 3):
        row = [0] * len(idx)
        for (a, b), w, sign in (((i, j), k, 1), ((i, k), j, -1), ((j, k), i, 1)):
            for m, c in enumerate(L.basis_bracket(a, b)):
                if c and m != w:
                    if m < w:
                        row[idx[(m, w)]] += sign * c
                    else:
                        row[idx[(w, m)]] -= sign * c
        rows.append(tuple(F.canon(a) for a in row))
    return rows


def ce_h2_dim(L: LieAlgebra) -> int:
    """dim ker d2 - rank d3."""
    n = L.dim
    if n < 2:
        return 0
    pairs = comb(n, 2)
    r2 = rank_rows(L.field, boundary2(L), n)
    r3 = rank_rows(L.field, boundary3(L), pairs) if n >= 3 else 0
    return pairs - r2 - r3


@dataclass(frozen=True)
class TailRelation:
    triple: tuple[int, int, int]   # 1-based basis triple whose Jacobi identity produced it
    coefficients: dict             # 1-based tail pair -> coefficient


@dataclass(frozen=True)
class TailPresentation:
    field: Field
    dim: int
    defset: tuple                  # 1-based pairs whose tails are set to zero
    tails: tuple                   # surviving 1-based pairs, in lex order
    relations: tuple               # nonzero TailRelation rows, one per triple
    rank: int
    dim_multiplier: int

    def tail_name(self, pair) -> str:
        """Pairs outside the defining set numbered s1, s2, ... in lex order."""
        return f"s{self.tails.index(tuple(pair)) + 1}"

    def reduced_relations(self) -> list[dict]:
        """RREF of the relation matrix, each row as {pair: coeff}."""
        rows = [tuple(rel.coefficients.get(t, 0) for t in self.tails) for rel in self.relations]
        red, _ = rref_rows(self.field, rows, len(self.tails)) if rows else ([], [])
        return [{t: a for t, a in zip(self.tails, r) if a} for r in red]

    def describe(self) -> list[str]:
        out = []
        for rel in self.relations:
            terms = " + ".join(f"{self.field.fmt(c)}*{self.tail_name(t)}" for t, c in rel.coefficients.items())
            out.append(f"J{rel.triple}: {terms} = 0")
        return out


def default_defset(L: LieAlgebra) -> list[tuple[int, int]]:
    """Lex-greedy: keep a pair when its bracket is independent of those kept so far."""
    F = L.field
    kept, rows = [], []
    target = derived(L).dim
    for i, j in combinations(range(L.dim), 2):
        if len(kept) == target:
            break
        v = L.basis_bracket(i, j)
        if any(v) and rank_rows(F, rows + [v], L.dim) > len(rows):
            rows.append(v)
            kept.append((i, j))
    return kept


def tail_multiplier(L: LieAlgebra, defset: Iterable[tuple[int, int]] | None = None) -> TailPresentation:
    """Tail presentation of M(L); ``defset`` pairs are 1-based."""
    n = L.dim
    F = L.field
    if defset is None:
        dset = default_defset(L)
    else:
        dset = []
        for i, j in defset:
            if not (1 <= i < j <= n):
                raise BadDefset(f"pair ({i},{j}) is not an ordered basis pair")
            dset.append((i - 1, j - 1))
    dvecs = [L.basis_bracket(i, j) for i, j in dset]
    d2 = derived(L).dim
    if len(set(dset)) != d2 or rank_rows(F, dvecs, n) != d2:
        raise BadDefset(f"brackets of the defining pairs do not form a basis of L^2 (dim {d2})")
    dead = set(dset)
    tails = [pq for pq in combinations(range(n), 2) if pq not in dead]
    col = {pq: c for c, pq in enumerate(tails)}

    def tail_of(u, k, row, sign):
        # tail part of [u, x_k] in the extension; u is a vector in L
        for m, a in enumerate(u):
            if a and m != k:
                if m < k:
                    c = col.get((m, k))
                    if c is not None:
                        row[c] += sign * a
                else:
                    c = col.get((k, m))
                    if c is not None:
                        row[c] -= sign * a

    relations, rows = [], []
    for i, j, k in combinations(range(n), 3):
        row = [0] * len(tails)
        tail_of(L.basis_bracket(i, j), k, row, 1)
        tail_of(L.basis_bracket(j, k), i, row, 1)
        tail_of(L.basis_bracket(k, i), j, row, 1)
        row = [F.canon(a) for a in row]
        if any(row):
            rows.append(tuple(row))
            relations.append(TailRelation((i + 1, j + 1, k + 1),
                                          {(p + 1, q + 1): a for (p, q), a in zip(tails, row) if a}))
    rank = rank_rows(F, rows, len(tails)) if rows else 0
    return TailPresentation(F, n, tuple((i + 1, j + 1) for i, j in dset), tuple((p + 1, q + 1) for p, q in tails),
                           tuple(relations), rank, len(tails) - rank)


@dataclass(frozen=True)
class InvariantBundle:
    dim: int
    gamma_dims: tuple
    dim_center: int
    dim_multiplier: int
    dim_multiplier_tails: int
    t: int
    t_derived: int
    moneyhun_holds: bool

    @property
    def routes_agree(self) -> bool:
        return self.dim_multiplier == self.dim_multiplier_tails


def invariant_bundle(L: LieAlgebra) -> InvariantBundle:
    s = series(L)
    m = ce_h2_dim(L)
    mt = tail_multiplier(L).dim_multiplier
    mh = moneyhun_check(L)
    return InvariantBundle(L.dim, s.gamma_dims, s.zeta[1].dim if len(s.zeta) > 1 else L.dim, m, mt,
                           comb(L.dim, 2) - m, mh.bound - mh.dim_derived, mh.holds)

"""Basis changes, isomorphism invariants and an exact isomorphism search.

Convention: a basis change is an invertible matrix ``P`` whose columns are
the new basis vectors written in the old basis.  ``apply_basis_change(L, P)``
is the algebra with the same bracket expressed in the new basis, so
``apply(apply(L, P), Q) == apply(L, P @ Q)``.

``check_isomorphism(L, L2, P)`` holds exactly when the columns of P are a
basis of L whose structure constants are those of L2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .batch import element_index, element_invariants, index_elements
from .errors import DimensionMismatch, FieldMismatch, ProfileTooLarge, Singular
from .liealg import LieAlgebra, center, derived, series, t_of_derived
from .linalg import Matrix, Subspace, is_zero, solve_rows, unit_vector
from .multiplier import ce_h2_dim
from .scalar import Field, PrimeField

PROFILE_LIMIT = 10 ** 6


@dataclass(frozen=True)
class BasisChange:
    matrix: Matrix

    def __post_init__(self):
        if not self.matrix.is_invertible():
            raise Singular("basis change matrix is not invertible")

    @property
    def field(self) -> Field:
        return self.matrix.field

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    def then(self, other: "BasisChange") -> "BasisChange":
        """Apply self, then ``other`` (whose columns are written in self's basis)."""
        return BasisChange(self.matrix @ other.matrix)

    def inverse(self) -> "BasisChange":
        return BasisChange(self.matrix.inverse())

    @classmethod
    def identity(cls, field: Field, n: int) -> "BasisChange":
        return cls(Matrix.identity(field, n))

    @classmethod
    def from_columns(cls, field: Field, cols) -> "BasisChange":
        return cls(Matrix.from_columns(field, cols))


def _as_matrix(P) -> Matrix:
    return P.matrix if isinstance(P, BasisChange) else P


def apply_basis_change(L: LieAlgebra, P) -> LieAlgebra:
    M = _as_matrix(P)
    if M.field != L.field:
        raise FieldMismatch(f"{M.field} vs {L.field}")
    if M.shape != (L.dim, L.dim):
        raise DimensionMismatch(f"basis change of shape {M.shape} on a {L.dim}-dimensional algebra")
    Minv = M.inverse()
    cols = M.columns()
    table = {}
    for a, b in combinations(range(L.dim), 2):
        v = L.bracket(cols[a], cols[b])
        if not is_zero(v):
            table[(a, b)] = Minv @ v
    return LieAlgebra(L.field, L.dim, table, check=False)


def check_isomorphism(L: LieAlgebra, L2: LieAlgebra, P) -> bool:
    M = _as_matrix(P)
    if L.dim != L2.dim or L.field != L2.field or not M.is_invertible():
        return False
    return apply_basis_change(L, M) == L2


def random_basis_change(field: Field, n: int, rng: random.Random) -> BasisChange:
    while True:
        rows = [[field.random(rng) for _ in range(n)] for _ in range(n)]
        M = Matrix(field, rows)
        if M.is_invertible():
            return BasisChange(M)


# --------------------------------------------------------------------------
# fingerprint


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    gamma_dims: tuple
    zeta_dims: tuple
    dim_multiplier: int
    t: int
    t_derived: int
    profile: tuple | None = None        # ((rank ad x, dim([x,L] meet Z)), count) over all x
    profile_skipped: bool = False

    def differences(self, other: "Fingerprint") -> list[str]:
        out = []
        for name in ("dim", "gamma_dims", "zeta_dims", "dim_multiplier", "t", "t_derived"):
            if getattr(self, name) != getattr(other, name):
                out.append(name)
        if self.profile is not None and other.profile is not None and self.profile != other.profile:
            out.append("profile")
        return out


def counting_profile(L: LieAlgebra) -> tuple:
    if not isinstance(L.field, PrimeField):
        raise ProfileTooLarge("counting profile needs a finite field")
    if L.field.p ** L.dim > PROFILE_LIMIT:
        raise ProfileTooLarge(f"|L| = {L.field.p}^{L.dim} exceeds {PROFILE_LIMIT}")
    from .batch import counting_profile as _profile

    return tuple(_profile(L, center(L)).items())


def fingerprint(L: LieAlgebra, *, profile: bool = True) -> Fingerprint:
    return _fingerprint(L, profile)


# algebras are immutable and hash by their tables
@lru_cache(maxsize=64)
def _fingerprint(L: LieAlgebra, profile: bool) -> Fingerprint:
    s = series(L)
    m = ce_h2_dim(L)
    prof, skipped = None, False
    if profile and isinstance(L.field, PrimeField):
        try:
            prof = counting_profile(L)
        except ProfileTooLarge:
            skipped = True
    return Fingerprint(L.dim, s.gamma_dims, s.zeta_dims, m, comb(L.dim, 2) - m,
                       t_of_derived(L), prof, skipped)


# --------------------------------------------------------------------------
# search


@dataclass(frozen=True)
class NotIsomorphic:
    reason: str                 # "fingerprint" or "exhausted"
    differences: tuple = ()
    nodes: int = 0


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    evidence: dict = field(default_factory=dict)


class _Source:
    """Generators of the source algebra and the bracket recipes that reach a basis."""

    def __init__(self, L: LieAlgebra, gens=None):
        self.L = L
        n = L.dim
        F = L.field
        if gens is None:
            D = derived(L)
            gens = [unit_vector(n, k) for k in D.free_columns()]
        gens = [tuple(g) for g in gens]
        self.gens = gens
        elems, recipes, stage_end, constraints = [], [], [], []
        for gi, g in enumerate(gens):
            prev = len(elems)
            cons = []
            if prev:
                rows = list(zip(*elems))
                for s in range(prev):
                    v = L.bracket(elems[s], g)
                    sol = solve_rows(F, rows, v, prev)
                    if sol.consistent:
                        cons.append((s, sol.particular))
            constraints.append(cons)
            elems.append(g)
            recipes.append(("g", gi))
            span = Subspace(F, n, elems)
            new = [len(elems) - 1]
            while new:
                added = []
                for b in new:
                    for a in range(len(elems)):
                        if a == b or (a in new and a > b):
                            continue
                        v = L.bracket(elems[a], elems[b])
                        if v not in span:
                            elems.append(v)
                            recipes.append(("b", a, b))
                            span = Subspace(F, n, elems)
                            added.append(len(elems) - 1)
                new = added
            stage_end.append(len(elems))
        self.elems = elems
        self.recipes = recipes
        self.stage_end = stage_end
        self.constraints = constraints
        if len(elems) != n:  # pragma: no cover - nilpotent algebras are generated mod L^2
            raise AssertionError("generators failed to reach a basis")
        self.basis_inverse = Matrix.from_columns(F, elems, n).inverse()


def _closure_dim(L, vecs):
    from .liealg import subalgebra_close

    return subalgebra_close(L, vecs).dim


class _Target:
    """Element invariants of the target algebra, tabulated over every element."""

    def __init__(self, L: LieAlgebra):
        self.L = L
        F = L.field
        self.p = F.p
        n = L.dim
        s = series(L)
        Z = center(L)
        D = s.gamma[1]
        self.W = Z.intersect(D)
        self.D = D
        self.spaces = (Z, D) + tuple(s.gamma[2:-1])
        self.n = n
        X = index_elements(np.arange(self.p ** n, dtype=np.int64), self.p, n)
        self.keys = self._encode(element_invariants(L, X, self.spaces), self._depth(X))

    def _depth(self, X):
        depth = np.zeros(len(X), dtype=np.int64)
        for k, S in enumerate(self.spaces[1:], start=2):
            depth = np.where(self._member(X, S), k, depth)
        return depth

    def _member(self, X, S):
        from .batch import batch_rank, subspace_array

        B = subspace_array(S, self.p)
        if len(B) == 0:
            return ~X.any(axis=1)
        stacked = np.concatenate([np.broadcast_to(B, (len(X),) + B.shape), X[:, None, :]], axis=1)
        return batch_rank(stacked, self.p) == len(B)

    def _encode(self, inv, depth):
        base = self.n + 2
        key = depth.copy()
        for c in range(inv.shape[1]):
            key = key * base + inv[:, c]
        return key

    def key_of(self, L: LieAlgebra, X: np.ndarray) -> np.ndarray:
        """Same invariant key for elements of another algebra (with its own subspaces)."""
        s = series(L)
        spaces = (center(L), s.gamma[1]) + tuple(s.gamma[2:-1])
        t = _Target.__new__(_Target)
        t.p, t.n, t.spaces = self.p, self.n, spaces
        return t._encode(element_invariants(L, X, spaces), t._depth(X))

    def lookup(self, X: np.ndarray) -> np.ndarray:
        """Keys of rows with entries already reduced into [0, p)."""
        w = self.p ** np.arange(self.n, dtype=np.int64)
        return self.keys[X @ w]


@lru_cache(maxsize=8)
def _target(L: LieAlgebra) -> _Target:
    return _Target(L)


def _ordered_generators(src: LieAlgebra, T: _Target) -> list[tuple]:
    """Unit-vector lifts of a basis of src / src^2, best pair first.

    The leading pair maximises the subalgebra it generates (so that later
    generators are pinned down by linear constraints); ties go to the pair
    whose invariant keys are rarest in the target.
    """
    n = src.dim
    gens = [unit_vector(n, k) for k in derived(src).free_columns()]
    if len(gens) < 2:
        return gens
    keys = T.key_of(src, np.array(gens, dtype=np.int64)).tolist()
    uniq, counts = np.unique(T.keys, return_counts=True)
    freq = dict(zip(uniq.tolist(), counts.tolist()))
    best, best_score = None, None
    for a, b in combinations(range(len(gens)), 2):
        for first, second in ((a, b), (b, a)):
            score = (-_closure_dim(src, [gens[first], gens[second]]),
                     freq.get(keys[first], 0) * freq.get(keys[second], 0), freq.get(keys[first], 0))
            if best_score is None or score < best_score:
                best, best_score = (first, second), score
    rest = [g for i, g in enumerate(gens) if i not in best]
    return [gens[best[0]], gens[best[1]]] + rest


def find_isomorphism(L: LieAlgebra, L2: LieAlgebra, *, use_fingerprint: bool = True):
    """Exact search over GF(p); Inconclusive over Q unless fingerprints already differ.

    Returns a ``BasisChange`` P with ``check_isomorphism(L, L2, P)``, or
    ``NotIsomorphic``, or ``Inconclusive``.
    """
    if L.field != L2.field:
        raise FieldMismatch(f"{L.field} vs {L2.field}")
    if L.dim != L2.dim:
        raise DimensionMismatch(f"dimensions {L.dim} and {L2.dim}")
    if L == L2:
        return BasisChange.identity(L.field, L.dim)
    finite = isinstance(L.field, PrimeField)
    if use_fingerprint or not finite:
        f1, f2 = fingerprint(L, profile=finite), fingerprint(L2, profile=finite)
        diff = f1.differences(f2)
        if diff:
            return NotIsomorphic("fingerprint", tuple(diff))
    if not finite:
        return Inconclusive("no exact search over Q; fingerprints agree", _mod_p_evidence(L, L2))
    if L.field.p ** L.dim > PROFILE_LIMIT:
        return Inconclusive(f"search space {L.field.p}^{L.dim} too large")
    return _search(L2, L)


def _mod_p_evidence(L, L2) -> dict:
    from .scalar import GF

    out = {}
    for p in (3, 5):
        try:
            a, b = L.change_field(GF(p)), L2.change_field(GF(p))
        except Exception as exc:  # denominators divisible by p, or Jacobi fails mod p
            out[f"GF({p})"] = f"no reduction ({type(exc).__name__})"
            continue
        r = find_isomorphism(a, b)
        out[f"GF({p})"] = "isomorphic" if isinstance(r, BasisChange) else "not isomorphic"
    return out




# Partial assignments are processed as (N, m, n) arrays of element images;
# BATCH bounds the number of candidate extensions materialised at once.
BATCH = 1 << 16


def _reduce_mod(X: np.ndarray, S: Subspace, p: int) -> np.ndarray:
    """Canonical representatives of the rows of X (any leading shape) modulo S."""
    for row, pc in zip(S.basis, S.pivots):
        X = (X - X[..., pc:pc + 1] * np.array(row, dtype=np.int64)) % p
    return X


def _brackets(C: np.ndarray, U: np.ndarray, V: np.ndarray, p: int) -> np.ndarray:
    n = C.shape[0]
    UC = (U @ C.reshape(n, n * n)).reshape(len(U), n, n) % p
    return np.einsum("Nj,Njk->Nk", V, UC) % p


def _affine_solutions(A: np.ndarray, b: np.ndarray, W: Subspace, p: int):
    """Solve A[N] w = b[N] mod p; return (item index, w) over every solution mod W."""
    from .batch import batch_row_reduce, compact_rows

    N, R, n = A.shape
    M, _ = batch_row_reduce(np.concatenate([A, b[:, :, None]], axis=2), p)
    left = M[:, :, :n]
    valid = left.any(axis=2)
    consistent = ~((~valid) & (M[:, :, n] != 0)).any(axis=1)
    lead = left.argmax(axis=2)
    ar = np.arange(N)
    x = np.zeros((N, n), dtype=np.int64)
    pivot = np.zeros((N, n), dtype=bool)
    K = np.zeros((N, n, n), dtype=np.int64)       # K[:, f] = kernel vector for free column f
    for r in range(R):
        v = valid[:, r]
        idx, col = ar[v], lead[v, r]
        x[idx, col] = M[idx, r, n]
        pivot[idx, col] = True
        K[idx, :, col] -= left[idx, r, :]
    free = ~pivot
    K[:, np.arange(n), np.arange(n)] += 1
    K = K % p * free[:, :, None]
    K = _reduce_mod(K, W, p)
    K, d = batch_row_reduce(K, p)
    K = compact_rows(K, n)
    x = _reduce_mod(x, W, p)
    items, sols = [], []
    for dd in np.unique(d[consistent]).tolist():
        sel = ar[consistent & (d == dd)]
        if dd == 0:
            items.append(sel)
            sols.append(x[sel])
            continue
        combos = index_elements(np.arange(p ** dd, dtype=np.int64), p, dd)
        Y = (x[sel, None, :] + np.einsum("cd,Ndk->Nck", combos, K[sel, :dd, :])) % p
        items.append(np.repeat(sel, len(combos)))
        sols.append(_reduce_mod(Y.reshape(-1, n), W, p))
    if not items:
        return np.zeros(0, dtype=np.int64), np.zeros((0, n), dtype=np.int64)
    return np.concatenate(items), np.concatenate(sols)


def _search(src: LieAlgebra, dst: LieAlgebra):
    """Find phi: src -> dst; return P = matrix of phi, so apply(dst, P) == src.

    Generator images are only needed modulo W = Z(dst) meet dst^2: the
    generators lift a basis of src / src^2 and W is central, so shifting an
    image by W changes neither the brackets nor bijectivity.
    """
    from .batch import batch_rank

    F = dst.field
    p = F.p
    n = dst.dim
    T = _target(dst)
    S = _Source(src, _ordered_generators(src, T))
    C = np.array([[[0] * n] * n] * n, dtype=np.int64)
    for (i, j), v in dst.table.items():
        C[i, j] = v
        C[j, i] = [(-a) % p for a in v]
    k = len(S.gens)
    src_keys = T.key_of(src, np.array(S.elems, dtype=np.int64))
    gen_pos = [S.recipes.index(("g", gi)) for gi in range(k)]
    gen_keys = [src_keys[pos] for pos in gen_pos]
    if k >= 2:
        g1, g2 = np.array(S.gens[0]), np.array(S.gens[1])
        cs = np.arange(p)
        line_a = T.key_of(src, (cs[:, None] * g1 + g2) % p)
        line_b = T.key_of(src, (g1 + cs[:, None] * g2) % p)
    X_all = index_elements(np.arange(p ** n, dtype=np.int64), p, n)
    reps = np.unique(element_index(_reduce_mod(X_all, T.W, p), p))
    rep_elems = index_elements(reps, p, n)
    rep_keys = T.keys[reps]
    free_cands = [rep_elems[rep_keys == gk] for gk in gen_keys]
    cons_coeffs = [[(s, np.array(c, dtype=np.int64)) for s, c in cons] for cons in S.constraints]
    binv = np.array(S.basis_inverse.rows, dtype=np.int64)
    src_pairs = [(a, b, np.array(src.table.get((a, b), (0,) * n), dtype=np.int64))
                 for a, b in combinations(range(n), 2)]
    nodes = 0

    def candidates(stage, Fa):
        cons = cons_coeffs[stage]
        N = len(Fa)
        if not cons:
            X = free_cands[stage]
            return np.repeat(np.arange(N), len(X)), np.tile(X, (N, 1))
        A_rows, b_rows = [], []
        for s, coeffs in cons:
            # ad(phi(s))[r, q] = coefficient of e_r in [phi(s), e_q]
            A_rows.append(np.einsum("Ni,iqr->Nrq", Fa[:, s, :], C) % p)
            b_rows.append(np.einsum("t,Ntr->Nr", coeffs, Fa[:, :len(coeffs), :]) % p)
        items, W = _affine_solutions(np.concatenate(A_rows, axis=1), np.concatenate(b_rows, axis=1),
                                     T.W, p)
        keep = T.lookup(W) == gen_keys[stage]
        return items[keep], W[keep]

    def width(stage):
        cons = cons_coeffs[stage]
        return len(free_cands[stage]) if not cons else p ** 2

    def finish(Fa):
        M = np.einsum("Nrq,ra->Nqa", Fa, binv) % p      # column a = phi(e_a)
        ok = np.ones(len(M), dtype=bool)
        for a, b, v in src_pairs:
            if not ok.any():
                return None
            lhs = _brackets(C, M[:, :, a], M[:, :, b], p)
            ok &= (lhs == (M @ v) % p).all(axis=1)
        live = np.flatnonzero(ok)
        live = live[batch_rank(M[live], p) == n]
        for idx in live:
            P = BasisChange(Matrix(F, M[idx].tolist()))
            if apply_basis_change(dst, P) == src:
                return P
        return None

    def run(stage, Fa):
        nonlocal nodes
        if stage == k:
            return finish(Fa)
        # chunks grow geometrically: an early witness returns quickly, an
        # exhaustive run soon reaches full batches
        step = max(1, BATCH // max(1, width(stage)))
        lo, size = 0, min(step, 4)
        while lo < len(Fa):
            part = Fa[lo:lo + size]
            lo += len(part)
            size = min(step, 2 * size)
            items, W = candidates(stage, part)
            if stage == 1 and len(W):
                # narrow one coefficient at a time; most pairs fail early
                alive = np.arange(len(W))
                y1 = part[items, gen_pos[0], :]
                for c in range(1, p):
                    for u, v, want in ((c * y1, W, line_a[c]), (y1, c * W, line_b[c])):
                        got = T.lookup((u[alive] + v[alive]) % p)
                        alive = alive[got == want]
                items, W = items[alive], W[alive]
            if not len(W):
                continue
            nodes += len(W)
            new = [part[items], W[:, None, :]]
            imgs = np.concatenate(new, axis=1)
            start = imgs.shape[1]
            extra = []
            for pos in range(start, S.stage_end[stage]):
                _, a, b = S.recipes[pos]
                cur = np.concatenate([imgs] + extra, axis=1) if extra else imgs
                extra.append(_brackets(C, cur[:, a, :], cur[:, b, :], p)[:, None, :])
            if extra:
                imgs = np.concatenate([imgs] + extra, axis=1)
            lo_pos = S.stage_end[stage - 1] if stage else 0
            ok = (T.lookup(imgs[:, lo_pos:, :]) == src_keys[lo_pos:S.stage_end[stage]]).all(axis=1)
            G = _reduce_mod(imgs[:, [gen_pos[g] for g in range(stage + 1)], :], T.D, p)
            ok &= batch_rank(G, p) == stage + 1
            if ok.any():
                found = run(stage + 1, imgs[ok])
                if found is not None:
                    return found
        return None

    found = run(0, np.zeros((1, 0, n), dtype=np.int64))
    if found is None:
        return NotIsomorphic("exhausted", nodes=nodes)
    return found

"""Vectorised mod-p kernels (numpy) for bulk rank and element-invariant work.

Everything here works on int64 arrays with entries in [0, p).  The exact,
pure-Python routines in ``linalg`` remain the reference; these kernels are
cross-checked against them in the tests.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .liealg import LieAlgebra
from .scalar import PrimeField

CHUNK = 1 << 15


def inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    return inv


def batch_row_reduce(M: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Row-reduce every matrix of a (N, r, c) stack mod p.

    Returns ``(reduced, rank)``; in ``reduced`` the pivot rows are normalised
    and every other row of a processed column has been cleared, so the nonzero
    rows form a basis of the row space.
    """
    M = np.array(M, dtype=np.int64) % p
    N, r, c = M.shape
    inv = inverse_table(p)
    rank = np.zeros(N, dtype=np.int64)
    used = np.zeros((N, r), dtype=bool)
    ar = np.arange(N)
    for col in range(c):
        cand = (M[:, :, col] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        if has.all():
            # common case: work in place without gathering a sub-stack
            piv = cand.argmax(axis=1)
            prow = M[ar, piv, :]
            prow = prow * inv[prow[:, col]][:, None] % p
            M -= M[:, :, col:col + 1] * prow[:, None, :]
            M %= p
            M[ar, piv, :] = prow
            used[ar, piv] = True
            rank += 1
            continue
        idx = ar[has]
        piv = cand[idx].argmax(axis=1)
        prow = M[idx, piv, :]
        prow = prow * inv[prow[:, col]][:, None] % p
        factors = M[idx, :, col]
        sub = M[idx] - factors[:, :, None] * prow[:, None, :]
        sub %= p
        sub[np.arange(len(idx)), piv, :] = prow
        M[idx] = sub
        used[idx, piv] = True
        rank[idx] += 1
    return M, rank


def batch_rank(M: np.ndarray, p: int) -> np.ndarray:
    return batch_row_reduce(M, p)[1]


def compact_rows(M: np.ndarray, width: int) -> np.ndarray:
    """Move nonzero rows to the front and keep the first ``width`` rows."""
    nonzero = M.any(axis=2)
    order = np.argsort(~nonzero, axis=1, kind="stable")
    return np.take_along_axis(M, order[:, :, None], axis=1)[:, :width, :]


def structure_tensor(L: LieAlgebra) -> np.ndarray:
    n = L.dim
    C = np.zeros((n, n, n), dtype=np.int64)
    for (i, j), v in L.table.items():
        C[i, j] = v
        C[j, i] = [(-a) % L.field.p for a in v]
    return C


def element_index(X: np.ndarray, p: int) -> np.ndarray:
    """Little-endian base-p index of each row."""
    n = X.shape[-1]
    w = p ** np.arange(n, dtype=np.int64)
    return (X.astype(np.int64) * w).sum(axis=-1)


def index_elements(idx: np.ndarray, p: int, n: int) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64)
    out = np.empty(idx.shape + (n,), dtype=np.int64)
    rest = idx.copy()
    for k in range(n):
        out[..., k] = rest % p
        rest //= p
    return out


def all_elements(p: int, n: int) -> np.ndarray:
    return index_elements(np.arange(p ** n, dtype=np.int64), p, n)


def subspace_array(S, p: int) -> np.ndarray:
    return np.array(S.basis, dtype=np.int64).reshape(len(S.basis), S.ambient_dim)


def element_invariants(L: LieAlgebra, X: np.ndarray, spaces=()) -> np.ndarray:
    """For each row x: [rank ad x, dim([x, L] meet S) for S in spaces]."""
    p = L.field.p
    C = structure_tensor(L)
    out = []
    for start in range(0, len(X), CHUNK):
        Xc = X[start:start + CHUNK]
        ad = np.einsum("Ni,ikq->Nkq", Xc, C) % p
        r = batch_rank(ad, p)
        cols = [r]
        for S in spaces:
            B = subspace_array(S, p)
            if len(B) == 0:
                cols.append(np.zeros_like(r))
                continue
            stacked = np.concatenate([ad, np.broadcast_to(B, (len(Xc),) + B.shape)], axis=1)
            cols.append(r + len(B) - batch_rank(stacked, p))
        out.append(np.stack(cols, axis=1))
    if not out:
        return np.zeros((0, 1 + len(spaces)), dtype=np.int64)
    return np.concatenate(out, axis=0)


def counting_profile(L: LieAlgebra, center_space) -> dict:
    """Multiset of (rank ad x, dim([x, L] meet Z)) over every x in L."""
    p = L.field.p
    n = L.dim
    total = Counter()
    for start in range(0, p ** n, CHUNK):
        stop = min(p ** n, start + CHUNK)
        X = index_elements(np.arange(start, stop, dtype=np.int64), p, n)
        inv = element_invariants(L, X, (center_space,))
        keys, counts = np.unique(inv, axis=0, return_counts=True)
        for k, c in zip(map(tuple, keys.tolist()), counts.tolist()):
            total[k] += c
    return dict(sorted(total.items()))


def is_prime_field(L: LieAlgebra) -> bool:
    return isinstance(L.field, PrimeField)

"""The ten-parameter normal form for dimension 7 and its vectorised kernels.

Basis x1..x7 with fixed brackets [x1,x2] = x3, [x1,x3] = x6, [x2,x3] = x7 and

    [x1,x4] = a1 x6 + a2 x7     [x1,x5] = a3 x6 + a4 x7
    [x2,x4] = a5 x6 + a6 x7     [x2,x5] = a7 x6 + a8 x7
    [x4,x5] = a9 x6 + a10 x7

A parameter tuple over GF(p) is indexed little-endian: index = sum a_k p^(k-1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .batch import batch_rank, element_index, index_elements
from .liealg import LieAlgebra
from .scalar import Field

N_PARAMS = 10
DIM = 7
# (i, j) 0-based pair, parameter offset of its x6 coefficient
PARAM_PAIRS = (((0, 3), 0), ((0, 4), 2), ((1, 3), 4), ((1, 4), 6), ((3, 4), 8))
FIXED = {(0, 1): 2, (0, 2): 5, (1, 2): 6}


@dataclass(frozen=True)
class NormalForm:
    field: Field
    alpha: tuple

    def __post_init__(self):
        if len(self.alpha) != N_PARAMS:
            raise ValueError(f"normal form needs {N_PARAMS} parameters, got {len(self.alpha)}")
        object.__setattr__(self, "alpha", tuple(self.field.canon(a) for a in self.alpha))

    def algebra(self) -> LieAlgebra:
        table = {ij: {k: 1} for ij, k in FIXED.items()}
        for ij, off in PARAM_PAIRS:
            table[ij] = {5: self.alpha[off], 6: self.alpha[off + 1]}
        return LieAlgebra(self.field, DIM, table, check=False)

    @classmethod
    def from_index(cls, field, idx: int) -> "NormalForm":
        p = field.p
        return cls(field, tuple((idx // p ** k) % p for k in range(N_PARAMS)))

    def index(self) -> int:
        p = self.field.p
        return sum(int(a) * p ** k for k, a in enumerate(self.alpha))

    def __str__(self):
        return "(" + ", ".join(self.field.fmt(a) for a in self.alpha) + ")"


def read_normal_form(L: LieAlgebra) -> NormalForm | None:
    """The parameter tuple if L is literally in normal form, else None."""
    if L.dim != DIM:
        return None
    alpha = [0] * N_PARAMS
    allowed = set(FIXED) | {ij for ij, _ in PARAM_PAIRS}
    for ij, v in L.table.items():
        if ij not in allowed:
            return None
    for ij, k in FIXED.items():
        want = tuple(1 if q == k else 0 for q in range(DIM))
        if L.table.get(ij) != want:
            return None
    for ij, off in PARAM_PAIRS:
        v = L.table.get(ij, (0,) * DIM)
        if any(v[q] for q in range(5)):
            return None
        alpha[off], alpha[off + 1] = v[5], v[6]
    return NormalForm(L.field, tuple(alpha))


# --------------------------------------------------------------------------
# vectorised structure tensors


def batch_tensors(alphas: np.ndarray, p: int) -> np.ndarray:
    """(N, 10) parameter rows -> (N, 7, 7, 7) structure tensors C[i, j, k]."""
    N = len(alphas)
    C = np.zeros((N, DIM, DIM, DIM), dtype=np.int64)
    for (i, j), k in FIXED.items():
        C[:, i, j, k] = 1
        C[:, j, i, k] = p - 1
    for (i, j), off in PARAM_PAIRS:
        C[:, i, j, 5] = alphas[:, off]
        C[:, i, j, 6] = alphas[:, off + 1]
        C[:, j, i, 5] = (-alphas[:, off]) % p
        C[:, j, i, 6] = (-alphas[:, off + 1]) % p
    return C


def tensor_of(L: LieAlgebra) -> np.ndarray:
    from .batch import structure_tensor

    return structure_tensor(L)


def batch_transform(C: np.ndarray, P: np.ndarray, Pinv: np.ndarray, p: int) -> np.ndarray:
    """Structure tensors in the basis given by the columns of P.

    ``C`` is (N, n, n, n) or (n, n, n); ``P``/``Pinv`` are (n, n) or (N, n, n).
    """
    per_item = P.ndim == 3
    if C.ndim == 3:
        C = C[None]
    # T[N,i,j,c] = sum_k C[N,i,j,k] Pinv[c,k]
    if per_item:
        T = np.einsum("Nijk,Nck->Nijc", C, Pinv) % p
        T = np.einsum("Nijc,Njb->Nibc", T, P) % p
        T = np.einsum("Nibc,Nia->Nabc", T, P) % p
    else:
        T = np.einsum("Nijk,ck->Nijc", C, Pinv) % p
        T = np.einsum("Nijc,jb->Nibc", T, P) % p
        T = np.einsum("Nibc,ia->Nabc", T, P) % p
    return T


_PARAM_MASK = np.zeros((DIM, DIM), dtype=bool)
for (_i, _j), _ in PARAM_PAIRS:
    _PARAM_MASK[_i, _j] = True


def batch_read(C: np.ndarray, p: int):
    """Read (N, 7, 7, 7) tensors back as parameter tuples.

    Tolerates a central correction on [x1, x2] = x3 + z with z in <x6, x7>;
    returns ``(alphas, z, ok)``.
    """
    N = len(C)
    ok = np.ones(N, dtype=bool)
    e = np.eye(DIM, dtype=np.int64)
    z = C[:, 0, 1, 5:7].copy()
    head = C[:, 0, 1, :5]
    ok &= (head == e[2, :5]).all(axis=1)
    ok &= (C[:, 0, 2] == e[5]).all(axis=1)
    ok &= (C[:, 1, 2] == e[6]).all(axis=1)
    for i in range(DIM):
        for j in range(i + 1, DIM):
            if (i, j) in FIXED:
                continue
            if _PARAM_MASK[i, j]:
                ok &= ~C[:, i, j, :5].any(axis=1)
            else:
                ok &= ~C[:, i, j].any(axis=1)
    alphas = np.zeros((N, N_PARAMS), dtype=np.int64)
    for (i, j), off in PARAM_PAIRS:
        alphas[:, off] = C[:, i, j, 5]
        alphas[:, off + 1] = C[:, i, j, 6]
    return alphas, z, ok


def batch_center_dim(C: np.ndarray, p: int) -> np.ndarray:
    """dim Z for each tensor: n - rank of x -> ([x, e_j])_j."""
    N, n = C.shape[0], C.shape[1]
    # rows indexed by (j, q), columns by i: entry C[i, j, q]
    M = C.transpose(0, 2, 3, 1).reshape(N, n * n, n)
    return n - batch_rank(M, p)


def batch_hypotheses(C: np.ndarray, p: int) -> dict:
    """Vectorised class / derived / centre data for each tensor.

    Keys: dim_center, dim_gamma2, dim_gamma3, gamma4_zero, satisfies.  Z = gamma_3
    is decided as gamma_4 = 0 (so gamma_3 is central) plus equal dimensions; the
    stem condition then follows from gamma_3 <= gamma_2.
    """
    N, n = C.shape[0], C.shape[1]
    from .batch import batch_row_reduce, compact_rows

    g2, r2 = batch_row_reduce(C.reshape(N, n * n, n), p)
    g2 = compact_rows(g2, n)
    # gamma_{k+1} = span [e_i, b] over basis rows b of gamma_k
    def next_term(B):
        V = np.einsum("Nrm,Nimq->Nirq", B, C) % p
        R, r = batch_row_reduce(V.reshape(N, n * B.shape[1], n), p)
        return compact_rows(R, n), r

    g3, r3 = next_term(g2)
    g4, r4 = next_term(g3)
    zc = batch_center_dim(C, p)
    satisfies = (r3 > 0) & (r4 == 0) & (r2 == 3) & (r3 == 2) & (zc == 2) & (zc == r3)
    return {"dim_center": zc, "dim_gamma2": r2, "dim_gamma3": r3, "gamma4_zero": r4 == 0,
            "satisfies": satisfies}


def tuple_indices(alphas: np.ndarray, p: int) -> np.ndarray:
    return element_index(alphas, p)


def tuples_from_indices(idx: np.ndarray, p: int) -> np.ndarray:
    return index_elements(idx, p, N_PARAMS)


# --------------------------------------------------------------------------
# basis changes that preserve the normal-form shape


def _columns_to_matrix(cols) -> np.ndarray:
    return np.array(cols, dtype=np.int64).T


def shape_preserving_moves(p: int, g: int) -> list[tuple[str, np.ndarray]]:
    """Constant basis changes carrying normal forms to normal forms.

    Together (with the central correction on x3 that ``batch_read`` reports) they
    generate every change of generators: GL2 on <x1, x2>, GL2 on <x4, x5>, the
    shifts x4, x5 += x3 and x1, x2 += <x4, x5>.  ``g`` generates GF(p)^*.
    """
    e = np.eye(DIM, dtype=np.int64)
    I = [e[k] for k in range(DIM)]
    x1, x2, x3, x4, x5, x6, x7 = I

    def make(cols):
        return _columns_to_matrix([c % p for c in cols])

    moves = [
        ("x4 += x3", make([x1, x2, x3, x4 + x3, x5, x6, x7])),
        ("x5 += x3", make([x1, x2, x3, x4, x5 + x3, x6, x7])),
        (f"x4 *= {g}", make([x1, x2, x3, g * x4, x5, x6, x7])),
        ("x4 <-> x5", make([x1, x2, x3, x5, x4, x6, x7])),
        ("x4 += x5", make([x1, x2, x3, x4 + x5, x5, x6, x7])),
        (f"x1 *= {g}", make([g * x1, x2, g * x3, x4, x5, g * g * x6, g * x7])),
        ("x1 <-> x2", make([x2, x1, -x3, x4, x5, -x7, -x6])),
        ("x1 += x2", make([x1 + x2, x2, x3, x4, x5, x6 + x7, x7])),
        ("x1 += x4", make([x1 + x4, x2, x3, x4, x5, x6, x7])),
        ("x1 += x5", make([x1 + x5, x2, x3, x4, x5, x6, x7])),
    ]
    return moves


def mat_inv_mod(P: np.ndarray, p: int) -> np.ndarray:
    from .linalg import Matrix
    from .scalar import GF

    M = Matrix(GF(p), P.tolist()).inverse()
    return np.array(M.rows, dtype=np.int64)


def correction(z: np.ndarray, p: int) -> np.ndarray:
    """(N, 2) central parts -> (N, 7, 7) matrices U with U e3 = e3 + z6 e6 + z7 e7."""
    N = len(z)
    U = np.broadcast_to(np.eye(DIM, dtype=np.int64), (N, DIM, DIM)).copy()
    U[:, 5, 2] = z[:, 0] % p
    U[:, 6, 2] = z[:, 1] % p
    return U

"""Dense exact linear algebra over a ``Field``.

Vectors are tuples of raw field values.  ``Matrix`` is an immutable row-major
wrapper; ``Subspace`` keeps a canonical reduced-row-echelon basis so that two
subspaces are equal exactly when their bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FieldMismatch, NotContained, Singular
from .scalar import Field

Vector = tuple


def zero_vector(n: int) -> Vector:
    return (0,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(n))


def is_zero(v: Sequence) -> bool:
    return not any(v)


def vec_add(F: Field, u, v) -> Vector:
    return tuple(F.canon(a + b) for a, b in zip(u, v))


def vec_sub(F: Field, u, v) -> Vector:
    return tuple(F.canon(a - b) for a, b in zip(u, v))


def vec_scale(F: Field, c, v) -> Vector:
    return tuple(F.canon(c * a) for a in v)


def lin_comb(F: Field, coeffs, vectors, n: int) -> Vector:
    acc = [0] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    acc[k] += c * a
    return tuple(F.canon(a) for a in acc)


# --------------------------------------------------------------------------
# row reduction on plain lists


def rref_rows(F: Field, rows: Iterable[Sequence], ncols: int | None = None):
    """Gauss-Jordan elimination.

    Returns ``(reduced, pivots)`` where ``reduced`` holds only the nonzero rows
    of the reduced row echelon form and ``pivots[r]`` is the pivot column of
    row ``r``.
    """
    work = [list(r) for r in rows]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    canon = F.canon
    pivots = []
    r = 0
    nrows = len(work)
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        prow = work[r]
        lead = prow[c]
        if lead != 1:
            inv = F.inv(lead)
            prow = [canon(a * inv) for a in prow]
            work[r] = prow
        nz = [k for k in range(c, ncols) if prow[k] != 0]
        for i in range(nrows):
            if i != r:
                row = work[i]
                f = row[c]
                if f != 0:
                    for k in nz:
                        row[k] = canon(row[k] - f * prow[k])
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(row) for row in work[:r]], pivots


def rank_rows(F: Field, rows, ncols=None) -> int:
    return len(rref_rows(F, rows, ncols)[1])


def nullspace_rows(F: Field, rows, ncols: int) -> list[Vector]:
    """Basis of ``{x : A x = 0}`` where ``A`` has the given rows."""
    reduced, pivots = rref_rows(F, rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        x = [0] * ncols
        x[free] = 1
        for row, pc in zip(reduced, pivots):
            if row[free]:
                x[pc] = F.canon(-row[free])
        basis.append(tuple(x))
    return basis


# --------------------------------------------------------------------------
# Matrix


class Matrix:
    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(field.canon(a) for a in r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatch("cannot infer the column count of an empty matrix")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch(f"ragged matrix: expected {ncols} columns, got {len(r)}")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def _raw(cls, field, rows, ncols):
        m = cls.__new__(cls)
        m.field, m.rows, m.nrows, m.ncols = field, rows, len(rows), ncols
        return m

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls._raw(field, tuple(unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def zeros(cls, field: Field, m: int, n: int) -> "Matrix":
        return cls._raw(field, tuple(zero_vector(n) for _ in range(m)), n)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if nrows is None:
            nrows = len(cols[0])
        return cls(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix.zeros(self.field, self.ncols, 0)
        return Matrix._raw(self.field, tuple(zip(*self.rows)), self.nrows)

    T = property(transpose)

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            F = self.field
            cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
            rows = tuple(
                tuple(F.canon(sum(a * b for a, b in zip(r, c) if a and b)) for c in cols)
                for r in self.rows
            )
            return Matrix._raw(F, rows, other.ncols)
        v = tuple(other)
        if len(v) != self.ncols:
            raise DimensionMismatch(f"{self.shape} @ vector of length {len(v)}")
        F = self.field
        return tuple(F.canon(sum(a * b for a, b in zip(r, v) if a and b)) for r in self.rows)

    def __add__(self, other: "Matrix"):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix._raw(self.field, tuple(vec_add(self.field, a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix"):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Matrix._raw(self.field, tuple(vec_sub(self.field, a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def scale(self, c) -> "Matrix":
        return Matrix._raw(self.field, tuple(vec_scale(self.field, c, r) for r in self.rows), self.ncols)

    def rank(self) -> int:
        return rank_rows(self.field, self.rows, self.ncols)

    def rref(self) -> tuple[int, "Matrix"]:
        reduced, pivots = rref_rows(self.field, self.rows, self.ncols)
        padded = reduced + [zero_vector(self.ncols)] * (self.nrows - len(reduced))
        return len(pivots), Matrix._raw(self.field, tuple(padded), self.ncols)

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise DimensionMismatch(f"cannot invert a {self.shape} matrix")
        aug = [r + unit_vector(n, i) for i, r in enumerate(self.rows)]
        reduced, pivots = rref_rows(self.field, aug, 2 * n)
        if len(pivots) < n or pivots[n - 1] >= n:
            raise Singular("matrix is not invertible")
        return Matrix._raw(self.field, tuple(tuple(r[n:]) for r in reduced), n)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.fmt(a) for a in r) for r in self.rows)
        return f"Matrix[{self.field}]({body})"


def rref(m: Matrix) -> tuple[int, Matrix]:
    return m.rref()


def nullspace(m: Matrix) -> list[Vector]:
    return nullspace_rows(m.field, m.rows, m.ncols)


def inverse(m: Matrix) -> Matrix:
    return m.inverse()


@dataclass(frozen=True)
class LinearSolution:
    """Solutions of ``A x = b``: ``particular + span(kernel)``; ``particular`` is None if inconsistent."""

    particular: Vector | None
    kernel: tuple

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def solve(A: Matrix, b) -> LinearSolution:
    if isinstance(b, Matrix):
        if b.ncols != 1:
            raise DimensionMismatch("right-hand side must be a single column")
        b = b.column(0)
    b = tuple(A.field.canon(x) for x in b)
    if len(b) != A.nrows:
        raise DimensionMismatch(f"{A.shape} system with right-hand side of length {len(b)}")
    return solve_rows(A.field, A.rows, b, A.ncols)


def solve_rows(F: Field, rows, b, ncols: int) -> LinearSolution:
    aug = [tuple(r) + (bi,) for r, bi in zip(rows, b)]
    reduced, pivots = rref_rows(F, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return LinearSolution(None, tuple(nullspace_rows(F, rows, ncols)))
    x = [0] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[ncols]
    kernel = []
    pivset = set(pivots)
    for free in range(ncols):
        if free in pivset:
            continue
        k = [0] * ncols
        k[free] = 1
        for row, pc in zip(reduced, pivots):
            if row[free]:
                k[pc] = F.canon(-row[free])
        kernel.append(tuple(k))
    return LinearSolution(tuple(x), tuple(kernel))


# --------------------------------------------------------------------------
# Subspace


class Subspace:
    """A subspace of ``field^n`` stored by its canonical RREF basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vectors = [tuple(field.canon(a) for a in v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        reduced, pivots = rref_rows(field, vectors, ambient_dim)
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = tuple(reduced)
        self.pivots = tuple(pivots)

    @classmethod
    def _from_rref(cls, field, n, basis, pivots):
        s = cls.__new__(cls)
        s.field, s.ambient_dim, s.basis, s.pivots = field, n, tuple(basis), tuple(pivots)
        return s

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls._from_rref(field, n, [unit_vector(n, i) for i in range(n)], range(n))

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls._from_rref(field, n, [], [])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def _check(self, other: "Subspace"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambient dimensions {self.ambient_dim} and {other.ambient_dim}")

    def reduce(self, v: Sequence) -> Vector:
        """Canonical representative of ``v`` modulo this subspace (zero on pivot columns)."""
        F = self.field
        w = list(v)
        for row, pc in zip(self.basis, self.pivots):
            f = w[pc]
            if f:
                for k in range(pc, self.ambient_dim):
                    if row[k]:
                        w[k] = F.canon(w[k] - f * row[k])
        return tuple(w)

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of ``v`` in ``self.basis``; raises NotContained otherwise."""
        if not is_zero(self.reduce(v)):
            raise NotContained("vector is not in the subspace")
        return tuple(v[pc] for pc in self.pivots)

    def __contains__(self, v) -> bool:
        if isinstance(v, Subspace):
            return self.contains(v)
        return is_zero(self.reduce(v))

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(is_zero(self.reduce(v)) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.field, self.ambient_dim, self.basis + other.basis)

    sum = __add__

    def intersect(self, other: "Subspace") -> "Subspace":
        """Kernel of ``c -> sum(c_i u_i) mod other`` pushed back into ``self``."""
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient_dim)
        images = [other.reduce(u) for u in self.basis]
        # rows of the linear map are indexed by ambient coordinates
        rows = list(zip(*images))
        kernel = nullspace_rows(self.field, rows, len(self.basis))
        vecs = [lin_comb(self.field, c, self.basis, self.ambient_dim) for c in kernel]
        return Subspace(self.field, self.ambient_dim, vecs)

    __and__ = intersect

    def complement_in(self, other: "Subspace") -> "Subspace":
        """Pivot-greedy complement of ``self`` inside ``other`` (requires self <= other).

        Basis vectors of ``other`` are taken in RREF order and kept whenever they
        are independent of ``self`` plus those already kept.
        """
        self._check(other)
        if not other.contains(self):
            raise NotContained("complement_in needs self to be contained in other")
        kept = []
        acc = self
        for v in other.basis:
            if not is_zero(acc.reduce(v)):
                kept.append(v)
                acc = Subspace(self.field, self.ambient_dim, acc.basis + (v,))
        return Subspace(self.field, self.ambient_dim, kept)

    def complement(self) -> "Subspace":
        """Coordinate complement: unit vectors on the non-pivot columns."""
        piv = set(self.pivots)
        n = self.ambient_dim
        return Subspace._from_rref(self.field, n, [unit_vector(n, k) for k in range(n) if k not in piv],
                                   [k for k in range(n) if k not in piv])

    def free_columns(self) -> list[int]:
        piv = set(self.pivots)
        return [k for k in range(self.ambient_dim) if k not in piv]

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field == other.field
                and self.ambient_dim == other.ambient_dim and self.basis == other.basis)

    def __le__(self, other):
        return other.contains(self)

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.field})"


def span(field: Field, n: int, vectors) -> Subspace:
    return Subspace(field, n, vectors)


def subspace_lattice(op: str, U: Subspace, V: Subspace):
    """``op`` in {"sum", "intersect", "contains", "complement_in"}."""
    if op == "sum":
        return U + V
    if op == "intersect":
        return U.intersect(V)
    if op == "contains":
        return U.contains(V)
    if op == "complement_in":
        return U.complement_in(V)
    raise ValueError(f"unknown lattice operation {op!r}")

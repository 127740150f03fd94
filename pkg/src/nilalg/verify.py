"""Exhaustive checks of the classification statements over small prime fields.

``verify_theorem_b`` enumerates every normal-form tuple, keeps those meeting
the standing hypotheses, and sorts them into isomorphism classes:

1. orbits under shape-preserving basis changes are found by following ten
   constant moves (each followed by the central correction on x3);
2. every survivor gets an explicit witness from its orbit root, checked in
   bulk by transforming the root's structure tensor;
3. orbits whose root is not a catalog algebra are compared to the catalog
   and to each other by fingerprint and exact isomorphism search.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .construct import catalog
from .errors import HypothesisFailure, StructureMismatch, UnsupportedField
from .isomorph import (BasisChange, NotIsomorphic, apply_basis_change, check_isomorphism, find_isomorphism,
                       fingerprint, random_basis_change)
from .liealg import LieAlgebra, hypothesis_check
from .normal_form import (DIM, N_PARAMS, NormalForm, batch_center_dim, batch_hypotheses, batch_read,
                          batch_tensors, batch_transform, correction, mat_inv_mod, read_normal_form,
                          shape_preserving_moves, tuple_indices, tuples_from_indices)
from .scalar import GF, PrimeField
from .theorem_a import CLAUSES, clause_exemplar, theorem_a_classify

REPRESENTATIVES = ("L1", "L2", "L3", "L4")
CHUNK = 1 << 14


def _log(progress, msg):
    if progress is not None:
        progress(msg)


# --------------------------------------------------------------------------
# filtering


def _filter_chunk(args):
    p, lo, hi = args
    idx = np.arange(lo, hi, dtype=np.int64)
    C = batch_tensors(tuples_from_indices(idx, p), p)
    h = batch_hypotheses(C, p)
    zc = batch_center_dim(C, p)
    return idx[h["satisfies"]], int(((zc == 2) != h["satisfies"]).sum())


def _exact_filter_chunk(args):
    p, lo, hi = args
    F = GF(p)
    keep = [i for i in range(lo, hi) if hypothesis_check(NormalForm.from_index(F, i).algebra()).satisfies]
    return np.array(keep, dtype=np.int64)


def _member(sorted_idx: np.ndarray, i: int) -> bool:
    k = int(np.searchsorted(sorted_idx, i))
    return k < len(sorted_idx) and int(sorted_idx[k]) == i


def _map(fn, tasks, jobs):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, tasks))
    return [fn(t) for t in tasks]


# --------------------------------------------------------------------------
# report


@dataclass
class ClassificationReport:
    field: str
    total_tuples: int
    surviving: int
    class_count: int
    representatives: list            # catalog names, or "anomaly:<tuple>" for classes outside the catalog
    class_sizes: dict                # representative -> number of tuples
    anomalies: list                  # one record per class outside the catalog
    filter_equivalence: bool         # hypotheses <=> dim Z = 2 on every tuple
    filter_mismatches: int
    exact_filter: str                # "all", "sample(k)" or "off"
    orbit_count: int
    witnesses_verified: int
    catalog_pairwise: dict = field(default_factory=dict)
    elapsed: float = 0.0
    _survivors: np.ndarray | None = field(default=None, repr=False, compare=False)
    _labels: np.ndarray | None = field(default=None, repr=False, compare=False)
    _orbit_class: tuple = field(default=(), repr=False, compare=False)

    def class_of(self, index: int) -> str | None:
        """Class of a tuple index, or None when the tuple fails the hypotheses."""
        if self._survivors is None:
            raise ValueError("report carries no per-tuple data")
        if not _member(self._survivors, index):
            return None
        return self._orbit_class[int(self._labels[np.searchsorted(self._survivors, index)])]

    @property
    def consistent(self) -> bool:
        """Internal consistency: counts add up and every witness checked out."""
        names_ok = (not self.anomalies) == (self.class_count <= 4 and
                                            all(r in REPRESENTATIVES for r in self.representatives))
        return (sum(self.class_sizes.values()) == self.surviving and self.witnesses_verified == self.surviving
                and self.filter_equivalence and names_ok and len(self.class_sizes) == self.class_count)

    @property
    def matches_claim(self) -> bool:
        return (self.class_count == 4 and sorted(self.representatives) == list(REPRESENTATIVES)
                and not self.anomalies)

    def to_dict(self) -> dict:
        return {
            "field": self.field, "total_tuples": self.total_tuples, "surviving": self.surviving,
            "class_count": self.class_count, "representatives": list(self.representatives),
            "class_sizes": dict(self.class_sizes), "anomalies": self.anomalies,
            "filter_equivalence": self.filter_equivalence, "filter_mismatches": self.filter_mismatches,
            "exact_filter": self.exact_filter, "orbit_count": self.orbit_count,
            "witnesses_verified": self.witnesses_verified, "catalog_pairwise": self.catalog_pairwise,
            "consistent": self.consistent, "matches_claim": self.matches_claim,
            "elapsed_seconds": round(self.elapsed, 2),
        }


# --------------------------------------------------------------------------
# orbits


def _moves(p: int):
    g = GF(p).generator
    out = []
    for name, P in shape_preserving_moves(p, g):
        out.append((name, P % p, mat_inv_mod(P, p)))
    return out


def _edges(C: np.ndarray, moves, p: int):
    """For each move: target tuples and central corrections of every input tensor."""
    out = []
    for name, P, Pinv in moves:
        T = batch_transform(C, P, Pinv, p)
        alphas, z, ok = batch_read(T, p)
        if not ok.all():  # pragma: no cover - the moves are shape preserving by construction
            raise AssertionError(f"move {name} left the normal form")
        out.append((tuple_indices(alphas, p), z))
    return out


def _move_tables(survivors: np.ndarray, moves, p: int, progress=None):
    """Where each move sends each survivor (as a position) and the x3 correction it needs."""
    S = len(survivors)
    nbr = np.empty((len(moves), S), dtype=np.int32 if S < 2 ** 31 else np.int64)
    zs = np.empty((len(moves), S, 2), dtype=np.int8)
    for lo in range(0, S, CHUNK):
        C = batch_tensors(tuples_from_indices(survivors[lo:lo + CHUNK], p), p)
        for g, (targets, z) in enumerate(_edges(C, moves, p)):
            pos = np.searchsorted(survivors, targets)
            if not (pos < S).all() or not (survivors[np.minimum(pos, S - 1)] == targets).all():
                raise AssertionError("a move carried a survivor outside the survivor set")
            nbr[g, lo:lo + CHUNK] = pos
            zs[g, lo:lo + CHUNK] = z % p
        if lo and lo % (64 * CHUNK) == 0:
            _log(progress, f"  move tables: {lo}/{S}")
    for g in range(len(moves)):
        if len(np.unique(nbr[g])) != S:  # pragma: no cover - tripwire for the forward-only search
            raise AssertionError(f"move {moves[g][0]} does not permute the survivors")
    return nbr, zs


class _Orbits:
    """Multi-source BFS over the move graph with witness matrices stored as int8.

    After ``grow``: ``apply(NF(roots[label[s]]), W[s]) == NF(survivors[s])`` and
    ``Winv[s] = W[s]^-1``.
    """

    def __init__(self, survivors, nbr, zs, moves, p):
        S = len(survivors)
        self.survivors, self.nbr, self.zs, self.moves, self.p = survivors, nbr, zs, moves, p
        self.label = np.full(S, -1, dtype=np.int32)
        self.W = np.zeros((S, DIM, DIM), dtype=np.int8)
        self.Winv = np.zeros((S, DIM, DIM), dtype=np.int8)
        self.roots: list[int] = []

    def grow(self, roots, progress=None):
        p = self.p
        frontier = np.searchsorted(self.survivors, np.asarray(roots, dtype=np.int64))
        if (self.label[frontier] >= 0).any():
            raise ValueError("a new root already belongs to a known orbit")
        self.label[frontier] = np.arange(len(self.roots), len(self.roots) + len(roots))
        self.roots.extend(int(r) for r in roots)
        eye = np.eye(DIM, dtype=np.int8)
        self.W[frontier] = eye
        self.Winv[frontier] = eye
        level = 0
        while len(frontier):
            nxt = []
            for g, (_, P, Pinv) in enumerate(self.moves):
                t = self.nbr[g, frontier].astype(np.int64)
                fresh = self.label[t] < 0
                src, t = frontier[fresh], t[fresh]
                t, first = np.unique(t, return_index=True)
                src = src[first]
                if not len(t):
                    continue
                z = self.zs[g, src].astype(np.int64)
                edge = np.einsum("ij,Njk->Nik", P, correction(z, p)) % p
                edge_inv = np.einsum("Nij,jk->Nik", correction(-z, p), Pinv) % p
                self.W[t] = (self.W[src].astype(np.int64) @ edge % p).astype(np.int8)
                self.Winv[t] = (edge_inv @ self.Winv[src].astype(np.int64) % p).astype(np.int8)
                self.label[t] = self.label[src]
                nxt.append(t)
            frontier = np.unique(np.concatenate(nxt)) if nxt else np.zeros(0, dtype=np.int64)
            level += 1
            _log(progress, f"  orbit search level {level}: {len(frontier)} new tuples")

    def first_unreached(self):
        miss = np.flatnonzero(self.label < 0)
        return int(self.survivors[miss[0]]) if len(miss) else None


def _verify_witnesses(survivors, label, roots, W, Winv, p: int) -> int:
    root_C = batch_tensors(tuples_from_indices(roots, p), p)
    good = 0
    eye = np.eye(DIM, dtype=np.int64)
    for lo in range(0, len(survivors), CHUNK):
        C = batch_tensors(tuples_from_indices(survivors[lo:lo + CHUNK], p), p)
        w = W[lo:lo + CHUNK].astype(np.int64)
        wi = Winv[lo:lo + CHUNK].astype(np.int64)
        inverse_ok = ((w @ wi) % p == eye).all(axis=(1, 2))
        T = batch_transform(root_C[label[lo:lo + CHUNK]], w, wi, p)
        good += int(((T == C).all(axis=(1, 2, 3)) & inverse_ok).sum())
    return good


# --------------------------------------------------------------------------
# Theorem B


def _alpha_str(F, alpha) -> str:
    return "(" + ", ".join(F.fmt(a) for a in alpha) + ")"


def verify_theorem_b(p: int = 3, *, jobs: int = 1, exact_filter: str | None = None,
                     sample: int = 2000, seed: int = 0, progress=None,
                     catalog_search: bool = True) -> ClassificationReport:
    """Classify every normal-form tuple over GF(p).

    ``exact_filter``: "all" re-runs ``hypothesis_check`` on every tuple, "sample"
    on ``sample`` random tuples, "off" skips it.  Default: all for p = 3.
    """
    t0 = time.time()
    if p < 3:
        raise UnsupportedField(f"GF({p}) is not supported")
    F = GF(p)
    total = p ** N_PARAMS
    if exact_filter is None:
        exact_filter = "all" if p == 3 else "sample"
    tasks = [(p, lo, min(total, lo + CHUNK)) for lo in range(0, total, CHUNK)]
    _log(progress, f"GF({p}): filtering {total} tuples")
    parts = _map(_filter_chunk, tasks, jobs)
    survivors = np.concatenate([a for a, _ in parts])
    mismatches = sum(m for _, m in parts)
    exact_note = "off"
    if exact_filter == "all":
        exact = np.concatenate(_map(_exact_filter_chunk, tasks, jobs))
        if not np.array_equal(exact, survivors):
            raise AssertionError("vectorised hypothesis filter disagrees with hypothesis_check")
        exact_note = "all"
    elif exact_filter == "sample":
        rng = random.Random(seed)
        for _ in range(sample):
            i = rng.randrange(total)
            ok = hypothesis_check(NormalForm.from_index(F, i).algebra()).satisfies
            if ok != _member(survivors, i):
                raise AssertionError(f"filter disagrees with hypothesis_check on tuple {i}")
        exact_note = f"sample({sample})"
    _log(progress, f"  {len(survivors)} tuples satisfy the hypotheses")

    cat_index = {}
    for name in REPRESENTATIVES:
        nf = read_normal_form(catalog(name, F))
        cat_index[name] = nf.index()
    moves = _moves(p)

    _log(progress, "  building move tables")
    nbr, zs = _move_tables(survivors, moves, p, progress)
    orbits = _Orbits(survivors, nbr, zs, moves, p)
    present = sorted((n for n in REPRESENTATIVES if _member(survivors, cat_index[n])), key=lambda n: cat_index[n])
    orbits.grow([cat_index[n] for n in present], progress)
    # orbits the catalog misses are seeded from their least member
    while (extra := orbits.first_unreached()) is not None:
        orbits.grow([extra], progress)
    del nbr, zs
    label, W, Winv = orbits.label, orbits.W, orbits.Winv
    sorted_roots = np.array(orbits.roots, dtype=np.int64)
    verified = _verify_witnesses(survivors, label, sorted_roots, W, Winv, p)
    _log(progress, f"  {len(sorted_roots)} orbits; {verified} witnesses verified")

    name_of = {v: k for k, v in cat_index.items()}
    orbit_names = [name_of.get(int(r)) for r in sorted_roots]
    orbit_sizes = np.bincount(label, minlength=len(sorted_roots))

    # resolve orbits outside the catalog
    cat_alg = {n: catalog(n, F) for n in REPRESENTATIVES}
    cat_fp = {n: fingerprint(cat_alg[n]) for n in REPRESENTATIVES}
    class_of = list(orbit_names)
    anomalies = []
    anomaly_roots = []
    for k, r in enumerate(sorted_roots):
        if orbit_names[k] is not None:
            continue
        L = NormalForm.from_index(F, int(r)).algebra()
        fp = fingerprint(L)
        transcript = {}
        for n in REPRESENTATIVES:
            res = find_isomorphism(L, cat_alg[n])
            if isinstance(res, BasisChange):
                if not check_isomorphism(L, cat_alg[n], res):  # pragma: no cover
                    raise AssertionError("search returned an invalid witness")
                class_of[k] = n
                transcript[n] = "isomorphic"
                break
            transcript[n] = {"result": type(res).__name__,
                             "fingerprint_differences": fp.differences(cat_fp[n]),
                             "reason": getattr(res, "reason", ""),
                             "differences": list(getattr(res, "differences", ())),
                             "nodes": getattr(res, "nodes", 0)}
        if class_of[k] is not None:
            continue
        for j in anomaly_roots:
            other = NormalForm.from_index(F, int(sorted_roots[j])).algebra()
            if isinstance(find_isomorphism(L, other), BasisChange):
                class_of[k] = class_of[j]
                break
        if class_of[k] is None:
            label_name = f"anomaly:{_alpha_str(F, NormalForm.from_index(F, int(r)).alpha)}"
            class_of[k] = label_name
            anomaly_roots.append(k)
            anomalies.append({
                "representative": label_name, "index": int(r),
                "table": {f"[{i + 1},{j + 1}]": _vec(F, v) for (i, j), v in L.table.items()},
                "fingerprint": _fp_dict(fp), "against_catalog": transcript,
            })
    sizes = {}
    for k, name in enumerate(class_of):
        sizes[name] = sizes.get(name, 0) + int(orbit_sizes[k])
    for a in anomalies:
        a["class_size"] = sizes[a["representative"]]
    pairwise = {}
    if catalog_search:
        for a_i, a in enumerate(REPRESENTATIVES):
            for b in REPRESENTATIVES[a_i + 1:]:
                res = find_isomorphism(cat_alg[a], cat_alg[b], use_fingerprint=False)
                pairwise[f"{a}-{b}"] = type(res).__name__
    reps = list(sizes)
    return ClassificationReport(
        field=F.name, total_tuples=total, surviving=int(len(survivors)), class_count=len(sizes),
        representatives=reps, class_sizes=sizes, anomalies=anomalies,
        filter_equivalence=mismatches == 0, filter_mismatches=mismatches, exact_filter=exact_note,
        orbit_count=len(sorted_roots), witnesses_verified=verified, catalog_pairwise=pairwise,
        elapsed=time.time() - t0, _survivors=survivors, _labels=label, _orbit_class=tuple(class_of))


def _vec(F, v) -> str:
    terms = [f"{F.fmt(a)}*x{k + 1}" for k, a in enumerate(v) if a]
    return " + ".join(terms) if terms else "0"


def _fp_dict(fp) -> dict:
    return {"gamma_dims": list(fp.gamma_dims), "zeta_dims": list(fp.zeta_dims),
            "dim_multiplier": fp.dim_multiplier, "t": fp.t, "t_derived": fp.t_derived,
            "profile": [[list(k), c] for k, c in (fp.profile or ())]}


# --------------------------------------------------------------------------
# dimension 5


@dataclass
class Dim5Report:
    field: str
    forced_is_l5_9: bool
    round_trips: int
    round_trips_found: int
    witness: list

    @property
    def ok(self) -> bool:
        return self.forced_is_l5_9 and self.round_trips_found == self.round_trips

    def to_dict(self) -> dict:
        return {"field": self.field, "forced_is_l5_9": self.forced_is_l5_9, "round_trips": self.round_trips,
                "round_trips_found": self.round_trips_found, "witness": self.witness, "ok": self.ok}


def forced_dim5(F: PrimeField) -> LieAlgebra:
    """Basis x1, x2, x3, z1, z2 with [x1,x2] = x3, [x1,x3] = z1, [x2,x3] = z2 and nothing else."""
    return LieAlgebra.from_brackets(F, 5, {(1, 2): 3, (1, 3): 4, (2, 3): 5})


def verify_dim5(p: int = 3, *, round_trips: int = 100, seed: int = 0) -> Dim5Report:
    F = GF(p)
    forced = forced_dim5(F)
    target = catalog("L5_9", F)
    res = find_isomorphism(forced, target)
    ok = isinstance(res, BasisChange) and check_isomorphism(forced, target, res)
    rng = random.Random(seed)
    found = 0
    for _ in range(round_trips):
        P = random_basis_change(F, 5, rng)
        moved = apply_basis_change(target, P)
        r = find_isomorphism(target, moved)
        found += isinstance(r, BasisChange) and check_isomorphism(target, moved, r)
    witness = [list(map(int, row)) for row in res.matrix.rows] if isinstance(res, BasisChange) else []
    return Dim5Report(F.name, ok, round_trips, found, witness)


# --------------------------------------------------------------------------
# Theorem A


@dataclass
class ClauseRun:
    name: str
    expected: str | None
    clause: str | None
    checks: dict
    error: str | None = None

    @property
    def ok(self) -> bool:
        return (self.error is None and all(self.checks.values())
                and (self.expected is None or self.clause == self.expected))


def _expected_clause(name: str) -> str:
    return "viii" if name == "viii-action" else name


def verify_theorem_a(algebras: dict | None = None, field=None) -> list[ClauseRun]:
    """Classify each algebra; with no input, one exemplar per clause."""
    runs = []
    if algebras is None:
        from .scalar import QQ

        F = field or QQ
        algebras = {name: (clause_exemplar(name, F), _expected_clause(name))
                    for name in CLAUSES + ("viii-action",)}
    for name, item in algebras.items():
        L, expected = item if isinstance(item, tuple) else (item, None)
        try:
            w = theorem_a_classify(L)
        except HypothesisFailure as exc:
            runs.append(ClauseRun(name, expected, None, {}, f"hypotheses fail: {'; '.join(exc.report.failed())}"))
            continue
        except StructureMismatch as exc:
            runs.append(ClauseRun(name, expected, None, {}, f"structure mismatch: {exc}"))
            continue
        runs.append(ClauseRun(name, expected, w.clause, dict(w.checks)))
    return runs


def catalog_nonisomorphism(p: int) -> dict:
    """Exhaustive search (fingerprints disabled) on every pair of L1..L4."""
    F = GF(p)
    out = {}
    algs = {n: catalog(n, F) for n in REPRESENTATIVES}
    for i, a in enumerate(REPRESENTATIVES):
        for b in REPRESENTATIVES[i + 1:]:
            out[(a, b)] = find_isomorphism(algs[a], algs[b], use_fingerprint=False)
    return out


__all__ = ["ClassificationReport", "Dim5Report", "ClauseRun", "verify_theorem_b", "verify_dim5",
           "verify_theorem_a", "forced_dim5", "catalog_nonisomorphism", "NotIsomorphic"]

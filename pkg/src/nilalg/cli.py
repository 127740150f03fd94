"""``liealg``: invariant reports, isomorphism tests and the classification checks.

Exit codes: 0 verified, 1 validation or hypothesis failure, 2 parse error,
3 finding (a classification statement did not reproduce as stated).

An ALGEBRA argument is a file (text or JSON), a catalog name (L1, H(2), A(4),
...) taken over ``--field``, or ``NF:a1,...,a10`` for a normal-form tuple.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .construct import catalog, recognize_dim1_derived, stem_decompose
from .errors import (AbelianInput, HypothesisFailure, JacobiFailure, LieAlgError, ParseError,
                     StepNotInvertible, StructureMismatch, UnknownName, UnsupportedField, WrongDerivedDim)
from .fileformat import algebra_to_json, load_algebra
from .isomorph import BasisChange, Inconclusive, apply_basis_change, check_isomorphism, find_isomorphism
from .liealg import LieAlgebra, format_vector, hypothesis_check, is_stem, moneyhun_check, series
from .multiplier import invariant_bundle, tail_multiplier
from .normal_form import NormalForm
from .reduction import parse_script, run_reduction
from .scalar import PrimeField, parse_field

OK, INVALID, PARSE, FINDING = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# --------------------------------------------------------------------------
# helpers


def _field(text):
    try:
        return parse_field(text)
    except UnsupportedField as exc:
        raise _Exit(PARSE, str(exc)) from exc


def resolve_algebra(spec: str, field_text: str) -> LieAlgebra:
    if os.path.exists(spec):
        return load_algebra(spec)
    F = _field(field_text)
    if spec.startswith("NF:"):
        try:
            alpha = [F.parse(a) for a in spec[3:].split(",")]
            return NormalForm(F, tuple(alpha)).algebra()
        except (ValueError, LieAlgError) as exc:
            raise ParseError(f"bad normal-form tuple {spec!r}: {exc}") from exc
    try:
        return catalog(spec, F)
    except UnknownName as exc:
        raise _Exit(PARSE, f"{spec!r} is neither a file nor a catalog name") from exc


def _rows(M) -> list[list[str]]:
    return [[M.field.fmt(a) for a in r] for r in M.rows]


def _matrix_text(M) -> str:
    cells = _rows(M)
    w = max(len(c) for r in cells for c in r)
    return "\n".join("  [" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


def _table_text(L: LieAlgebra) -> str:
    return "\n".join("  " + line for line in L.describe().splitlines())


def _basis_text(F, S) -> str:
    if S is None:
        return "-"
    return "<" + ", ".join(format_vector(F, v) for v in S.basis) + ">"


def _emit(args, report: dict, text: str):
    if args.json:
        print(json.dumps(report, indent=2, default=str))
    else:
        print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, default=str)


def _verdict(flag: bool) -> str:
    return "PASS" if flag else "FAIL"


# --------------------------------------------------------------------------
# commands


def cmd_info(args) -> int:
    L = resolve_algebra(args.algebra, args.field)
    s = series(L)
    b = invariant_bundle(L)
    h = hypothesis_check(L)
    mh = moneyhun_check(L)
    report = {
        "algebra": algebra_to_json(L), "dim": L.dim, "field": L.field.name,
        "gamma_dims": list(s.gamma_dims), "zeta_dims": list(s.zeta_dims),
        "nilpotency_class": s.nilpotency_class, "dim_center": b.dim_center,
        "stem": is_stem(L) if not L.is_abelian() else False,
        "dim_multiplier": b.dim_multiplier, "dim_multiplier_tails": b.dim_multiplier_tails,
        "t": b.t, "t_derived": b.t_derived,
        "moneyhun": {"n": mh.n, "bound": mh.bound, "dim_derived": mh.dim_derived, "holds": mh.holds},
        "hypotheses": {"satisfies": h.satisfies, "failed": h.failed()},
    }
    lines = [
        f"dim {L.dim} over {L.field.name}",
        f"lower central series dims {s.gamma_dims}",
        f"upper central series dims {s.zeta_dims}",
        f"class {s.nilpotency_class}; dim Z(L) = {b.dim_center}; stem: {'yes' if report['stem'] else 'no'}",
        f"dim M(L) = {b.dim_multiplier} (homology), {b.dim_multiplier_tails} (tails)"
        + ("" if b.routes_agree else "  ** routes disagree **"),
        f"t(L) = {b.t}, t(L^2) = {b.t_derived}",
        f"Moneyhun: dim L^2 = {mh.dim_derived} <= {mh.bound} (n = {mh.n}): {_verdict(mh.holds)}",
        f"hypotheses: {_verdict(h.satisfies)}" + ("" if h.satisfies else " (" + "; ".join(h.failed()) + ")"),
    ]
    try:
        d1 = recognize_dim1_derived(L)
        report["dim1_derived"] = {"m": d1.m, "abelian_dim": d1.abelian_dim, "capable": d1.capable}
        lines.append(f"L^2 is a line: H({d1.m}) + A({d1.abelian_dim}), m={d1.m}, "
                     f"capable={'true' if d1.capable else 'false'}")
    except WrongDerivedDim:
        pass
    if not L.is_abelian() and not report["stem"]:
        try:
            st = stem_decompose(L)
            report["stem_part_dim"] = st.stem.dim
            lines.append(f"stem part dim {st.stem.dim}, abelian summand dim {st.abelian.dim}")
        except AbelianInput:  # pragma: no cover - excluded above
            pass
    _emit(args, report, "\n".join(lines))
    return OK if b.routes_agree else INVALID


def cmd_multiplier(args) -> int:
    L = resolve_algebra(args.algebra, args.field)
    tp = tail_multiplier(L)
    b = invariant_bundle(L)
    report = {"dim_multiplier": b.dim_multiplier, "dim_multiplier_tails": tp.dim_multiplier,
              "defining_set": [list(x) for x in tp.defset], "tails": [list(x) for x in tp.tails],
              "relation_rank": tp.rank, "t": b.t, "agree": b.routes_agree}
    lines = [f"defining set: {', '.join(f'[{i},{j}]' for i, j in tp.defset) or '-'}",
             f"{len(tp.tails)} tails, {tp.rank} independent Jacobi relations",
             *("  " + r for r in tp.describe()),
             f"dim M(L) = {tp.dim_multiplier} (tails) / {b.dim_multiplier} (homology): "
             f"{'agree' if b.routes_agree else 'DISAGREE'}",
             f"t(L) = {b.t}"]
    _emit(args, report, "\n".join(lines))
    return OK if b.routes_agree else INVALID


def cmd_iso(args) -> int:
    A = resolve_algebra(args.first, args.field)
    B = resolve_algebra(args.second, args.field)
    res = find_isomorphism(A, B, use_fingerprint=not args.no_fingerprint)
    if isinstance(res, BasisChange):
        ok = check_isomorphism(A, B, res)
        report = {"isomorphic": True, "verified": ok, "matrix": _rows(res.matrix)}
        text = f"isomorphic (witness verified: {ok}); columns give the second basis in the first:\n" \
               + _matrix_text(res.matrix)
        code = OK if ok else INVALID
    elif isinstance(res, Inconclusive):
        report = {"isomorphic": None, "reason": res.reason, "evidence": res.evidence}
        text = f"inconclusive: {res.reason}"
        code = INVALID
    else:
        report = {"isomorphic": False, "reason": res.reason, "differences": list(res.differences),
                  "nodes": res.nodes}
        why = ", ".join(res.differences) if res.differences else f"search exhausted after {res.nodes} nodes"
        text = f"not isomorphic ({res.reason}: {why})"
        code = OK
    if args.expect is not None:
        want = args.expect == "iso"
        if report["isomorphic"] is not want:
            code = FINDING
    _emit(args, report, text)
    return code


def _script_source(text: str):
    from .subcases import SUBCASES, get_subcase

    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            return parse_script(fh.read(), name=os.path.basename(text)), None
    if text in SUBCASES or text.endswith("-literal"):
        literal = text.endswith("-literal")
        sub = get_subcase(text.removesuffix("-literal"), literal=literal)
        return sub.script(), sub
    raise _Exit(PARSE, f"{text!r} is neither a script file nor a subcase name")


def _bindings(items) -> dict:
    out = {}
    for item in items or ():
        for part in item.replace(",", " ").split():
            key, eq, value = part.partition("=")
            if not eq:
                raise ParseError(f"bad binding {part!r}; expected aK=value")
            out[key] = value
    return out


def cmd_reduce(args) -> int:
    script, sub = _script_source(args.script)
    overrides = _bindings(args.bind)
    if args.algebra == "sample":
        if sub is None:
            raise _Exit(INVALID, "`sample` needs a subcase script")
        from .subcases import sample_admissible

        F = _field(args.field)
        if not isinstance(F, PrimeField):
            raise _Exit(INVALID, "sampling admissible points needs a finite field")
        nf = sample_admissible(sub, F, random.Random(args.seed), 1)[0]
        L = nf.algebra()
        overrides = {**{f"a{k + 1}": v for k, v in enumerate(nf.alpha)}, **overrides}
    else:
        L = resolve_algebra(args.algebra, args.field)
        if args.algebra.startswith("NF:"):
            alpha = args.algebra[3:].split(",")
            overrides = {**{f"a{k + 1}": v for k, v in enumerate(alpha)}, **overrides}
    try:
        final, change = run_reduction(L, script, overrides)
    except StepNotInvertible as exc:
        _emit(args, {"error": "step not invertible", "line": exc.line_no, "step": exc.step, "detail": exc.detail},
              f"step not invertible at line {exc.line_no} `{exc.step}`: {exc.detail}")
        return INVALID
    if apply_basis_change(L, change) != final:  # pragma: no cover - engine invariant
        raise AssertionError("composite change does not reproduce the final table")
    report = {"steps": len(script.steps), "matrix": _rows(change.matrix), "final": algebra_to_json(final)}
    lines = [f"{len(script.steps)} steps; composite basis change:", _matrix_text(change.matrix),
             "final table:", _table_text(final)]
    code = OK
    expect = args.expect or (script.target if args.check_target else None)
    if expect:
        target = L if expect == "self" else catalog(expect, L.field)
        if final == target:
            verdict, how = True, "exact"
        else:
            res = find_isomorphism(final, target)
            verdict = isinstance(res, BasisChange)
            how = "isomorphic" if verdict else f"not isomorphic ({res.reason})"
        report["expect"] = {"target": expect, "pass": verdict, "how": how}
        lines.append(f"expect {expect}: {_verdict(verdict)} ({how})")
        code = OK if verdict else FINDING
    _emit(args, report, "\n".join(lines))
    return code


def cmd_verify_theorem_b(args) -> int:
    from .verify import verify_theorem_b

    F = _field(args.field)
    if not isinstance(F, PrimeField):
        raise _Exit(INVALID, "the enumeration needs a finite field")
    if F.p > 3 and not args.large:
        raise _Exit(INVALID, f"{F.name} has {F.p ** 10} tuples; pass --large to run it")
    progress = (lambda m: print(m, file=sys.stderr, flush=True)) if not args.quiet else None
    r = verify_theorem_b(F.p, jobs=args.jobs, exact_filter=args.exact_filter, seed=args.seed, progress=progress)
    lines = [f"{r.field}: {r.total_tuples} tuples, {r.surviving} satisfy the hypotheses",
             f"filter equivalence (hypotheses <=> dim Z = 2): {_verdict(r.filter_equivalence)} "
             f"[exact re-check: {r.exact_filter}]",
             f"{r.orbit_count} orbits, {r.witnesses_verified} witnesses verified",
             f"{r.class_count} classes:"]
    lines += [f"  {name}: {size}" for name, size in r.class_sizes.items()]
    for a in r.anomalies:
        lines.append(f"anomaly {a['representative']} (index {a['index']}):")
        lines += [f"  {k} = {v}" for k, v in a["table"].items()]
        for name, tr in a["against_catalog"].items():
            how = ", ".join(tr["differences"]) if tr["differences"] else f"search exhausted, {tr['nodes']} nodes"
            lines.append(f"  vs {name}: not isomorphic ({how})")
    lines.append(f"report consistent: {_verdict(r.consistent)}; four classes L1..L4: {_verdict(r.matches_claim)}")
    _emit(args, r.to_dict(), "\n".join(lines))
    if not r.consistent:
        return INVALID
    return OK if r.matches_claim else FINDING


def cmd_verify_dim5(args) -> int:
    from .verify import verify_dim5

    F = _field(args.field)
    if not isinstance(F, PrimeField):
        raise _Exit(INVALID, "dim-5 check runs over a finite field")
    r = verify_dim5(F.p, round_trips=args.trials, seed=args.seed)
    text = (f"{r.field}: forced dim-5 structure is L5_9: {_verdict(r.forced_is_l5_9)}\n"
            f"random basis changes recovered: {r.round_trips_found}/{r.round_trips}")
    _emit(args, r.to_dict(), text)
    return OK if r.ok else FINDING


def cmd_verify_theorem_a(args) -> int:
    from .theorem_a import theorem_a_classify
    from .verify import verify_theorem_a

    if args.algebra and not args.builtin:
        L = resolve_algebra(args.algebra, args.field)
        try:
            w = theorem_a_classify(L)
        except HypothesisFailure as exc:
            _emit(args, {"error": "hypotheses", "failed": exc.report.failed()},
                  "hypotheses fail: " + "; ".join(exc.report.failed()))
            return INVALID
        except StructureMismatch as exc:
            _emit(args, {"error": "structure mismatch", "detail": str(exc)}, f"structure mismatch: {exc}")
            return FINDING
        F = L.field
        report = {"clause": w.clause, "variant": w.variant, "m": w.m, "r": w.r, "checks": w.checks,
                  "I": [list(map(F.fmt, v)) for v in w.I.basis]}
        lines = [f"clause {w.clause}" + (f" ({w.variant})" if w.variant else ""),
                 f"  I = {_basis_text(F, w.I)}", f"  T = {_basis_text(F, w.T)}",
                 f"  A = {_basis_text(F, w.A)}", f"  K = {_basis_text(F, w.K)}"]
        lines += [f"  {name}: {_verdict(ok)}" for name, ok in w.checks.items()]
        _emit(args, report, "\n".join(lines))
        return OK if w.valid else FINDING
    F = _field(args.field)
    runs = verify_theorem_a(field=F)
    report = {"field": F.name, "runs": [{"name": r.name, "expected": r.expected, "clause": r.clause,
                                         "checks": r.checks, "error": r.error, "ok": r.ok} for r in runs]}
    lines = []
    for r in runs:
        got = r.clause if r.error is None else r.error
        lines.append(f"{r.name:12s} -> {got}: {_verdict(r.ok)}")
    _emit(args, report, "\n".join(lines))
    if all(r.ok for r in runs):
        return OK
    return INVALID if any(r.error and r.error.startswith("hypotheses") for r in runs) else FINDING


# --------------------------------------------------------------------------
# entry point


def _command(sub, name, func, help, field="Q"):
    p = sub.add_parser(name, help=help)
    p.add_argument("--field", default=field, help="Q or GF(p) for catalog names and NF tuples")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    p.add_argument("--out", help="also write the JSON report to this file")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=func)
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="liealg", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = _command(sub, "info", cmd_info, "series, multiplier, invariants, hypotheses")
    p.add_argument("algebra")

    p = _command(sub, "multiplier", cmd_multiplier, "tail presentation of the multiplier")
    p.add_argument("algebra")

    p = _command(sub, "iso", cmd_iso, "decide isomorphism of two algebras")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--expect", choices=("iso", "noniso"))
    p.add_argument("--no-fingerprint", action="store_true", help="search even when fingerprints differ")

    p = _command(sub, "reduce", cmd_reduce, "replay a change-of-basis script")
    p.add_argument("algebra", help="ALGEBRA, or `sample` to draw an admissible point of a subcase")
    p.add_argument("script", help="script file or subcase name (1.1 ... 3.2, or e.g. 2.1-literal)")
    p.add_argument("--bind", action="append", help="parameter values, e.g. a1=2,a3=0")
    p.add_argument("--expect", help="catalog name or `self`")
    p.add_argument("--check-target", action="store_true", help="expect the script's own `target` line")

    p = _command(sub, "verify-theorem-b", cmd_verify_theorem_b, "classify every normal-form tuple", "GF(3)")
    p.add_argument("--large", action="store_true", help="allow fields beyond GF(3)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--exact-filter", choices=("all", "sample", "off"))
    p.add_argument("--quiet", action="store_true")

    p = _command(sub, "verify-dim5", cmd_verify_dim5, "the forced dim-5 structure is L5_9", "GF(3)")
    p.add_argument("--trials", type=int, default=100)

    p = _command(sub, "verify-theorem-a", cmd_verify_theorem_a, "clause classification")
    p.add_argument("algebra", nargs="?")
    p.add_argument("--builtin", action="store_true", help="one exemplar per clause")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"liealg: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"liealg: parse error: {exc}", file=sys.stderr)
        return PARSE
    except JacobiFailure as exc:
        print(f"liealg: {exc}", file=sys.stderr)
        return INVALID
    except UnknownName as exc:
        print(f"liealg: {exc}", file=sys.stderr)
        return PARSE
    except LieAlgError as exc:
        print(f"liealg: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())

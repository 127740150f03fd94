"""The six proof subcases of the dimension-7 classification as replayable scripts.

Each subcase fixes the case conditions on (a9, a10), a set of parameter
equalities, and a target catalog algebra.  ``sample_admissible`` draws
normal-form parameters that satisfy all of these, satisfy the standing
hypotheses, and make every inversion in the script defined.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources

from .construct import catalog
from .errors import StepNotInvertible, UnknownName
from .isomorph import BasisChange, apply_basis_change, find_isomorphism
from .liealg import hypothesis_check
from .normal_form import NormalForm
from .reduction import ReductionScript, parse_script, run_reduction
from .scalar import PrimeField


@dataclass(frozen=True)
class Subcase:
    name: str
    target: str
    case: int                      # 1: a9 = a10 = 0;  2: a10 = 0 != a9;  3: a9 = 0 != a10
    equalities: tuple              # pairs (i, j): a_i = a_j
    script_file: str

    def script(self) -> ReductionScript:
        text = resources.files("nilalg.scripts").joinpath(self.script_file).read_text()
        return parse_script(text, name=self.name)


SUBCASES = {
    "1.1": Subcase("1.1", "L2", 1, ((1, 6), (3, 8)), "subcase_1_1.txt"),
    "1.2": Subcase("1.2", "L1", 1, ((2, 5), (3, 8), (4, 7)), "subcase_1_2.txt"),
    "1.3": Subcase("1.3", "L1", 1, ((1, 6), (2, 5), (4, 7)), "subcase_1_3.txt"),
    "2.1": Subcase("2.1", "L4", 2, ((1, 6), (2, 4), (3, 8), (5, 7)), "subcase_2_1.txt"),
    "3.1": Subcase("3.1", "L4", 3, ((1, 6), (2, 5), (4, 7)), "subcase_3_1.txt"),
    "3.2": Subcase("3.2", "L3", 3, ((1, 6), (2, 5), (3, 8), (4, 7)), "subcase_3_2.txt"),
}

# transcriptions that keep the printed coefficients where the repaired
# scripts above had to change them
LITERAL = {
    "1.1": Subcase("1.1-literal", "L2", 1, ((1, 6), (3, 8)), "subcase_1_1_literal.txt"),
    "2.1": Subcase("2.1-literal", "L4", 2, ((1, 6), (2, 4), (3, 8), (5, 7)), "subcase_2_1_literal.txt"),
    "3.1": Subcase("3.1-literal", "L4", 3, ((1, 6), (2, 5), (4, 7)), "subcase_3_1_literal.txt"),
}


def get_subcase(name: str, literal: bool = False) -> Subcase:
    table = LITERAL if literal else SUBCASES
    if name not in table:
        raise UnknownName(f"no {'literal ' if literal else ''}subcase {name!r}; known: {', '.join(table)}")
    return table[name]


def _draw(sub: Subcase, F: PrimeField, rng: random.Random) -> tuple:
    a = [F.random(rng) for _ in range(10)]
    if sub.case == 1:
        a[8] = a[9] = 0
    elif sub.case == 2:
        a[9] = 0
        a[8] = F.random(rng, nonzero=True)
    else:
        a[8] = 0
        a[9] = F.random(rng, nonzero=True)
    for i, j in sub.equalities:
        a[j - 1] = a[i - 1]
    return tuple(a)


def is_admissible(sub: Subcase, nf: NormalForm, script: ReductionScript | None = None) -> bool:
    a = nf.alpha
    if sub.case == 1 and (a[8] or a[9]):
        return False
    if sub.case == 2 and (a[9] or not a[8]):
        return False
    if sub.case == 3 and (a[8] or not a[9]):
        return False
    if any(a[i - 1] != a[j - 1] for i, j in sub.equalities):
        return False
    L = nf.algebra()
    if not hypothesis_check(L).satisfies:
        return False
    try:
        run_reduction(L, script or sub.script(), _bindings(nf))
    except StepNotInvertible:
        return False
    return True


def _bindings(nf: NormalForm) -> dict:
    return {f"a{k + 1}": v for k, v in enumerate(nf.alpha)}


def sample_admissible(sub: Subcase, F: PrimeField, rng: random.Random, count: int,
                      max_tries: int = 100_000) -> list[NormalForm]:
    script = sub.script()
    out = []
    for _ in range(max_tries):
        if len(out) == count:
            break
        nf = NormalForm(F, _draw(sub, F, rng))
        if is_admissible(sub, nf, script):
            out.append(nf)
    if len(out) < count:
        raise RuntimeError(f"subcase {sub.name}: only {len(out)} admissible points in {max_tries} draws")
    return out


@dataclass(frozen=True)
class ReplayOutcome:
    subcase: str
    alpha: tuple
    target: str
    exact: bool                    # the final table equals the target's table
    isomorphic: bool | None        # decided by find_isomorphism when not exact
    change: BasisChange
    final_table: dict


def replay(sub: Subcase, nf: NormalForm, *, literal_script: ReductionScript | None = None,
           decide_isomorphism: bool = False) -> ReplayOutcome:
    L = nf.algebra()
    script = literal_script or sub.script()
    final, change = run_reduction(L, script, _bindings(nf))
    target = catalog(sub.target, nf.field)
    if apply_basis_change(L, change) != final:  # pragma: no cover - engine invariant
        raise AssertionError("composite change does not reproduce the final table")
    exact = final == target
    iso = None
    if not exact and decide_isomorphism:
        iso = isinstance(find_isomorphism(final, target), BasisChange)
    return ReplayOutcome(sub.name, nf.alpha, sub.target, exact, True if exact else iso, change,
                         dict(final.table))

"""Text and JSON formats for algebras given by structure constants.

Text::

    dim 7
    field GF(5)
    [1,2] = 3
    [1,4] = 2*6 + 7      # coefficient 1 is written as a bare index
    [4,5] = -1/2*7       # fractions only over Q

Line 1 gives the dimension and line 2 the field; unlisted brackets are zero.
The JSON mirror is ``{"dim": n, "field": "GF(5)", "brackets": [[i, j, [[k, "c"], ...]], ...]}``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .errors import JacobiFailure, ParseError, UnsupportedField
from .liealg import LieAlgebra, jacobi_check
from .scalar import Field, PrimeField, parse_field

_BRACKET = re.compile(r"^\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*=\s*(.*)$")
_TERM = re.compile(r"^([+-]?\d+(?:/\d+)?)\s*\*\s*(\d+)$|^(\d+)$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _coefficient(F: Field, text: str, line_no: int, col: int):
    if "/" in text and isinstance(F, PrimeField):
        raise ParseError(f"fractional coefficient {text!r} is only allowed over Q", line_no, col)
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coefficient {text!r}", line_no, col) from exc
    return F.canon(value)


def _split_terms(rhs: str) -> list[tuple[int, str]]:
    """Split on '+' that separate terms, keeping each term's offset within ``rhs``."""
    out, start = [], 0
    for m in re.finditer(r"\+", rhs):
        pos = m.start()
        before = rhs[:pos].rstrip()
        # a '+' right after '*' or at the start would be a sign, not a separator
        if before and not before.endswith("*"):
            out.append((start, rhs[start:pos]))
            start = pos + 1
    out.append((start, rhs[start:]))
    return out


def parse_algebra(text: str) -> LieAlgebra:
    lines = [(no, raw) for no, raw in enumerate(text.splitlines(), start=1) if _strip(raw)]
    if len(lines) < 2:
        raise ParseError("expected `dim <n>` and `field <F>` lines", lines[0][0] if lines else 1)
    (no1, l1), (no2, l2) = lines[0], lines[1]
    m = re.match(r"^dim\s+(\d+)$", _strip(l1))
    if not m:
        raise ParseError("first line must be `dim <n>`", no1, 1)
    n = int(m.group(1))
    m = re.match(r"^field\s+(\S+)$", _strip(l2))
    if not m:
        raise ParseError("second line must be `field Q` or `field GF(<p>)`", no2, 1)
    try:
        F = parse_field(m.group(1))
    except (UnsupportedField, ParseError) as exc:
        msg = exc.message if isinstance(exc, ParseError) else str(exc)
        raise ParseError(msg, no2, l2.index(m.group(1)) + 1) from exc
    table = {}
    for no, raw in lines[2:]:
        line = _strip(raw)
        offset = raw.index(line) + 1
        m = _BRACKET.match(line)
        if not m:
            raise ParseError("expected `[i,j] = <terms>`", no, offset)
        i, j = int(m.group(1)), int(m.group(2))
        if i == j:
            raise ParseError(f"self-bracket [{i},{j}] is not allowed", no, offset)
        if not (1 <= i < j <= n):
            raise ParseError(f"bracket [{i},{j}] needs 1 <= i < j <= {n}", no, offset)
        if (i - 1, j - 1) in table:
            raise ParseError(f"bracket [{i},{j}] given twice", no, offset)
        rhs = m.group(3)
        rhs_col = offset + m.start(3)
        if not rhs.strip():
            raise ParseError("empty right-hand side", no, rhs_col)
        vec = [F.canon(0)] * n
        for start, term in _split_terms(rhs):
            t = term.strip()
            col = rhs_col + start + (len(term) - len(term.lstrip()))
            tm = _TERM.match(t)
            if not tm:
                raise ParseError(f"bad term {t!r}; expected `<coeff>*<k>` or `<k>`", no, col)
            if tm.group(3):
                coeff, k = F.canon(1), int(tm.group(3))
            else:
                coeff, k = _coefficient(F, tm.group(1), no, col), int(tm.group(2))
            if not 1 <= k <= n:
                raise ParseError(f"basis index {k} outside 1..{n}", no, col)
            vec[k - 1] = F.canon(vec[k - 1] + coeff)
        table[(i - 1, j - 1)] = tuple(vec)
    L = LieAlgebra(F, n, table, check=False)
    bad = jacobi_check(L)
    if bad:
        raise JacobiFailure(bad[0])
    return L


def _fmt_coeff(F: Field, a) -> str:
    if isinstance(F, PrimeField):
        return str(int(a) % F.p)
    a = Fraction(a)
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def serialize_algebra(L: LieAlgebra) -> str:
    F = L.field
    out = [f"dim {L.dim}", f"field {F.name}"]
    for (i, j), v in L.table.items():
        terms = []
        for k, a in enumerate(v):
            if a == 0:
                continue
            terms.append(str(k + 1) if a == 1 else f"{_fmt_coeff(F, a)}*{k + 1}")
        out.append(f"[{i + 1},{j + 1}] = " + " + ".join(terms))
    return "\n".join(out) + "\n"


def algebra_to_json(L: LieAlgebra) -> dict:
    F = L.field
    brackets = []
    for (i, j), v in L.table.items():
        brackets.append([i + 1, j + 1, [[k + 1, _fmt_coeff(F, a)] for k, a in enumerate(v) if a != 0]])
    return {"dim": L.dim, "field": F.name, "brackets": brackets}


def algebra_from_json(data: dict | str) -> LieAlgebra:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    try:
        n, F = int(data["dim"]), parse_field(str(data["field"]))
        raw = data.get("brackets", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"JSON algebra needs keys dim, field, brackets ({exc})") from exc
    table = {}
    for entry in raw:
        try:
            i, j, terms = int(entry[0]), int(entry[1]), entry[2]
        except (IndexError, TypeError, ValueError) as exc:
            raise ParseError(f"bad bracket entry {entry!r}") from exc
        if i == j or not (1 <= i < j <= n) or (i - 1, j - 1) in table:
            raise ParseError(f"bad or repeated bracket [{i},{j}]")
        vec = [F.canon(0)] * n
        for k, c in terms:
            k = int(k)
            if not 1 <= k <= n:
                raise ParseError(f"basis index {k} outside 1..{n}")
            vec[k - 1] = F.canon(vec[k - 1] + _coefficient(F, str(c), None, None))
        table[(i - 1, j - 1)] = tuple(vec)
    L = LieAlgebra(F, n, table, check=False)
    bad = jacobi_check(L)
    if bad:
        raise JacobiFailure(bad[0])
    return L


def load_algebra(path: str) -> LieAlgebra:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return algebra_from_json(text)
    return parse_algebra(text)

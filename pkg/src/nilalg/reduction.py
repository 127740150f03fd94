"""Change-of-basis scripts: parse, bind parameters, replay on an algebra.

Script lines (``#`` starts a comment)::

    target L2                 # optional name of the algebra the script should reach
    bind a1=2 a3=-1           # parameter values; later bindings override earlier ones
    replace 4 <- 4 - a1*3     # new x4 = x4 - a1 x3, other basis vectors unchanged
    scale 5 by inv(a4)        # new x5 = a4^-1 x5
    swap 4 5
    relabel 1 <- 2, 2 <- 1, 3 <- -3     # simultaneous substitution

Scalar expressions use integers, parameters ``a1, a2, ...``, ``inv(e)``, ``/``,
``+ - *`` and ``c(i, j, k)``, the current coefficient of x_k in [x_i, x_j].
In a linear combination the last factor of every term is a basis index, so
``2*4`` is twice x4 and ``(a4*inv(a2))*4`` is a multiple of x4.

Each step is evaluated against the algebra produced by the steps before it.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field

from .errors import DivisionByZero, ParseError, StepNotInvertible
from .isomorph import BasisChange, apply_basis_change
from .liealg import LieAlgebra
from .linalg import Matrix
from .scalar import Field

_PARAM = re.compile(r"^a(\d+)$")


@dataclass(frozen=True)
class Step:
    kind: str           # replace | scale | swap | relabel
    line_no: int
    text: str
    args: tuple


@dataclass(frozen=True)
class ReductionScript:
    steps: tuple = ()
    bindings: dict = field(default_factory=dict)   # "a1" -> source text
    target: str | None = None
    name: str | None = None

    def bound(self, **values) -> "ReductionScript":
        merged = dict(self.bindings)
        merged.update({k: str(v) for k, v in values.items()})
        return ReductionScript(self.steps, merged, self.target, self.name)

    def parameters(self) -> set[str]:
        """Parameter names mentioned by the steps."""
        names = set()
        for st in self.steps:
            for node in _walk_args(st.args):
                if isinstance(node, ast.Name):
                    names.add(node.id)
        return names


def _walk_args(args):
    for a in args:
        if isinstance(a, ast.AST):
            yield from ast.walk(a)
        elif isinstance(a, tuple):
            yield from _walk_args(a)


# --------------------------------------------------------------------------
# parsing


def _expr(text: str, line_no: int) -> ast.AST:
    try:
        tree = ast.parse(text.strip(), mode="eval").body
    except SyntaxError as exc:
        raise ParseError(f"cannot parse expression {text.strip()!r}", line_no) from exc
    for node in ast.walk(tree):
        ok = isinstance(node, (ast.BinOp, ast.UnaryOp, ast.Constant, ast.Name, ast.Call,
                               ast.Add, ast.Sub, ast.Mult, ast.Div, ast.USub, ast.UAdd, ast.Load))
        if not ok:
            raise ParseError(f"unsupported syntax {type(node).__name__} in {text.strip()!r}", line_no)
        if isinstance(node, ast.Constant) and not (isinstance(node.value, int) and not isinstance(node.value, bool)):
            raise ParseError(f"only integer literals are allowed, got {node.value!r}", line_no)
        if isinstance(node, ast.Name) and node.id not in ("inv", "c") and not _PARAM.match(node.id):
            raise ParseError(f"unknown name {node.id!r}", line_no)
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in ("inv", "c") or node.keywords:
                raise ParseError("only inv(...) and c(i, j, k) may be called", line_no)
            want = 1 if node.func.id == "inv" else 3
            if len(node.args) != want:
                raise ParseError(f"{node.func.id} takes {want} argument(s)", line_no)
            if node.func.id == "c" and not all(isinstance(a, ast.Constant) for a in node.args):
                raise ParseError("c(i, j, k) takes integer literals", line_no)
    return tree


def _terms(tree: ast.AST, line_no: int, sign: int = 1) -> list[tuple[int, int, ast.AST | None]]:
    """Split a linear combination into (sign, basis index, coefficient expression)."""
    if isinstance(tree, ast.BinOp) and isinstance(tree.op, (ast.Add, ast.Sub)):
        right_sign = sign if isinstance(tree.op, ast.Add) else -sign
        return _terms(tree.left, line_no, sign) + _terms(tree.right, line_no, right_sign)
    if isinstance(tree, ast.UnaryOp) and isinstance(tree.op, (ast.USub, ast.UAdd)):
        return _terms(tree.operand, line_no, -sign if isinstance(tree.op, ast.USub) else sign)
    if isinstance(tree, ast.Constant):
        return [(sign, tree.value, None)]
    if isinstance(tree, ast.BinOp) and isinstance(tree.op, ast.Mult) and isinstance(tree.right, ast.Constant):
        return [(sign, tree.right.value, tree.left)]
    raise ParseError(f"term {ast.unparse(tree)!r} does not end in a basis index", line_no)


def _index(text: str, line_no: int) -> int:
    try:
        k = int(text)
    except ValueError as exc:
        raise ParseError(f"expected a basis index, got {text!r}", line_no) from exc
    if k < 1:
        raise ParseError(f"basis indices start at 1, got {k}", line_no)
    return k


def parse_script(text: str, name: str | None = None) -> ReductionScript:
    steps, bindings, target = [], {}, None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "target":
            target = rest or None
        elif word == "bind":
            for item in rest.split():
                key, eq, value = item.partition("=")
                if not eq or not _PARAM.match(key) or not value:
                    raise ParseError(f"bad binding {item!r}; expected aK=value", line_no)
                bindings[key] = value
        elif word == "replace":
            lhs, arrow, rhs = rest.partition("<-")
            if not arrow:
                raise ParseError("replace needs `i <- combination`", line_no)
            i = _index(lhs.strip(), line_no)
            steps.append(Step("replace", line_no, line, (i, tuple(_terms(_expr(rhs, line_no), line_no)))))
        elif word == "scale":
            m = re.match(r"^(\S+)\s+by\s+(.+)$", rest)
            if not m:
                raise ParseError("scale needs `i by expression`", line_no)
            steps.append(Step("scale", line_no, line, (_index(m.group(1), line_no), _expr(m.group(2), line_no))))
        elif word == "swap":
            parts = rest.split()
            if len(parts) != 2:
                raise ParseError("swap needs two indices", line_no)
            steps.append(Step("swap", line_no, line, tuple(_index(x, line_no) for x in parts)))
        elif word == "relabel":
            subs = []
            for part in rest.split(","):
                lhs, arrow, rhs = part.partition("<-")
                if not arrow:
                    raise ParseError("relabel entries look like `i <- combination`", line_no)
                subs.append((_index(lhs.strip(), line_no), tuple(_terms(_expr(rhs, line_no), line_no))))
            if len({i for i, _ in subs}) != len(subs):
                raise ParseError("relabel assigns the same index twice", line_no)
            steps.append(Step("relabel", line_no, line, tuple(subs)))
        else:
            raise ParseError(f"unknown step {word!r}", line_no)
    return ReductionScript(tuple(steps), bindings, target, name)


# --------------------------------------------------------------------------
# evaluation


class _Evaluator:
    def __init__(self, L: LieAlgebra, values: dict, step: Step):
        self.L, self.F, self.values, self.step = L, L.field, values, step

    def fail(self, detail):
        raise StepNotInvertible(self.step.line_no, self.step.text, detail)

    def scalar(self, node):
        F = self.F
        if isinstance(node, ast.Constant):
            return F.canon(node.value)
        if isinstance(node, ast.Name):
            if node.id not in self.values:
                raise ParseError(f"parameter {node.id} is not bound", self.step.line_no)
            return self.values[node.id]
        if isinstance(node, ast.UnaryOp):
            v = self.scalar(node.operand)
            return F.canon(-v) if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = self.scalar(node.left), self.scalar(node.right)
            if isinstance(node.op, ast.Add):
                return F.canon(a + b)
            if isinstance(node.op, ast.Sub):
                return F.canon(a - b)
            if isinstance(node.op, ast.Mult):
                return F.canon(a * b)
            return F.canon(a * self.inverse(b, ast.unparse(node.right)))
        if node.func.id == "inv":
            return self.inverse(self.scalar(node.args[0]), ast.unparse(node.args[0]))
        n = self.L.dim
        i, j, k = (a.value for a in node.args)
        if not (1 <= i <= n and 1 <= j <= n and 1 <= k <= n):
            raise ParseError(f"c({i}, {j}, {k}) is out of range for dimension {n}", self.step.line_no)
        return self.L.structure_constant(i - 1, j - 1, k - 1)

    def inverse(self, v, label):
        try:
            return self.F.inv(v)
        except DivisionByZero:
            self.fail(f"{label} = 0")

    def combination(self, terms):
        n = self.L.dim
        vec = [0] * n
        for sign, k, coeff in terms:
            if not 1 <= k <= n:
                raise ParseError(f"basis index {k} out of range for dimension {n}", self.step.line_no)
            c = self.F.canon(1) if coeff is None else self.scalar(coeff)
            vec[k - 1] = self.F.canon(vec[k - 1] + sign * c)
        return tuple(vec)


def _check_index(step: Step, i: int, n: int):
    if not 1 <= i <= n:
        raise ParseError(f"basis index {i} out of range for dimension {n}", step.line_no)


def step_matrix(L: LieAlgebra, step: Step, values: dict) -> Matrix:
    """The basis change performed by one step on the current algebra."""
    F, n = L.field, L.dim
    ev = _Evaluator(L, values, step)
    cols = [[F.canon(int(r == c)) for r in range(n)] for c in range(n)]
    if step.kind == "replace":
        i, terms = step.args
        _check_index(step, i, n)
        vec = ev.combination(terms)
        if vec[i - 1] == 0:
            ev.fail(f"the coefficient of x{i} in its replacement is 0")
        cols[i - 1] = list(vec)
    elif step.kind == "scale":
        i, expr = step.args
        _check_index(step, i, n)
        s = ev.scalar(expr)
        if s == 0:
            ev.fail(f"{ast.unparse(expr)} = 0")
        cols[i - 1] = [F.canon(s * int(r == i - 1)) for r in range(n)]
    elif step.kind == "swap":
        i, j = step.args
        _check_index(step, i, n)
        _check_index(step, j, n)
        cols[i - 1], cols[j - 1] = cols[j - 1], cols[i - 1]
    else:
        for i, terms in step.args:
            _check_index(step, i, n)
            cols[i - 1] = list(ev.combination(terms))
    M = Matrix.from_columns(F, [tuple(c) for c in cols], n)
    if not M.is_invertible():
        ev.fail("the substitution is singular")
    return M


def bind_values(F: Field, script: ReductionScript, overrides: dict | None = None) -> dict:
    raw = dict(script.bindings)
    if overrides:
        raw.update({k: v for k, v in overrides.items()})
    out = {}
    for key, value in raw.items():
        out[key] = F.parse(value) if isinstance(value, str) else F.canon(value)
    return out


def run_reduction(L: LieAlgebra, script: ReductionScript, bindings: dict | None = None,
                  trace: list | None = None) -> tuple[LieAlgebra, BasisChange]:
    """Replay ``script`` on L; returns the final algebra and the composite change.

    ``apply_basis_change(L, change) == algebra`` always holds.  If ``trace`` is a
    list, (step, algebra after the step) pairs are appended to it.
    """
    values = bind_values(L.field, script, bindings)
    current = L
    total = Matrix.identity(L.field, L.dim)
    for step in script.steps:
        M = step_matrix(current, step, values)
        current = apply_basis_change(current, M)
        total = total @ M
        if trace is not None:
            trace.append((step, current))
    return current, BasisChange(total)

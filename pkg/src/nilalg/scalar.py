"""Exact scalar fields: the rationals and prime fields GF(p) with p odd.

Internally every vector and matrix stores *raw* values (``Fraction`` for Q,
``int`` in ``[0, p)`` for GF(p)) and passes the owning field alongside.  Code
does ordinary ``+ - *`` on raw values and calls ``field.canon`` to bring the
result back to its canonical representative.  ``Scalar`` is the checked,
user-facing wrapper.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from sympy import isprime, primitive_root

from .errors import DivisionByZero, FieldMismatch, ParseError, UnsupportedField


class Field:
    name: str
    char: int
    order: int | None

    def canon(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def elements(self) -> Iterator:
        raise TypeError(f"{self} is infinite")

    def fmt(self, x) -> str:
        return str(x)

    def __str__(self):
        return self.name

    def __repr__(self):
        return self.name

    def __call__(self, x) -> "Scalar":
        return Scalar(self, self.canon(x))


class Rationals(Field):
    name = "Q"
    char = 0
    order = None

    def canon(self, x):
        return x if type(x) is Fraction else Fraction(x)

    def inv(self, x):
        if x == 0:
            raise DivisionByZero("inverse of 0 in Q")
        return 1 / Fraction(x)

    def parse(self, text):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {text!r}") from exc

    def random(self, rng, nonzero=False, bound=3):
        while True:
            x = Fraction(rng.randint(-bound, bound))
            if x or not nonzero:
                return x

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __reduce__(self):
        return (Rationals, ())


class PrimeField(Field):
    char: int
    order: int

    def __init__(self, p: int):
        if p == 2:
            raise UnsupportedField("characteristic 2 is not supported")
        if p < 2 or not isprime(p):
            raise UnsupportedField(f"GF({p}): {p} is not an odd prime")
        self.p = self.char = self.order = p
        self.name = f"GF({p})"
        self._inverses = [0] + [pow(a, -1, p) for a in range(1, p)] if p < 10**4 else None

    def canon(self, x):
        if type(x) is int:
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"{x} has no image in {self.name}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise DivisionByZero(f"inverse of 0 in {self.name}")
        if self._inverses is not None:
            return self._inverses[x]
        return pow(x, -1, self.p)

    def parse(self, text):
        try:
            return self.canon(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not an element of {self.name}: {text!r}") from exc

    def elements(self):
        return iter(range(self.p))

    def random(self, rng, nonzero=False):
        return rng.randrange(1 if nonzero else 0, self.p)

    def is_square(self, x) -> bool:
        x %= self.p
        return x == 0 or pow(x, (self.p - 1) // 2, self.p) == 1

    @property
    def generator(self) -> int:
        return primitive_root(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __reduce__(self):
        return (GF, (self.p,))


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


_FIELD_RE = re.compile(r"^\s*(?:Q|QQ|GF\(\s*(\d+)\s*\))\s*$")


def parse_field(text: str) -> Field:
    """``"Q"`` or ``"GF(p)"`` -> field object."""
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError(f"unknown field {text!r}; expected Q or GF(p)")
    if m.group(1) is None:
        return QQ
    return GF(int(m.group(1)))


def check_same_field(a: Field, b: Field) -> Field:
    if a != b:
        raise FieldMismatch(f"{a} vs {b}")
    return a


@dataclass(frozen=True)
class Scalar:
    field: Field
    value: object

    def _other(self, other):
        if isinstance(other, Scalar):
            check_same_field(self.field, other.field)
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.canon(other)
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else Scalar(self.field, self.field.canon(self.value + v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else Scalar(self.field, self.field.canon(self.value - v))

    def __rsub__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else Scalar(self.field, self.field.canon(v - self.value))

    def __mul__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else Scalar(self.field, self.field.canon(self.value * v))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.canon(-self.value))

    def inv(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.canon(self.value * self.field.inv(v)))

    def __rtruediv__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.canon(v * self.field.inv(self.value)))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.field.fmt(self.value)


def scalar_arith(op: str, a: Scalar, b: Scalar | None = None) -> Scalar:
    """Apply ``op`` in {"+", "-", "*", "/", "neg", "inv"} to field elements."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if b is None:
        raise TypeError(f"operator {op!r} needs two operands")
    check_same_field(a.field, b.field)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise ValueError(f"unknown operator {op!r}")

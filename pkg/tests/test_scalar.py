from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nilalg.errors import DivisionByZero, FieldMismatch, ParseError, UnsupportedField
from nilalg.scalar import GF, QQ, Scalar, parse_field, scalar_arith


def test_inverse_mod_3():
    assert GF(3).inv(2) == 2
    assert scalar_arith("inv", GF(3)(2)).value == 2


def test_rational_addition_is_exact():
    assert scalar_arith("+", QQ(Fraction(1, 2)), QQ(Fraction(1, 3))).value == Fraction(5, 6)


def test_negating_zero():
    assert scalar_arith("neg", GF(5)(0)).value == 0


def test_inverse_of_zero_raises():
    with pytest.raises(DivisionByZero):
        GF(5).inv(0)
    with pytest.raises(DivisionByZero):
        QQ(0).inv()


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        GF(3)(1) + GF(5)(1)


@pytest.mark.parametrize("p", [2, 4, 9, 1, 0])
def test_unsupported_characteristics(p):
    with pytest.raises(UnsupportedField):
        GF(p)


def test_parse_field_names():
    assert parse_field("Q") == QQ
    assert parse_field("GF(7)") == GF(7)
    with pytest.raises(UnsupportedField):
        parse_field("GF(4)")
    with pytest.raises(ParseError):
        parse_field("R")


def test_fraction_canonicalisation_mod_p():
    assert GF(5).canon(Fraction(1, 2)) == 3
    with pytest.raises(DivisionByZero):
        GF(5).canon(Fraction(1, 5))


def test_parse_scalar_text():
    assert QQ.parse("-3/4") == Fraction(-3, 4)
    assert GF(3).parse("-1") == 2
    with pytest.raises(ParseError):
        GF(3).parse("x")


def test_generator_has_full_order():
    for p in (3, 5, 7, 11):
        g = GF(p).generator
        assert len({pow(g, k, p) for k in range(p - 1)}) == p - 1


@given(st.sampled_from([3, 5, 7]), st.integers(), st.integers(), st.integers())
def test_field_axioms_mod_p(p, a, b, c):
    F = GF(p)
    x, y, z = F(a), F(b), F(c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x - x == F(0)
    if x:
        assert x * x.inv() == F(1)


@given(st.fractions(), st.fractions())
def test_rational_division_round_trip(a, b):
    x, y = QQ(a), QQ(b)
    if y:
        assert (x / y) * y == x


def test_scalar_str():
    assert str(QQ(Fraction(-1, 2))) == "-1/2"
    assert str(GF(5)(-1)) == "4"
    assert isinstance(GF(5)(3), Scalar)

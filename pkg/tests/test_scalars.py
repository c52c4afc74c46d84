from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from structurable.scalars import (
    FieldMismatch, QuadField, QuadScalar, ScalarParseError, conj, divide, field_of,
    format_scalar, inverse, norm_to_base, parse_scalar, rational,
)

K = QuadField(2)
L = QuadField(-3)


def quads(field=K):
    return st.builds(field, rationals(), rationals())


def test_rational_normalizes_integral_fractions():
    assert rational(Fraction(6, 3)) == 2 and type(rational(Fraction(6, 3))) is int
    assert rational(Fraction(1, 2)) == Fraction(1, 2)
    assert rational("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        rational(0.5)


@pytest.mark.parametrize("d", [0, 1, 4, 9])
def test_square_parameters_are_rejected(d):
    with pytest.raises(ValueError):
        QuadField(d)


def test_sqrt_squares_to_d():
    assert K.sqrt * K.sqrt == 2
    assert L.sqrt * L.sqrt == -3


@given(quads(), quads(), quads())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@given(quads(), quads())
def test_conjugation_and_norm_are_multiplicative(a, b):
    assert conj(a * b) == conj(a) * conj(b)
    assert norm_to_base(a * b) == norm_to_base(a) * norm_to_base(b)
    assert norm_to_base(a) == a * conj(a)


@given(quads())
def test_inverse_is_exact(a):
    if a == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(a)
    else:
        assert a * inverse(a) == 1
        assert divide(a, a) == 1


def test_division_never_produces_floats():
    assert divide(1, 3) == Fraction(1, 3)
    assert type(divide(6, 3)) is int
    with pytest.raises(ZeroDivisionError):
        divide(1, 0)


def test_mixed_fields_are_rejected():
    with pytest.raises(FieldMismatch):
        K(1, 1) + L(1, 1)


def test_rationals_embed_and_compare():
    assert K(3, 0) == 3 and hash(K(3, 0)) == hash(3)
    assert field_of(K(1, 1)) == K and field_of(Fraction(1, 2)) is None
    assert not bool(K(0, 0))


@given(rationals(), rationals())
def test_round_trip_over_q_sqrt_d(p, q):
    x = K(p, q)
    assert parse_scalar(format_scalar(x), K) == x


@given(rationals())
def test_round_trip_over_q(p):
    assert parse_scalar(format_scalar(p)) == p


@pytest.mark.parametrize("text,want", [
    ("1/2+3/4*w", K(Fraction(1, 2), Fraction(3, 4))),
    (" - w ", K(0, -1)),
    ("1/2-w", K(Fraction(1, 2), -1)),
    ("w", K(0, 1)),
    ("-7", K(-7, 0)),
])
def test_parse_examples(text, want):
    assert parse_scalar(text, K) == want


def test_format_examples():
    assert format_scalar(K(Fraction(1, 2), Fraction(3, 4))) == "1/2+3/4*w"
    assert format_scalar(K(0, -1)) == "-w"
    assert format_scalar(K(Fraction(1, 2), -1)) == "1/2-w"


@pytest.mark.parametrize("text", ["", "1/0", "1..2", "w", "2w", "1+", "x"])
def test_parse_errors(text):
    with pytest.raises((ScalarParseError, ZeroDivisionError)):
        parse_scalar(text)


def test_quadscalar_type():
    assert isinstance(K(1, 2), QuadScalar)

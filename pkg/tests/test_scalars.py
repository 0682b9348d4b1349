from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfgalois.scalars import (
    ONE,
    ZERO,
    DivisionByZero,
    IncompatibleConductor,
    Scalar,
    cyclotomic_poly,
    field_op,
    parse_scalar,
    promote,
    zeta,
)

CONDUCTORS = (1, 2, 3, 4, 5, 6, 8, 12)


def test_rational_addition():
    assert field_op(Scalar.rational(Fraction(1, 2)), Scalar.rational(Fraction(1, 3)), "add") == Scalar.rational(Fraction(5, 6))


def test_zeta4_squared():
    assert zeta(4) * zeta(4) == -ONE


def test_inverse_one_plus_i():
    x = ONE + zeta(4)
    inv = x.inverse()
    assert inv == (ONE - zeta(4)) / 2
    assert inv * x == ONE


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        field_op(ONE, ZERO, "div")
    with pytest.raises(DivisionByZero):
        Scalar(4, (0, 0)).inverse()


def test_promote_rational():
    x = promote(Scalar.rational(3), 4)
    assert x.conductor == 4 and x.coeffs == (3, 0)


def test_zeta2_is_minus_one():
    assert promote(zeta(2), 4) == -ONE
    assert zeta(2) == -ONE


def test_promote_demote_round_trip():
    z = zeta(4)
    assert promote(z, 4).demote(4) == z
    assert promote(z, 12).demote(4) == z


def test_incompatible_conductor():
    with pytest.raises(IncompatibleConductor):
        promote(zeta(4), 6)
    with pytest.raises(IncompatibleConductor):
        zeta(4).demote(2)


def test_coefficient_length_is_totient():
    for n, deg in [(1, 1), (2, 1), (3, 2), (4, 2), (5, 4), (8, 4), (12, 4)]:
        assert len(zeta(n).coeffs) == deg == len(cyclotomic_poly(n)) - 1


def test_zero_is_canonical():
    x = zeta(3) + zeta(3, 2) + ONE  # 1 + ζ + ζ² = 0
    assert x == ZERO and all(c == 0 for c in x.coeffs) and not x


def test_mixed_conductors_promote_to_lcm():
    x = zeta(4) + zeta(3)
    assert x.conductor == 12
    assert x - zeta(3) == zeta(4)


def test_parse_scalar():
    assert parse_scalar("-3/4") == Scalar.rational(Fraction(-3, 4))
    assert parse_scalar("zeta(4)^3") == -zeta(4)


@st.composite
def scalars(draw, n=None):
    n = n or draw(st.sampled_from(CONDUCTORS))
    deg = len(cyclotomic_poly(n)) - 1
    qs = draw(st.lists(st.fractions(max_denominator=12, min_value=-20, max_value=20), min_size=deg, max_size=deg))
    return Scalar(n, qs)


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a
    assert a - a == ZERO
    if a:
        assert a * a.inverse() == ONE
        assert (b / a) * a == b


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CONDUCTORS), st.integers(-30, 30), st.integers(-30, 30))
def test_roots_of_unity(n, j, k):
    assert zeta(n, j) * zeta(n, k) == zeta(n, j + k)
    assert zeta(n) ** n == ONE

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from coxchar.cyclotomic import (
    Cyclotomic,
    CyclotomicSyntaxError,
    cyc,
    format_cyclotomic,
    parse_cyclotomic,
)

E = Cyclotomic.root_of_unity


def test_basic_identities():
    assert E(3) + E(3) ** 2 == -1
    assert E(4) ** 2 == -1
    assert E(6) == -E(3) ** 2
    assert E(8) ** 2 == E(4)
    assert E(5) + E(5, 2) + E(5, 3) + E(5, 4) == -1
    assert cyc(Fraction(1, 2)) == Cyclotomic.rational(Fraction(1, 2))


def test_conductor_is_minimal():
    assert E(6).n == 3
    assert (E(4) ** 2).n == 1
    assert (E(12) ** 4).n == 3


def test_printing():
    assert format_cyclotomic(E(6)) == "-E(3)^2"
    assert format_cyclotomic(cyc(-3)) == "-3"
    assert format_cyclotomic(E(4)) == "E(4)"
    assert format_cyclotomic(cyc(Fraction(-1, 2))) == "-1/2"


@pytest.mark.parametrize(
    "text,value",
    [
        ("E(3)+E(3)^2", cyc(-1)),
        ("-E(3)^2", E(6)),
        ("1/2*E(5)^2", E(5, 2) * Fraction(1, 2)),
        ("2*E(8)-E(8)^3", 2 * E(8) - E(8, 3)),
        ("-1/2", cyc(Fraction(-1, 2))),
        ("3", cyc(3)),
    ],
)
def test_parse(text, value):
    assert parse_cyclotomic(text) == value


@pytest.mark.parametrize("text", ["", "E(", "E(0)", "3**2", "E(3)^", "1//2", "x"])
def test_parse_errors(text):
    with pytest.raises(CyclotomicSyntaxError):
        parse_cyclotomic(text)


def test_roots_of_unity():
    assert E(12, 5).root_of_unity_angle() == Fraction(5, 12)
    assert cyc(-1).root_of_unity_angle() == Fraction(1, 2)
    assert (E(3) + 1).root_of_unity_angle() == Fraction(1, 6)  # 1 + w = -w^2
    assert cyc(2).root_of_unity_angle() is None


orders = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12])
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyclotomics(draw):
    n = draw(orders)
    terms = draw(st.lists(st.tuples(st.integers(0, n - 1), rationals), max_size=4))
    z = cyc(0)
    for k, q in terms:
        z = z + E(n, k) * q
    return z


@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if not a.is_zero():
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@given(cyclotomics())
def test_round_trip_and_numeric_value(a):
    assert parse_cyclotomic(format_cyclotomic(a)) == a
    assert hash(parse_cyclotomic(format_cyclotomic(a))) == hash(a)
    assert cmath.isclose(complex(a * a.conjugate()).imag, 0, abs_tol=1e-9)


@given(orders, st.integers(0, 35), st.integers(0, 35))
def test_root_of_unity_multiplication(n, j, k):
    assert E(n, j) * E(n, k) == E(n, j + k)
    assert complex(E(n, j)) == pytest.approx(cmath.exp(2j * cmath.pi * j / n))

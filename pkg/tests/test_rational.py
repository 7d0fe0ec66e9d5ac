from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from contextuality.rational import (affine_rank, as_rational, dot, format_rational, parse_rational,
                                    primitive, rank)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)


def test_arithmetic_examples():
    assert F(1, 2) + F(1, 8) == F(5, 8)
    assert F(3, 8) * 0 == F(0, 1)
    assert F(1, 3) / F(1, 3) == F(1, 1)
    with pytest.raises(ZeroDivisionError):
        F(1, 3) / F(0)


def test_dot_examples():
    assert dot([1, 1, 1, 1], [F(1, 2), 0, 0, F(1, 2)]) == 1
    assert dot([1, 1], [0, 0]) == 0
    witness = [1] * 16
    bell_cells = [F(1, 2), F(1, 2), F(3, 8), F(3, 8), F(3, 8), F(3, 8), F(3, 8), F(3, 8)]
    assert dot(witness[:8], bell_cells) == F(26, 8)
    with pytest.raises(ValueError):
        dot([1, 2], [1])


@pytest.mark.parametrize("text, value", [
    ("3/8", F(3, 8)), ("-1/2", F(-1, 2)), ("1", F(1)), ("6/8", F(3, 4)), (" 0 ", F(0)),
])
def test_parse(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["", "1/0", "a/2", "1.5", "1//2"])
def test_parse_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational(bad)


def test_format_and_round_trip():
    assert format_rational(F(3, 8)) == "3/8"
    assert format_rational(F(-1, 2)) == "-1/2"
    assert format_rational(F(4, 4)) == "1"


def test_floats_refused():
    with pytest.raises(TypeError):
        as_rational(0.5)


@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a
    for r in (a + b, a * b, a - c):
        assert r.denominator > 0
        assert F(r.numerator, r.denominator) == r
        from math import gcd
        assert gcd(abs(r.numerator), r.denominator) == 1


@given(st.lists(rationals, min_size=1, max_size=6))
def test_primitive_positive_scaling(values):
    p = primitive(values)
    if not any(values):
        assert p == tuple(values)
        return
    assert all(v.denominator == 1 for v in p)
    ratio = next(pv / v for pv, v in zip(p, values) if v)
    assert ratio > 0
    assert all(pv == ratio * v for pv, v in zip(p, values))


def test_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1], [1, 1]]) == 2
    assert affine_rank([[0, 0], [1, 0], [0, 1], [1, 1]]) == 2

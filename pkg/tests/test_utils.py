# -*- coding: utf-8 -*-
from fractions import Fraction

import mpmath
import pytest

from src.exactnum import QuadExt
from src.exceptions import NumberFormatError
from src.utils import (
    format_scientific,
    leading_digit_and_exponent,
    parse_grid,
    parse_param_assignments,
    same_order_of_magnitude,
)

from .conftest import q


def test_parse_param_assignments():
    values = parse_param_assignments("cz1=3205/3981312*sqrt(2), cy4 = -858455/12039487488")
    assert values == {
        "cz1": q("3205/3981312*sqrt(2)"),
        "cy4": QuadExt(Fraction(-858455, 12039487488)),
    }
    assert parse_param_assignments("a1=0.4") == {"a1": QuadExt(Fraction(2, 5))}
    assert parse_param_assignments("  ") == {}


@pytest.mark.parametrize("text", ["cz1", "cz1=", "cz1=abc", "z=1", "cz1=1=2"])
def test_bad_assignments(text):
    with pytest.raises(NumberFormatError):
        parse_param_assignments(text)


def test_parse_grid():
    rows = parse_grid("0:0; -1:-1; 0.4:0.8;")
    assert rows == [(0, 0), (-1, -1), (Fraction(2, 5), Fraction(4, 5))]
    with pytest.raises(NumberFormatError):
        parse_grid(" ; ")
    with pytest.raises(NumberFormatError):
        parse_grid("1;2")


@pytest.mark.parametrize("value, text", [
    (QuadExt(Fraction(-1, 10 ** 44)), "-1e-44"),
    (Fraction(-22, 10), "-2.2"),
    (QuadExt(0), "0"),
    (Fraction(42, 10 ** 13), "4.2e-12"),
])
def test_format_scientific(value, text):
    assert format_scientific(value) == text


def test_leading_digit_and_exponent():
    assert leading_digit_and_exponent(mpmath.mpf("4.2e-12")) == (4, -12)
    assert leading_digit_and_exponent(QuadExt(Fraction(-52, 1000))) == (-5, -2)
    assert leading_digit_and_exponent(Fraction(97, 10)) == (1, 1)
    assert leading_digit_and_exponent(mpmath.mpf(0)) == (0, 0)


def test_same_order_of_magnitude():
    assert same_order_of_magnitude(QuadExt(Fraction(-12, 10 ** 45)), "-1e-44")
    assert same_order_of_magnitude(QuadExt(Fraction(-21, 10 ** 45)), "-1e-44")
    assert not same_order_of_magnitude(QuadExt(Fraction(12, 10 ** 45)), "-1e-44")
    assert not same_order_of_magnitude(QuadExt(Fraction(-12, 10 ** 46)), "-1e-44")
    assert not same_order_of_magnitude(mpmath.mpf("4.4e-12"), "6e-12")

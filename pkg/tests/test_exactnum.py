# -*- coding: utf-8 -*-
from fractions import Fraction

import mpmath
import pytest

from src.exactnum import (
    QuadExt,
    exact_sort_key,
    format_quadext,
    parse_quadext,
    parse_rational,
    rational_sqrt,
    square_free_core,
    to_bigfloat,
)
from src.exceptions import ExactZeroDivisionError, FieldTowerError, NumberFormatError


def test_constructor_normalizes_radicand():
    value = QuadExt(0, 1, 8)
    assert value.radical_part == 2
    assert value.radicand == 2
    assert QuadExt(1, 3, 9) == 10
    assert QuadExt(0, 1, Fraction(1, 2)) == QuadExt(0, Fraction(1, 2), 2)


def test_square_free_core_keeps_sign():
    assert square_free_core(72) == (6, 2)
    assert square_free_core(-45) == (3, -5)
    assert square_free_core(1345) == (1, 1345)


def test_rational_sqrt():
    assert rational_sqrt(Fraction(625, 128)) == parse_quadext("25/16*sqrt(2)")
    assert rational_sqrt(Fraction(269, 5)) == QuadExt(0, Fraction(1, 5), 1345)
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(-4).radicand == -1


def test_field_arithmetic():
    s = QuadExt(0, 1, 2)
    assert s * s == 2
    assert (1 + s) * (1 - s) == -1
    assert (1 + s) / (1 - s) == QuadExt(-3, -2, 2)
    assert 3 - s == QuadExt(3, -1, 2)
    assert 1 / s == QuadExt(0, Fraction(1, 2), 2)
    assert s ** -2 == Fraction(1, 2)


def test_rationals_mix_with_any_radicand():
    assert QuadExt(0, 1, 3) + Fraction(1, 2) == QuadExt(Fraction(1, 2), 1, 3)
    assert (QuadExt(0, 1, 2) * 0).radicand == 1


def test_two_radicands_raise():
    with pytest.raises(FieldTowerError):
        QuadExt(0, 1, 2) + QuadExt(0, 1, 3)


def test_zero_division_is_typed():
    with pytest.raises(ExactZeroDivisionError):
        QuadExt(1) / 0
    with pytest.raises(ZeroDivisionError):
        QuadExt(0).inverse()


def test_sign_is_exact():
    assert QuadExt(3, -2, 2).sign() == 1
    assert QuadExt(2, -2, 2).sign() == -1
    assert QuadExt(0, -1, 5).sign() == -1
    with pytest.raises(ValueError):
        QuadExt(0, 1, -1).sign()


@pytest.mark.parametrize("text", ["-1819/663552", "25/16*sqrt(2)", "1/2 - 3/4*sqrt(-7)", "-sqrt(2)", "0"])
def test_format_and_parse_agree(text):
    assert format_quadext(parse_quadext(text)) == text


def test_parse_accepts_decimals_and_rationals():
    assert parse_quadext("0.4") == Fraction(2, 5)
    assert parse_quadext("-1/2") == Fraction(-1, 2)
    assert parse_quadext("sqrt(8)") == QuadExt(0, 2, 2)
    assert parse_rational(" 3 ") == 3


@pytest.mark.parametrize("text", ["", "abc", "1/0", "2 sqrt(2)", "sqrt(x)"])
def test_parse_rejects_malformed_text(text):
    with pytest.raises(NumberFormatError):
        parse_quadext(text)


def test_to_bigfloat():
    value = to_bigfloat(QuadExt(0, 1, 2), 50)
    with mpmath.workdps(50):
        assert abs(value - mpmath.sqrt(2)) < mpmath.mpf(10) ** -45
    imaginary = QuadExt(0, 1, -1).to_bigfloat(30)
    assert isinstance(imaginary, mpmath.mpc)


def test_sort_key_puts_real_positive_radicals_first():
    values = [QuadExt(0, 1, -3), QuadExt(0, -1, 2), QuadExt(0, 1, 2), QuadExt(5)]
    ordered = sorted(values, key=exact_sort_key)
    assert ordered == [QuadExt(5), QuadExt(0, 1, 2), QuadExt(0, -1, 2), QuadExt(0, 1, -3)]

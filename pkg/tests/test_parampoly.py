# -*- coding: utf-8 -*-
from fractions import Fraction

import pytest

from src.exactnum import QuadExt
from src.exceptions import ExactZeroDivisionError, MissingParameterError
from src.painleve.parampoly import ParamPoly

a = ParamPoly.variable("a")
c = ParamPoly.variable("c")
sqrt2 = QuadExt(0, 1, 2)


def test_zero_terms_disappear():
    poly = a + c - a
    assert poly == c
    assert (a - a).is_zero()
    assert ParamPoly({(("a", 0),): 3}) == 3


def test_products_and_powers():
    poly = (a + 1) ** 2
    assert poly == a * a + a * 2 + 1
    assert poly.degree_in("a") == 2
    assert poly.coefficient_of("a", 1) == 2
    assert poly.total_degree() == 2


def test_division_by_monomial_keeps_exact_laurent_terms():
    poly = (a ** 3 * 4 + a * 2) / (a * 2)
    assert poly == a * a * 2 + 1
    assert (ParamPoly.constant(1) / a).min_exponent("a") == -1
    with pytest.raises(ValueError):
        a / (a + 1)
    with pytest.raises(ExactZeroDivisionError):
        a / 0


def test_strip_content():
    poly = a ** 4 * 3 - a ** 2 * c
    stripped = poly.strip_content(["a"])
    assert stripped == a * a * 3 - c
    assert poly.content_monomial() == (("a", 2),)


def test_substitute_and_evaluate():
    poly = a * a * Fraction(1, 6) + c * sqrt2
    assert poly.substitute({"a": 3}) == c * sqrt2 + Fraction(3, 2)
    assert poly.substitute({"c": a}) == a * a * Fraction(1, 6) + a * sqrt2
    assert poly.evaluate({"a": 0, "c": sqrt2}) == 2
    with pytest.raises(MissingParameterError) as info:
        poly.evaluate({"a": 1})
    assert info.value.name == "c"


def test_as_univariate():
    assert (a ** 2 * 3 + 1).as_univariate("a") == [QuadExt(1), QuadExt(0), QuadExt(3)]
    with pytest.raises(ValueError):
        (a + c).as_univariate("a")


def test_printing():
    poly = c * (sqrt2 * Fraction(-1, 6)) + QuadExt(Fraction(21845, 47775744))
    assert str(poly) == "21845/47775744 - 1/6*sqrt(2)*c"
    assert str(ParamPoly.zero()) == "0"
    assert poly.needs_parentheses()
    assert not ParamPoly.constant(sqrt2).needs_parentheses()
    assert ParamPoly.constant(1 + sqrt2).needs_parentheses()

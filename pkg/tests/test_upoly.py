# -*- coding: utf-8 -*-
from fractions import Fraction

import pytest

from src.exactnum import QuadExt
from src.painleve.upoly import RootClass, UPoly, find_roots


def _from_roots(*roots):
    poly = UPoly([1])
    for root in roots:
        poly = poly * UPoly([-root, 1])
    return poly


def test_arithmetic_and_division():
    f = _from_roots(1, 2)
    g = UPoly([-1, 1])
    quotient, remainder = divmod(f, g)
    assert quotient == UPoly([-2, 1])
    assert remainder.is_zero()
    assert f.derivative() == UPoly([-3, 2])
    assert f(QuadExt(2)) == 0


def test_square_free_decomposition():
    f = _from_roots(1, 1, 1, -3)
    parts = f.square_free_decomposition()
    assert [(p, m) for p, m in parts] == [(UPoly([3, 1]), 1), (UPoly([-1, 1]), 3)]


def test_integer_and_rational_roots():
    roots = find_roots(_from_roots(-1, 6, Fraction(1, 2)))
    values = {root.value.as_fraction(): root.classification for root in roots}
    assert values == {
        Fraction(-1): RootClass.INTEGER,
        Fraction(6): RootClass.INTEGER,
        Fraction(1, 2): RootClass.RATIONAL_NONINT,
    }
    assert all(root.exact for root in roots)


def test_quadratic_roots_are_exact():
    # (r + 1)(r - 6)(r^2 - 5r - 36/5): the resonances of x~t^-2, y~t^-2 at C = -16/5
    poly = _from_roots(-1, 6) * UPoly([Fraction(-36, 5), -5, 1])
    roots = find_roots(poly)
    irrational = [root for root in roots if root.classification == RootClass.IRRATIONAL]
    assert {root.value for root in irrational} == {
        QuadExt(Fraction(5, 2), Fraction(1, 10), 1345),
        QuadExt(Fraction(5, 2), Fraction(-1, 10), 1345),
    }


def test_complex_pair():
    roots = find_roots(UPoly([1, 0, 1]))
    assert [root.value for root in roots] == [QuadExt(0, 1, -1), QuadExt(0, -1, -1)]
    assert {root.classification for root in roots} == {RootClass.COMPLEX}


def test_multiplicities():
    roots = find_roots(_from_roots(0, 0, 4))
    assert [(root.value, root.multiplicity) for root in roots] == [(QuadExt(0), 2), (QuadExt(4), 1)]


def test_irrational_coefficients_use_the_norm():
    s = QuadExt(0, 1, 2)
    # (a - 25/16*sqrt(2)) * (a + 1)
    poly = UPoly([-s * Fraction(25, 16), 1]) * UPoly([1, 1])
    values = {root.value for root in find_roots(poly)}
    assert values == {s * Fraction(25, 16), QuadExt(-1)}


def test_numeric_fallback_for_cubic_irrationals():
    roots = find_roots(UPoly([-2, 0, 0, 1]))
    assert len(roots) == 3
    assert not any(root.exact for root in roots)
    assert sum(root.classification == RootClass.COMPLEX for root in roots) == 2


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        find_roots(UPoly([]))

# -*- coding: utf-8 -*-
from fractions import Fraction

import pytest

from src.exceptions import CoefficientRangeError, ExactZeroDivisionError
from src.painleve.laurent import LaurentSeries


def test_exact_sum_strips_zeros():
    s = LaurentSeries([0, 1, 2, 0], -2)
    assert s.valuation == -1
    assert s.coeffs == [1, 2]
    assert s.precision is None
    assert s[5] == 0


def test_precision_propagates_through_products():
    a = LaurentSeries([1, 1], -2, 3)  # t^-2 + t^-1 + O(t^3)
    b = LaurentSeries([2], -1, 4)
    product = a * b
    assert product.valuation == -3
    # a known through t^2, b starts at t^-1: product known through t^1
    assert product.precision == 2
    assert product[-3] == 2 and product[-2] == 2
    with pytest.raises(CoefficientRangeError):
        product[2]


def test_derivative():
    s = LaurentSeries([3, 0, 5], -2, 4)
    d = s.derivative()
    assert d.valuation == -3
    assert d[-3] == -6
    assert d[-1] == 0
    assert d.precision == 3


def test_inverse_of_a_geometric_series():
    one_minus_t = LaurentSeries([1, -1])
    inverse = one_minus_t.inverse(6)
    assert [inverse[k] for k in range(6)] == [1] * 6
    assert inverse.precision == 6
    shifted = LaurentSeries([Fraction(1, 2)], -3).inverse()
    assert shifted.valuation == 3 and shifted[3] == 2 and shifted.precision is None


def test_inverse_needs_a_term_count_for_polynomials():
    with pytest.raises(ValueError):
        LaurentSeries([1, 1]).inverse()
    with pytest.raises(ExactZeroDivisionError):
        LaurentSeries([]).inverse(3)


def test_division_and_powers():
    s = LaurentSeries([1, 1], 0, 5)
    quotient = s * s / s
    assert [quotient[k] for k in range(5)] == [1, 1, 0, 0, 0]
    assert quotient.precision == 5
    cube = LaurentSeries([1, 1]) ** 3
    assert cube.coeffs == [1, 3, 3, 1]


def test_lowest_nonzero_and_items():
    s = LaurentSeries.from_dict({-3: 2, 1: 5}, precision=4)
    assert s.lowest_nonzero() == -3
    assert s.lowest_nonzero(above=-3) == 1
    assert dict(s.items()) == {-3: 2, -2: 0, -1: 0, 0: 0, 1: 5}
    assert s.truncate(0).lowest_nonzero() == -3 and s.truncate(0).precision == 0

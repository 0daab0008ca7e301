# -*- coding: utf-8 -*-
from fractions import Fraction

import pytest

from src.exactnum import QuadExt
from src.exceptions import BalanceError
from src.odemodel import JetPolynomial, henon_heiles, parse_system
from src.painleve.balance import (
    ARBITRARY,
    BalanceCandidate,
    BalanceStatus,
    exponent_grid,
    falling_factorial,
    find_balances,
    leading_terms,
)


def test_falling_factorial():
    assert falling_factorial(Fraction(-3), 2) == 12
    assert falling_factorial(Fraction(-3, 2), 2) == Fraction(15, 4)
    assert falling_factorial(Fraction(5), 0) == 1


def test_exponent_grid():
    assert exponent_grid((Fraction(-2), Fraction(-1)), 1) == [Fraction(-2), Fraction(-1)]
    assert exponent_grid((Fraction(-2), Fraction(-1)), 2) == [Fraction(-2), Fraction(-3, 2), Fraction(-1)]


def test_henon_heiles_has_both_dominant_behaviours(hh_balances):
    labels = [c.label() for c in hh_balances]
    assert labels == ["x~t^-2, y~t^-2", "x~t^-2, y~t^-2", "x~t^-3/2, y~t^-2"]
    assert all(c.status == BalanceStatus.RESOLVED for c in hh_balances)


def test_case_one_leading_coefficients(hh_balances):
    first, second = hh_balances[0], hh_balances[1]
    # a2 = -3 and a1^2 = 18 + 9C = -54/5
    assert first.leading_of("y") == -3
    assert first.leading_of("x") == QuadExt(0, Fraction(3, 5), -30)
    assert second.leading_of("x") == QuadExt(0, Fraction(-3, 5), -30)
    assert first.is_integer_step()


def test_case_two_leaves_x_free(hh_balances):
    case2 = hh_balances[2]
    assert case2.leading_of("x") is ARBITRARY
    assert case2.leading_of("y") == Fraction(-15, 8)
    assert case2.arbitrary_symbols() == ["a1"]
    assert not case2.is_integer_step()
    assert case2.describe_leading() == {"x": "ARBITRARY (a1)", "y": "-15/8"}


def test_squared_system_balances(z_balances, case2):
    labels = [c.label() for c in z_balances]
    assert labels == ["z~t^-4, y~t^-2", "z~t^-3, y~t^-2"]
    assert z_balances[0].leading_of("z") == Fraction(-54, 5)
    assert case2.exponent("z") == -3
    assert case2.leading_of("y") == Fraction(-15, 8)
    assert case2.is_integer_step()
    # each equation's leading power: z''z ~ t^-8, y'' ~ t^-4
    assert case2.powers == (Fraction(-8), Fraction(-4))


def test_leading_terms_keep_the_dominant_subset(hh, hh_balances):
    simplified = leading_terms(hh, hh_balances[2])
    x, y = JetPolynomial.jet("x"), JetPolynomial.jet("y")
    assert simplified.equation_for("x") == JetPolynomial.jet("x", 2) + x * y * 2
    assert simplified.equation_for("y") == JetPolynomial.jet("y", 2) + y * y * Fraction(16, 5)


def test_scalar_model_equation():
    system = parse_system("vars u;\nu'' = 6*u^2;")
    balances = find_balances(system)
    assert len(balances) == 1
    assert balances[0].exponents == (Fraction(-2),)
    assert balances[0].leading_of("u") == 1


def test_linear_equation_has_no_balance():
    balances = find_balances(parse_system("vars u;\nu'' = -u;"))
    assert len(balances) == 0


def test_from_exponents_matches_search(hh, hh_balances):
    built = BalanceCandidate.from_exponents(hh, (Fraction(-3, 2), Fraction(-2)), (ARBITRARY, Fraction(-15, 8)))
    assert built.subsets == hh_balances[2].subsets
    assert built.powers == hh_balances[2].powers


def test_bad_denominator_bound(hh):
    with pytest.raises(BalanceError):
        find_balances(hh, denominator_bound=3)


@pytest.mark.parametrize("C", [Fraction(1), Fraction(-1), Fraction(-6), Fraction(-16, 5)])
def test_case_one_leading_coefficients_follow_C(C):
    system = henon_heiles(1, C)
    case_one = [c for c in find_balances(system) if c.exponents == (Fraction(-2), Fraction(-2))]
    assert len(case_one) == 2
    for candidate in case_one:
        a1 = candidate.leading_of("x")
        assert a1 * a1 == 9 * (C + 2)
        assert candidate.leading_of("y") == -3
    assert case_one[0].leading_of("x") == -case_one[1].leading_of("x")


def test_case_one_disappears_at_C_minus_two():
    # a1^2 = 9(C + 2) leaves only a1 = 0
    balances = find_balances(henon_heiles(1, -2))
    assert not [c for c in balances if c.exponents == (Fraction(-2), Fraction(-2))]

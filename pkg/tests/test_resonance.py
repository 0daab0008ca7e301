# -*- coding: utf-8 -*-
import random
from collections import Counter
from fractions import Fraction

import mpmath
import pytest

from src.exactnum import QuadExt, rational_sqrt
from src.odemodel import henon_heiles, known_cases, parse_system
from src.painleve.balance import find_balances
from src.painleve.resonance import VerdictStatus, analyze_candidate, classify
from src.painleve.upoly import RootClass

CASE_ONE_ROOTS = {
    QuadExt(-1),
    QuadExt(6),
    QuadExt(Fraction(5, 2), Fraction(1, 10), 1345),
    QuadExt(Fraction(5, 2), Fraction(-1, 10), 1345),
}


def test_case_one_resonances(hh, hh_balances):
    report = analyze_candidate(hh, hh_balances[0])
    assert {root.value for root in report.roots} == CASE_ONE_ROOTS
    assert report.determinant(QuadExt(-1)) == 0
    assert not report.all_integer()


def test_case_one_is_unchanged_by_squaring(hh_z, z_balances):
    report = analyze_candidate(hh_z, z_balances[0])
    assert {root.value for root in report.roots} == CASE_ONE_ROOTS


def test_case_two_resonances(hh_z, case2):
    report = analyze_candidate(hh_z, case2)
    assert sorted(root.value.as_fraction() for root in report.roots) == [-1, 0, 4, 6]
    assert report.positive_integer_resonances() == [4, 6]
    assert report.all_integer()


def test_half_integer_case_two(hh, hh_balances):
    report = analyze_candidate(hh, hh_balances[2])
    assert sorted(root.value.as_fraction() for root in report.roots) == [-1, 0, 4, 6]


def test_study_point_fails(hh, hh_balances):
    verdict = classify(hh, hh_balances)
    assert verdict.status == VerdictStatus.FAILS
    assert any("irrational resonance" in reason for reason in verdict.reasons)
    assert any("fractional leading exponent" in reason for reason in verdict.reasons)


def test_scalar_model_passes():
    system = parse_system("vars u;\nu'' = 6*u^2;")
    balances = find_balances(system)
    report = analyze_candidate(system, balances[0])
    assert sorted(root.value.as_fraction() for root in report.roots) == [-1, 6]
    assert classify(system, balances).status == VerdictStatus.PASSES


@pytest.mark.parametrize("seed", range(20))
def test_vieta_and_pole_resonance_for_random_C(seed):
    rng = random.Random(seed)
    C = Fraction(rng.randint(-60, 60), rng.randint(1, 9))
    if C == -2:
        C = Fraction(-3)
    system = henon_heiles(Fraction(1, 9), C)
    candidate = next(c for c in find_balances(system) if c.exponents == (Fraction(-2), Fraction(-2)))
    report = analyze_candidate(system, candidate)
    det = report.determinant
    assert det(QuadExt(-1)) == 0
    with mpmath.workdps(60):
        total = mpmath.mpf(0)
        for root in report.roots:
            value = root.value.to_bigfloat(60) if root.exact else root.value
            total += value * root.multiplicity
        expected = -det.coeffs[-2].to_bigfloat(60) / det.leading.to_bigfloat(60)
        assert abs(total - expected) < mpmath.mpf(10) ** -40
    assert sum(root.multiplicity for root in report.roots) == det.degree == 4


@pytest.mark.slow
@pytest.mark.parametrize("case", known_cases(), ids=lambda case: case.label)
def test_known_cases(case):
    system = case.system()
    verdict = classify(system, find_balances(system))
    assert verdict.status.value == case.expected


def test_irrational_roots_are_classified(hh, hh_balances):
    report = analyze_candidate(hh, hh_balances[0])
    kinds = sorted(kind.value for kind in report.classifications())
    assert kinds == sorted([RootClass.INTEGER.value] * 2 + [RootClass.IRRATIONAL.value] * 2)


@pytest.mark.parametrize("seed", range(20))
def test_case_one_roots_for_random_C(seed):
    rng = random.Random(seed)
    C = Fraction(-rng.randint(1, 200), 10)
    if C == -2:
        C = Fraction(-21, 10)
    system = henon_heiles(Fraction(1, 9), C)
    candidate = next(c for c in find_balances(system) if c.exponents == (Fraction(-2), Fraction(-2)))
    report = analyze_candidate(system, candidate)
    assert all(root.exact for root in report.roots)
    half = rational_sqrt(1 - 24 * (1 + C)) * Fraction(1, 2)
    expected = Counter([QuadExt(-1), QuadExt(6), half + Fraction(5, 2), -half + Fraction(5, 2)])
    assert Counter({root.value: root.multiplicity for root in report.roots}) == expected


def test_case_one_at_C_minus_one():
    system = henon_heiles(1, -1)
    candidate = next(c for c in find_balances(system) if c.exponents == (Fraction(-2), Fraction(-2)))
    report = analyze_candidate(system, candidate)
    assert sorted(root.value.as_fraction() for root in report.roots) == [-1, 2, 3, 6]


def test_case_two_at_C_minus_six():
    # x ~ t^-1 with a free leading coefficient; 1 - 2*alpha = 3
    system = henon_heiles(1, -6)
    candidate = next(c for c in find_balances(system) if c.exponents == (Fraction(-1), Fraction(-2)))
    assert candidate.arbitrary_symbols() == ["a1"]
    report = analyze_candidate(system, candidate)
    assert sorted(root.value.as_fraction() for root in report.roots) == [-1, 0, 3, 6]

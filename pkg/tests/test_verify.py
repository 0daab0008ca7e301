# -*- coding: utf-8 -*-
from fractions import Fraction

import mpmath
import pytest

from src.exceptions import VerificationError
from src.painleve.series import Mode, expand
from src.verify import (
    ClosedFormBranch,
    checks_for_branch,
    closed_form_laurent,
    compare_with_closed_form,
    energy_series,
    first_order_invariant_check,
    hamiltonian,
    residual_order,
    trajectory_relation_check,
)

from .conftest import CLOSED_FORM_VALUES, q


@pytest.fixture(scope="module")
def generic_branch(hh_z, case2):
    """The + branch with cz1 = cy4 = 0, a member of the family that is not the closed form."""
    values = {"a1": q("25/16*sqrt(2)"), "cz1": q("0"), "cy4": q("0")}
    return expand(hh_z, case2, 12, Mode.EVALUATED, values)[0]


def test_residual_vanishes_below_the_guaranteed_power(hh_z, closed_form_branch):
    profile = residual_order(hh_z, closed_form_branch, 10)
    assert [entry.guaranteed for entry in profile.entries] == [3, 7]
    assert profile.passes()
    for entry in profile.entries:
        assert entry.lowest_power is None or entry.lowest_power >= entry.guaranteed


def test_residual_of_the_symbolic_branch(hh_z, plus_branch):
    profile = residual_order(hh_z, plus_branch, 7)
    assert profile.passes()
    values = dict(CLOSED_FORM_VALUES)
    assert residual_order(hh_z, plus_branch, 7, values).passes()


def test_residual_beyond_the_expansion(hh_z, plus_branch):
    with pytest.raises(VerificationError):
        residual_order(hh_z, plus_branch, 8)


def test_hamiltonian_on_exact_values(hh):
    assert hamiltonian(hh, q("1"), q("0"), q("0"), q("0")) == Fraction(1, 18)
    # (lambda + 1)/2 + x^2*y - C/3
    assert hamiltonian(hh, q("1"), q("0"), q("1"), q("0")) == Fraction(118, 45)


def test_energy_is_conserved(closed_form_branch, generic_branch):
    for branch in (closed_form_branch, generic_branch):
        result = energy_series(branch, None, 10)
        assert result.window > 0
        assert result.conserved
        assert result.energy is not None


@pytest.fixture(scope="module")
def deep_generic_branch(hh_z, case2):
    values = {"a1": q("25/16*sqrt(2)"), "cz1": q("1"), "cy4": q("-1/2")}
    return expand(hh_z, case2, 30, Mode.EVALUATED, values)[0]


@pytest.mark.parametrize("N", [10, 20, 30])
def test_energy_window_grows_with_the_truncation(deep_generic_branch, N):
    result = energy_series(deep_generic_branch, None, N)
    # z^-3 and y^-2 leave H known below t^(N - 5)
    assert result.window == N - 5
    assert result.conserved
    assert result.energy == energy_series(deep_generic_branch, None, 10).energy


def test_relations_hold_on_the_closed_form(closed_form_branch):
    invariant = first_order_invariant_check(closed_form_branch, None, 12)
    trajectory = trajectory_relation_check(closed_form_branch, None, 12)
    assert invariant.vanishes and trajectory.vanishes
    assert invariant.window > 0


def test_relations_fail_elsewhere_in_the_family(generic_branch):
    invariant = first_order_invariant_check(generic_branch, None, 12)
    trajectory = trajectory_relation_check(generic_branch, None, 12)
    assert not invariant.vanishes
    assert not trajectory.vanishes
    assert trajectory.lowest_power < trajectory.window


def test_relations_need_the_special_lambda():
    from src.odemodel import parse_system
    from src.painleve.balance import find_balances

    system = parse_system("vars u;\nu'' = 6*u^2;")
    (branch,) = expand(system, find_balances(system)[0], 6)
    with pytest.raises(VerificationError):
        first_order_invariant_check(branch, None, 6)


def test_closed_form_comparison(closed_form_branch):
    comparison = compare_with_closed_form(closed_form_branch, CLOSED_FORM_VALUES, ClosedFormBranch(1), 17)
    assert comparison.agrees
    mismatch = compare_with_closed_form(closed_form_branch, CLOSED_FORM_VALUES, ClosedFormBranch(-1), 4)
    assert not mismatch.agrees


def test_closed_form_leading_terms():
    oracle = closed_form_laurent(ClosedFormBranch(1), 0)
    with mpmath.workdps(60):
        assert abs(oracle[("y", -2)] + mpmath.mpf(15) / 8) < mpmath.mpf(10) ** -50
        assert abs(oracle[("z", -3)] - q("25/16*sqrt(2)").to_bigfloat(60)) < mpmath.mpf(10) ** -50


def test_closed_form_guards():
    with pytest.raises(VerificationError):
        ClosedFormBranch(2)
    with pytest.raises(VerificationError):
        closed_form_laurent(ClosedFormBranch(1, precision=20), 10)


def test_checks_for_branch(closed_form_branch):
    results = checks_for_branch(closed_form_branch, None, 10)
    assert [name for name, _, _ in results] == [
        "residual",
        "energy",
        "first-order invariant",
        "trajectory relation",
    ]
    assert all(passed for _, passed, _ in results)


@pytest.mark.slow
@pytest.mark.parametrize("order", [25, 50])
def test_deep_residuals(hh_z, case2, order):
    values = dict(CLOSED_FORM_VALUES, a1=q("25/16*sqrt(2)"))
    branch = expand(hh_z, case2, order, Mode.EVALUATED, values)[0]
    assert residual_order(hh_z, branch, order).passes()
    assert trajectory_relation_check(branch, None, order).vanishes

# -*- coding: utf-8 -*-
"""Shared fixtures: the Hénon-Heiles study point and its squared form."""

import os
import sys
from fractions import Fraction

import pytest

project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from src.exactnum import QuadExt, parse_quadext  # noqa: E402
from src.odemodel import henon_heiles, square_substitute  # noqa: E402
from src.painleve.balance import find_balances  # noqa: E402
from src.painleve.series import Mode, expand  # noqa: E402

LAMBDA = Fraction(1, 9)
C = Fraction(-16, 5)

# Parameter values that turn the a1 = +25/16*sqrt(2) branch into the closed-form solution
CLOSED_FORM_VALUES = {
    "cz1": parse_quadext("3205/3981312*sqrt(2)"),
    "cy4": QuadExt(Fraction(-858455, 12039487488)),
}


def q(text: str) -> QuadExt:
    return parse_quadext(text)


@pytest.fixture(scope="session")
def hh():
    return henon_heiles(LAMBDA, C)


@pytest.fixture(scope="session")
def hh_z(hh):
    return square_substitute(hh, "x", "z")


@pytest.fixture(scope="session")
def hh_balances(hh):
    return find_balances(hh)


@pytest.fixture(scope="session")
def z_balances(hh_z):
    return find_balances(hh_z)


@pytest.fixture(scope="session")
def case2(z_balances):
    """z ~ t^-3, y ~ t^-2 with the z leading coefficient left free."""
    return next(c for c in z_balances if c.arbitrary_symbols())


@pytest.fixture(scope="session")
def symbolic_branches(hh_z, case2):
    return expand(hh_z, case2, 7, Mode.SYMBOLIC)


@pytest.fixture(scope="session")
def plus_branch(symbolic_branches):
    return symbolic_branches[0]


@pytest.fixture(scope="session")
def minus_branch(symbolic_branches):
    return symbolic_branches[1]


@pytest.fixture(scope="session")
def closed_form_branch(hh_z, case2):
    """The + branch evaluated on the closed-form parameters through step 20."""
    values = dict(CLOSED_FORM_VALUES, a1=q("25/16*sqrt(2)"))
    return expand(hh_z, case2, 20, Mode.EVALUATED, values)[0]

# -*- coding: utf-8 -*-
"""
Independent checks of expanded branches.

* residual_order: substitute the truncated series back into the full system.
* energy_series: Laurent series of the Hénon-Heiles Hamiltonian on a branch.
* first_order_invariant_check / trajectory_relation_check: the squared,
  radical-free first-order relations of the lambda = 1/9 special solutions.
* closed_form_laurent: BigFloat Laurent coefficients of the closed-form
  solutions at their pole, used as an oracle for the recursion.

Every check works on LaurentSeries with tracked precision, so the window in
which a relation must vanish follows from the truncation alone.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

import mpmath

try:
    from .exactnum import QuadExt
    from .exceptions import VerificationError
    from .odemodel import PolyODESystem
    from .settings import default_precision
    from .painleve.laurent import LaurentSeries
    from .painleve.series import LaurentSolution, coefficient
except ImportError:
    from exactnum import QuadExt
    from exceptions import VerificationError
    from odemodel import PolyODESystem
    from settings import default_precision
    from painleve.laurent import LaurentSeries
    from painleve.series import LaurentSolution, coefficient

logger = logging.getLogger(__name__)

SPECIAL_LAMBDA = QuadExt(Fraction(1, 9))


# --- Types ---

@dataclass(frozen=True)
class ClosedFormBranch:
    """y = -5/(3(1 -+ 3s)^2), z = x^2 = 25(1 -+ s)/(9(1 -+ 3s)^3), s = sin(theta + t/3), pole at t = 0."""
    sign: int = 1
    precision: int = field(default_factory=default_precision)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise VerificationError(f"Closed-form sign must be +1 or -1, got {self.sign}")

    def phase(self):
        """theta with sin(theta) = sign/3 and the z leading coefficient of the same sign as the branch."""
        with mpmath.workdps(self.precision):
            base = mpmath.asin(mpmath.mpf(1) / 3)
            return mpmath.pi - base if self.sign > 0 else base - mpmath.pi

    def t0(self):
        """Pole position measured from the zero of the phase: -3*theta."""
        with mpmath.workdps(self.precision):
            return -3 * self.phase()


@dataclass(frozen=True)
class ResidualEntry:
    equation: int
    lowest_power: Optional[int]
    magnitude: Optional[object]
    guaranteed: int

    @property
    def ok(self) -> bool:
        return self.lowest_power is None or self.lowest_power >= self.guaranteed


@dataclass(frozen=True)
class ResidualProfile:
    order: int
    entries: Tuple[ResidualEntry, ...]

    def passes(self) -> bool:
        return all(entry.ok for entry in self.entries)


@dataclass(frozen=True)
class RelationCheck:
    """Outcome of a relation that should vanish below `window` (the first unknown power)."""
    name: str
    lowest_power: Optional[int]
    window: int
    note: str = ""

    @property
    def vanishes(self) -> bool:
        return self.lowest_power is None


@dataclass(frozen=True)
class EnergyResult:
    series: LaurentSeries
    energy: Optional[object]
    window: int
    nonconstant_power: Optional[int]

    @property
    def conserved(self) -> bool:
        return self.nonconstant_power is None


@dataclass(frozen=True)
class ClosedFormComparison:
    max_relative_error: object
    worst: Optional[Tuple[str, int]]
    tolerance: object

    @property
    def agrees(self) -> bool:
        return self.max_relative_error <= self.tolerance


# --- Series helpers ---

def _coefficients(solution: LaurentSolution, var: str, N: int, values: Optional[Mapping[str, object]]):
    i = solution.variables.index(var)
    start = solution.start_exponents[i]
    coeffs = [coefficient(solution, var, start + j) for j in range(N + 1)]
    if values is not None:
        values = {k: v if isinstance(v, QuadExt) else QuadExt(v) for k, v in values.items()}
        coeffs = [c.evaluate(values) for c in coeffs]
    elif all(c.is_constant() for c in coeffs):
        coeffs = [c.constant_value() for c in coeffs]
    return start, coeffs


def truncated_series(solution: LaurentSolution, var: str, N: int, values=None) -> LaurentSeries:
    """Series of var known through recursion step N (precision start + N + 1)."""
    start, coeffs = _coefficients(solution, var, N, values)
    return LaurentSeries(coeffs, start, start + N + 1)


def _jet_series(series: LaurentSeries, order: int) -> LaurentSeries:
    for _ in range(order):
        series = series.derivative()
    return series


def _parameter(system: PolyODESystem, name: str) -> QuadExt:
    value = system.parameter(name)
    if value is None:
        raise VerificationError(f"System {system.name or '?'} has no parameter {name!r}")
    return value


def _require_special_lambda(system: PolyODESystem) -> None:
    if _parameter(system, "lambda") != SPECIAL_LAMBDA:
        raise VerificationError("This relation holds only for lambda = 1/9 branches.")


def _hh_names(system: PolyODESystem) -> Tuple[str, str, bool]:
    """(x-like variable, y variable, True when the x-like variable is z = x^2)."""
    if system.substitution:
        original, new = system.substitution
        other = [v for v in system.variables if v != new]
        return new, other[0], True
    if len(system.variables) != 2:
        raise VerificationError("Energy and relation checks need a two-variable Hénon-Heiles system.")
    return system.variables[0], system.variables[1], False


# --- Operations ---

def residual_order(
    system: PolyODESystem,
    solution: LaurentSolution,
    N: int,
    param_values: Optional[Mapping[str, object]] = None,
) -> ResidualProfile:
    """Lowest surviving power of each equation after substituting the order-N truncation.

    The truncation is treated as an exact Laurent polynomial; equation i must
    vanish below p_i + N + 1 where p_i is its leading power.
    """
    if N > solution.order:
        raise VerificationError(f"Solution reaches step {solution.order}; N={N} requested.")
    series = {}
    for var in system.variables:
        start, coeffs = _coefficients(solution, var, N, param_values)
        series[var] = LaurentSeries(coeffs, start)
    jets: Dict[Tuple[str, int], LaurentSeries] = {}
    entries = []
    for i, eq in enumerate(system.equations):
        total = LaurentSeries([])
        for mono, coeff in eq.terms().items():
            term = LaurentSeries([coeff])
            for v, e in mono:
                key = (v.name, v.order)
                if key not in jets:
                    jets[key] = _jet_series(series[v.name], v.order)
                term = term * jets[key] ** e
            total = total + term
        lowest = total.lowest_nonzero()
        magnitude = None
        if lowest is not None:
            value = total[lowest]
            if isinstance(value, QuadExt):
                magnitude = abs(value.to_bigfloat(30))
        guaranteed = int(solution.candidate.powers[i]) + N + 1
        entries.append(ResidualEntry(i, lowest, magnitude, guaranteed))
        logger.debug(f"Residual of equation {i + 1} at N={N}: lowest power {lowest} (guaranteed {guaranteed})")
    return ResidualProfile(N, tuple(entries))


def hamiltonian(system: PolyODESystem, x, x_t, y, y_t):
    """H = (x_t^2 + y_t^2 + lambda*x^2 + y^2)/2 + x^2*y - (C/3)*y^3 on exact, BigFloat or series values."""
    lam = _parameter(system, "lambda")
    C = _parameter(system, "C")
    if any(isinstance(v, (mpmath.mpf, mpmath.mpc, float)) for v in (x, x_t, y, y_t)):
        lam, C = lam.to_bigfloat(), C.to_bigfloat()
    x2 = x * x
    return _hamiltonian_from_square(lam, C, x2, x_t * x_t, y, y_t)


def _hamiltonian_from_square(lam, C, x2, xt2, y, y_t):
    return (xt2 + y_t * y_t + x2 * lam + y * y) / 2 + x2 * y - y * y * y * C / 3


def energy_series(solution: LaurentSolution, param_values: Optional[Mapping[str, object]], N: int) -> EnergyResult:
    """Laurent series of H along the branch; in the z = x^2 form x_t^2 = z_t^2/(4z)."""
    system = solution.system
    lam = _parameter(system, "lambda")
    C = _parameter(system, "C")
    xname, yname, squared = _hh_names(system)
    x = truncated_series(solution, xname, N, param_values)
    y = truncated_series(solution, yname, N, param_values)
    if x.is_zero() or y.is_zero():
        raise VerificationError("energy_series needs nonzero leading coefficients.")
    x_t, y_t = x.derivative(), y.derivative()
    if squared:
        if x.valuation != solution.start_exponents[solution.variables.index(xname)]:
            raise VerificationError(f"Leading coefficient of {xname} vanishes; cannot divide by it.")
        H = _hamiltonian_from_square(lam, C, x, x_t * x_t / (x * 4), y, y_t)
    else:
        H = _hamiltonian_from_square(lam, C, x * x, x_t * x_t, y, y_t)
    window = H.precision
    energy = H[0] if window > 0 else None
    nonconstant = next((p for p, c in H.items() if p != 0 and c != 0), None)
    logger.info(f"Energy on branch {solution.branch_id}: H = {energy} (checked below t^{window})")
    return EnergyResult(H, energy, window, nonconstant)


def invariant_residual(y: LaurentSeries) -> LaurentSeries:
    """(y_t^2 + 32/15 y^3 + 4/9 y^2)^2 + 64/135 y^5."""
    y_t = y.derivative()
    y2 = y * y
    bracket = y_t * y_t + y2 * y * Fraction(32, 15) + y2 * Fraction(4, 9)
    return bracket * bracket + y2 * y2 * y * Fraction(64, 135)


def trajectory_residual(z: LaurentSeries, y: LaurentSeries) -> LaurentSeries:
    """(z + 5y/9)^2 + 20/27 y^3 with z = x^2."""
    s = z + y * Fraction(5, 9)
    return s * s + y * y * y * Fraction(20, 27)


def _relation_check(name: str, residual: LaurentSeries, note: str) -> RelationCheck:
    lowest = residual.lowest_nonzero()
    return RelationCheck(name, lowest, residual.precision, note)


def first_order_invariant_check(solution: LaurentSolution, param_values, N: int) -> RelationCheck:
    """Lowest surviving power of the squared first-order equation for y."""
    _require_special_lambda(solution.system)
    _, yname, _ = _hh_names(solution.system)
    residual = invariant_residual(truncated_series(solution, yname, N, param_values))
    check = _relation_check("first-order invariant", residual, "squared form: holds up to the sign of the radical")
    logger.info(f"Invariant check on branch {solution.branch_id}: lowest power {check.lowest_power}, window {check.window}")
    return check


def trajectory_relation_check(solution: LaurentSolution, param_values, N: int) -> RelationCheck:
    """Lowest surviving power of the squared trajectory relation between x^2 and y."""
    _require_special_lambda(solution.system)
    xname, yname, squared = _hh_names(solution.system)
    x = truncated_series(solution, xname, N, param_values)
    z = x if squared else x * x
    residual = trajectory_residual(z, truncated_series(solution, yname, N, param_values))
    check = _relation_check("trajectory relation", residual, "squared form: holds up to the sign of the radical")
    logger.info(f"Trajectory check on branch {solution.branch_id}: lowest power {check.lowest_power}, window {check.window}")
    return check


def closed_form_laurent(branch: ClosedFormBranch, upto: int) -> Dict[Tuple[str, int], object]:
    """BigFloat Laurent coefficients of y (from t^-2) and z (from t^-3) through t^upto."""
    P = branch.precision
    if P < 2 * (upto + 10):
        raise VerificationError(f"precision {P} is too low for coefficients up to t^{upto} (need {2 * (upto + 10)})")
    sigma = branch.sign
    terms = upto + 5
    with mpmath.workdps(P):
        theta = branch.phase()
        derivatives = [mpmath.sin(theta), mpmath.cos(theta), -mpmath.sin(theta), -mpmath.cos(theta)]
        s = []
        for k in range(terms + 1):
            s.append(derivatives[k % 4] / (mpmath.mpf(3) ** k * mpmath.factorial(k)))
        # D = 1 - 3*sigma*s vanishes at t = 0; E = D/t
        E = LaurentSeries([-3 * sigma * s[k] for k in range(1, terms + 1)], 0, terms)
        inv = E.inverse()
        one_minus_s = LaurentSeries([1 - sigma * s[0]] + [-sigma * c for c in s[1:terms]], 0, terms)
        y = LaurentSeries([mpmath.mpf(-5) / 3], -2) * inv ** 2
        z = LaurentSeries([mpmath.mpf(25) / 9], -3) * one_minus_s * inv ** 3
        out = {}
        for name, series, start in (("y", y, -2), ("z", z, -3)):
            for power in range(start, upto + 1):
                out[(name, power)] = mpmath.mpf(series[power])
    return out


def compare_with_closed_form(
    solution: LaurentSolution,
    param_values: Mapping[str, object],
    branch: ClosedFormBranch,
    upto: int,
    tolerance=None,
) -> ClosedFormComparison:
    """Largest relative gap between evaluated coefficients and the closed-form oracle."""
    oracle = closed_form_laurent(branch, upto)
    P = branch.precision
    values = {k: v if isinstance(v, QuadExt) else QuadExt(v) for k, v in param_values.items()}
    with mpmath.workdps(P):
        tolerance = tolerance if tolerance is not None else mpmath.mpf(10) ** (-(P - 20))
        worst, worst_at = mpmath.mpf(0), None
        for (var, power), expected in oracle.items():
            exact = coefficient(solution, var, power).evaluate(values).to_bigfloat(P)
            scale = max(abs(expected), mpmath.mpf(10) ** (-P))
            error = abs(exact - expected) / scale
            if error > worst:
                worst, worst_at = error, (var, power)
    logger.info(f"Closed-form comparison for branch {solution.branch_id}: max relative error {mpmath.nstr(worst, 5)}")
    return ClosedFormComparison(worst, worst_at, tolerance)


def energy_value(solution: LaurentSolution, param_values, N: int = 20):
    """Constant term of the energy series, the branch energy."""
    return energy_series(solution, param_values, N).energy


def checks_for_branch(solution: LaurentSolution, param_values, N: int) -> List[Tuple[str, bool, str]]:
    """(name, passed, detail) triples for every check that applies to the branch."""
    results = []
    residual = residual_order(solution.system, solution, N, param_values)
    detail = ", ".join(f"eq{e.equation + 1}: {e.lowest_power} >= {e.guaranteed}" for e in residual.entries)
    results.append(("residual", residual.passes(), detail))
    try:
        energy = energy_series(solution, param_values, N)
        results.append(("energy", energy.conserved, f"H = {energy.energy} below t^{energy.window}"))
    except VerificationError as e:
        logger.debug(f"Energy check skipped: {e}")
    if solution.system.parameter("lambda") == SPECIAL_LAMBDA:
        for check in (first_order_invariant_check(solution, param_values, N),
                      trajectory_relation_check(solution, param_values, N)):
            detail = "vanishes" if check.vanishes else f"lowest power {check.lowest_power}"
            results.append((check.name, check.vanishes, f"{detail} below t^{check.window}"))
    return results

# -*- coding: utf-8 -*-
"""
Dominant balances of polynomial ODE systems.

Each variable is tried as a_i * t**alpha_i on a grid of rational exponents.
For every grid point the terms of minimal power in each equation form the
leading subset; the leading coefficients a_i then solve the leading-order
equations, or stay ARBITRARY when nothing constrains them.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

try:
    from ..exactnum import QuadExt, format_quadext
    from ..exceptions import BalanceError, FieldTowerError
    from ..odemodel import JetMonomial, JetPolynomial, PolyODESystem, monomial_str
    from .parampoly import ParamPoly
    from .upoly import UPoly, find_roots
except ImportError:
    from exactnum import QuadExt, format_quadext
    from exceptions import BalanceError, FieldTowerError
    from odemodel import JetMonomial, JetPolynomial, PolyODESystem, monomial_str
    from painleve.parampoly import ParamPoly
    from painleve.upoly import UPoly, find_roots

logger = logging.getLogger(__name__)

DEFAULT_EXPONENT_RANGE = (Fraction(-5), Fraction(-1, 2))
EXPONENT_SYMBOL = "alpha"


class Arbitrary(Enum):
    ARBITRARY = "ARBITRARY"

    def __str__(self) -> str:
        return self.value


ARBITRARY = Arbitrary.ARBITRARY

Leading = Union[QuadExt, Arbitrary, None]


class BalanceStatus(str, Enum):
    RESOLVED = "RESOLVED"
    UNRESOLVED = "UNRESOLVED"


def falling_factorial(alpha, k: int):
    """alpha*(alpha-1)*...*(alpha-k+1); alpha may be a Fraction or a ParamPoly."""
    result = Fraction(1) if not isinstance(alpha, ParamPoly) else ParamPoly.constant(1)
    for i in range(k):
        result = result * (alpha - i)
    return result


def leading_symbol(index: int) -> str:
    """Name of the leading coefficient of the variable at position index: a1, a2, ..."""
    return f"a{index + 1}"


def monomial_power(mono: JetMonomial, exponents: Dict[str, Fraction]) -> Fraction:
    return sum((e * (exponents[v.name] - v.order) for v, e in mono), Fraction(0))


@dataclass(frozen=True)
class BalanceCandidate:
    variables: Tuple[str, ...]
    exponents: Tuple[Fraction, ...]
    leading: Tuple[Leading, ...]
    subsets: Tuple[FrozenSet[JetMonomial], ...]
    powers: Tuple[Fraction, ...]
    status: BalanceStatus = BalanceStatus.RESOLVED
    note: str = ""

    @classmethod
    def from_exponents(
        cls,
        system: PolyODESystem,
        exponents: Sequence[Fraction],
        leading: Sequence[Leading],
    ) -> "BalanceCandidate":
        """Build a candidate by hand; the leading subsets follow from the exponents."""
        exponents = tuple(Fraction(e) for e in exponents)
        by_name = dict(zip(system.variables, exponents))
        subsets, powers = [], []
        for eq in system.equations:
            term_powers = {mono: monomial_power(mono, by_name) for mono in eq.terms()}
            low = min(term_powers.values())
            subsets.append(frozenset(m for m, p in term_powers.items() if p == low))
            powers.append(low)
        leading = tuple(v if isinstance(v, (QuadExt, Arbitrary)) or v is None else QuadExt(v) for v in leading)
        return cls(system.variables, exponents, leading, tuple(subsets), tuple(powers))

    def index(self, var: str) -> int:
        return self.variables.index(var)

    def exponent(self, var: str) -> Fraction:
        return self.exponents[self.index(var)]

    def leading_of(self, var: str) -> Leading:
        return self.leading[self.index(var)]

    def is_resolved(self) -> bool:
        return self.status == BalanceStatus.RESOLVED

    def is_integer_step(self) -> bool:
        return all(e.denominator == 1 for e in self.exponents)

    def arbitrary_symbols(self) -> List[str]:
        return [leading_symbol(i) for i, v in enumerate(self.leading) if v is ARBITRARY]

    def leading_value(self, index: int) -> ParamPoly:
        """Leading coefficient of variable index as a ParamPoly (a symbol when ARBITRARY)."""
        value = self.leading[index]
        if value is ARBITRARY:
            return ParamPoly.variable(leading_symbol(index))
        if value is None:
            raise BalanceError(f"Candidate {self.label()} has an unresolved leading coefficient.")
        return ParamPoly.constant(value)

    def jet_leading_value(self, index: int, order: int) -> ParamPoly:
        """Leading coefficient of the order-th derivative of variable index."""
        return self.leading_value(index) * QuadExt(falling_factorial(self.exponents[index], order))

    def label(self) -> str:
        return ", ".join(f"{v}~t^{e}" for v, e in zip(self.variables, self.exponents))

    def describe_leading(self) -> Dict[str, str]:
        out = {}
        for i, (var, value) in enumerate(zip(self.variables, self.leading)):
            if value is None:
                out[var] = "UNRESOLVED"
            elif value is ARBITRARY:
                out[var] = f"ARBITRARY ({leading_symbol(i)})"
            else:
                out[var] = format_quadext(value)
        return out


class BalanceList(list):
    """List of candidates that also carries exponent diagnostics."""

    def __init__(self, candidates=(), diagnostics=()):
        super().__init__(candidates)
        self.diagnostics: List[str] = list(diagnostics)


def exponent_grid(exponent_range: Tuple[Fraction, Fraction], denominator_bound: int) -> List[Fraction]:
    low, high = (Fraction(v) for v in exponent_range)
    values = set()
    for d in range(1, denominator_bound + 1):
        k = -(-low.numerator * d // low.denominator)  # ceil(low * d)
        while Fraction(k, d) <= high:
            values.add(Fraction(k, d))
            k += 1
    return sorted(values)


def _leading_subsets(system: PolyODESystem, exponents: Sequence[Fraction]) -> Optional[Tuple[FrozenSet[JetMonomial], ...]]:
    by_name = dict(zip(system.variables, exponents))
    subsets = []
    for eq in system.equations:
        term_powers = {mono: monomial_power(mono, by_name) for mono in eq.terms()}
        if not term_powers:
            return None
        low = min(term_powers.values())
        subset = frozenset(m for m, p in term_powers.items() if p == low)
        if len(subset) < 2:
            return None
        subsets.append(subset)
    return tuple(subsets)


def _leading_equation(
    system: PolyODESystem,
    eq_index: int,
    subset: FrozenSet[JetMonomial],
    exponents: Sequence,
) -> ParamPoly:
    """Coefficient of the leading power after x_i -> a_i t^alpha_i; exponents may hold a ParamPoly."""
    total = ParamPoly.zero()
    terms = system.equations[eq_index].terms()
    for mono in subset:
        value = ParamPoly.constant(terms[mono])
        for v, e in mono:
            i = system.index(v.name)
            factor = ParamPoly.variable(leading_symbol(i)) * falling_factorial(exponents[i], v.order)
            value = value * factor ** e
        total = total + value
    return total


# --- Leading-order solver ---

class _LeadingSolver:
    """One equation linear in an unknown with constant coefficient, or univariate in one unknown.

    Anything else marks the result unresolved.
    """

    def __init__(self, nonzero: Sequence[str]):
        self.nonzero = set(nonzero)
        self.solutions: List[Dict[str, ParamPoly]] = []
        self.unresolved = False

    def solve(self, equations: Sequence[ParamPoly]) -> "_LeadingSolver":
        self._recurse(list(equations), {})
        return self

    def _recurse(self, equations: List[ParamPoly], assigned: Dict[str, ParamPoly]) -> None:
        reduced = []
        for eq in equations:
            eq = eq.strip_content(self.nonzero & eq.variables())
            if eq.is_zero():
                continue
            if eq.is_constant():
                return
            reduced.append(eq)
        if not reduced:
            self.solutions.append(dict(assigned))
            return
        for eq in reduced:
            for name in sorted(eq.variables()):
                if eq.degree_in(name) != 1 or eq.min_exponent(name) < 0:
                    continue
                coefficient = eq.coefficient_of(name, 1)
                if not coefficient.is_constant():
                    continue
                value = -eq.coefficient_of(name, 0) / coefficient.constant_value()
                if value.is_zero() and name in self.nonzero:
                    return
                self._assign(reduced, assigned, name, value, skip=eq)
                return
        for eq in reduced:
            if len(eq.variables()) != 1:
                continue
            (name,) = eq.variables()
            for root in find_roots(UPoly.from_parampoly(eq, name)):
                if not root.exact:
                    logger.warning(f"Leading equation {eq} = 0 has a non-quadratic root {root}.")
                    self.unresolved = True
                    continue
                if not root.value and name in self.nonzero:
                    continue
                self._assign(reduced, assigned, name, ParamPoly.constant(root.value), skip=eq)
            return
        logger.warning(f"Leading equations {[str(e) for e in reduced]} are outside the supported shape.")
        self.unresolved = True

    def _assign(self, equations, assigned, name, value, skip) -> None:
        try:
            updated = {k: v.substitute({name: value}) for k, v in assigned.items()}
            updated[name] = value
            rest = [eq.substitute({name: value}) for eq in equations if eq is not skip]
        except FieldTowerError as e:
            logger.warning(f"Dropping a leading-order branch: {e}")
            self.unresolved = True
            return
        self._recurse(rest, updated)


def _candidate_from_solution(
    system: PolyODESystem,
    exponents: Tuple[Fraction, ...],
    subsets,
    solution: Dict[str, ParamPoly],
) -> Optional[BalanceCandidate]:
    leading: List[Leading] = []
    status, note = BalanceStatus.RESOLVED, ""
    for i in range(len(system.variables)):
        value = solution.get(leading_symbol(i))
        if value is None:
            leading.append(ARBITRARY)
        elif value.is_constant():
            if value.is_zero():
                return None
            leading.append(value.constant_value())
        else:
            leading.append(None)
            status = BalanceStatus.UNRESOLVED
            note = f"{leading_symbol(i)} = {value} depends on a free coefficient"
    by_name = dict(zip(system.variables, exponents))
    powers = tuple(min(monomial_power(m, by_name) for m in subset) for subset in subsets)
    return BalanceCandidate(system.variables, exponents, tuple(leading), subsets, powers, status, note)


def _exponent_diagnostics(system, exponents, subsets, seen) -> List[str]:
    """Solve the leading equations with one exponent left free and report non-grid roots."""
    messages = []
    quarter = Fraction(1, 4)
    for k, var in enumerate(system.variables):
        key = (k, subsets)
        if key in seen:
            continue
        neighbours = []
        for shift in (-quarter, quarter):
            shifted = list(exponents)
            shifted[k] += shift
            neighbours.append(_leading_subsets(system, shifted))
        if any(n != subsets for n in neighbours):
            continue
        seen.add(key)
        symbolic = list(exponents)
        symbolic[k] = ParamPoly.variable(EXPONENT_SYMBOL)
        equations = [_leading_equation(system, i, subsets[i], symbolic) for i in range(len(subsets))]
        solver = _LeadingSolver([leading_symbol(i) for i in range(len(system.variables))]).solve(equations)
        roots = []
        for solution in solver.solutions:
            value = solution.get(EXPONENT_SYMBOL)
            if value is not None and value.is_constant() and not value.constant_value().is_rational():
                roots.append(format_quadext(value.constant_value()))
        if solver.unresolved:
            roots.append("non-quadratic roots")
        if roots:
            pattern = "; ".join(" + ".join(sorted(monomial_str(m) for m in s)) for s in subsets)
            messages.append(f"exponent of {var} for leading terms [{pattern}] is not rational: {', '.join(roots)}")
    return messages


def find_balances(
    system: PolyODESystem,
    exponent_range: Tuple[Fraction, Fraction] = DEFAULT_EXPONENT_RANGE,
    denominator_bound: int = 2,
) -> BalanceList:
    """Enumerate dominant balances on the exponent grid.

    Args:
        system: the ODE system.
        exponent_range: closed interval of leading exponents tried for every variable.
        denominator_bound: 1 (integer exponents) or 2 (half-integers as well).

    Returns:
        BalanceList of candidates in lexicographic order of exponents, with
        diagnostics for leading patterns whose exponents are irrational or complex.
    """
    if denominator_bound not in (1, 2):
        raise BalanceError(f"denominator_bound must be 1 or 2, got {denominator_bound}")
    grid = exponent_grid(exponent_range, denominator_bound)
    symbols = [leading_symbol(i) for i in range(len(system.variables))]
    result = BalanceList()
    seen_candidates = set()
    seen_patterns = set()
    for exponents in itertools.product(grid, repeat=len(system.variables)):
        subsets = _leading_subsets(system, exponents)
        if subsets is None:
            continue
        result.diagnostics.extend(_exponent_diagnostics(system, exponents, subsets, seen_patterns))
        equations = [_leading_equation(system, i, subsets[i], exponents) for i in range(len(subsets))]
        solver = _LeadingSolver(symbols).solve(equations)
        found = [_candidate_from_solution(system, exponents, subsets, s) for s in solver.solutions]
        if solver.unresolved:
            found.append(BalanceCandidate(
                system.variables, exponents, tuple(None for _ in symbols), subsets,
                tuple(min(monomial_power(m, dict(zip(system.variables, exponents))) for m in s) for s in subsets),
                BalanceStatus.UNRESOLVED, "leading-coefficient equations outside the supported shape",
            ))
        for candidate in found:
            if candidate is None:
                continue
            key = (candidate.exponents, candidate.subsets, candidate.leading)
            if key in seen_candidates:
                continue
            seen_candidates.add(key)
            result.append(candidate)
            logger.info(f"Balance {candidate.label()}: {candidate.describe_leading()} [{candidate.status.value}]")
    if not result:
        logger.info("No dominant balance on the exponent grid.")
    return result


def leading_terms(system: PolyODESystem, candidate: BalanceCandidate) -> PolyODESystem:
    """The simplified system keeping only each equation's leading subset."""
    equations = []
    for eq, subset in zip(system.equations, candidate.subsets):
        terms = eq.terms()
        equations.append(JetPolynomial({m: terms[m] for m in subset if m in terms}))
    return PolyODESystem(
        system.variables,
        tuple(equations),
        system.parameters,
        f"{system.name} (leading)" if system.name else "leading",
        system.substitution,
    )

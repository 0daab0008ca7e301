# -*- coding: utf-8 -*-
"""
Formal Laurent-series solutions around a movable pole placed at t = 0.

Each variable is written x_i = sum_j c_{i,j} t^(alpha_i + j). Collecting the
power p_i + j of equation i gives, for every step j, the linear system

    Q(j) c_j + R_j = 0

where Q is the resonance matrix at r = j and R_j only involves earlier
coefficients. At resonance steps (det Q(j) = 0) the kernel directions become
named free parameters and the leftover rows are compatibility constraints.
A constraint that is a univariate polynomial in one earlier parameter fixes
that parameter; the expansion then branches over its exact roots.

Free parameters are named after the power they multiply: cz1 is the
coefficient of t^1 in z, cym1 the coefficient of t^-1 in y. An ARBITRARY
leading coefficient of the variable at position i is a{i+1}.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

try:
    from ..exactnum import QuadExt, format_quadext
    from ..exceptions import (
        CoefficientRangeError,
        FieldTowerError,
        MissingParameterError,
        NondegenerateStepError,
        OrderTooLowError,
        SeriesError,
    )
    from ..odemodel import PolyODESystem
    from .balance import BalanceCandidate, falling_factorial, leading_symbol, leading_terms, monomial_power
    from .parampoly import ParamPoly
    from .resonance import RESONANCE_SYMBOL, analyze_candidate, determinant, resonance_matrix
    from .upoly import UPoly, find_roots
except ImportError:
    from exactnum import QuadExt, format_quadext
    from exceptions import (
        CoefficientRangeError,
        FieldTowerError,
        MissingParameterError,
        NondegenerateStepError,
        OrderTooLowError,
        SeriesError,
    )
    from odemodel import PolyODESystem
    from painleve.balance import BalanceCandidate, falling_factorial, leading_symbol, leading_terms, monomial_power
    from painleve.parampoly import ParamPoly
    from painleve.resonance import RESONANCE_SYMBOL, analyze_candidate, determinant, resonance_matrix
    from painleve.upoly import UPoly, find_roots

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction, QuadExt]
Jet = Tuple[int, int]  # (variable index, derivative order)


class Mode(str, Enum):
    SYMBOLIC = "SYMBOLIC"
    EVALUATED = "EVALUATED"


class BranchStatus(str, Enum):
    OK = "OK"
    LOG_REQUIRED = "LOG_REQUIRED"
    UNRESOLVED = "UNRESOLVED"


def parameter_name(var: str, power: int) -> str:
    """cz1 for the t^1 coefficient of z, cxm1 for the t^-1 coefficient of x."""
    return f"c{var}{power}" if power >= 0 else f"c{var}m{-power}"


# --- Result types ---

@dataclass(frozen=True)
class FreeParameter:
    name: str
    step: int
    variable: str
    power: int


@dataclass(frozen=True)
class ConstraintRecord:
    step: int
    constraints: Tuple[ParamPoly, ...]
    resolution: str


@dataclass(frozen=True)
class StepSystem:
    """Q(j) u + R_j = 0 for the unknown coefficients u of step j."""
    step: int
    unknowns: Tuple[str, ...]
    matrix: Tuple[Tuple[ParamPoly, ...], ...]
    rhs: Tuple[ParamPoly, ...]

    def equations(self) -> Tuple[ParamPoly, ...]:
        out = []
        for row, r in zip(self.matrix, self.rhs):
            total = r
            for entry, name in zip(row, self.unknowns):
                total = total + entry * ParamPoly.variable(name)
            out.append(total)
        return tuple(out)

    def determinant(self) -> ParamPoly:
        return determinant(self.matrix)


@dataclass(frozen=True)
class CompatibilityResult:
    step_system: StepSystem
    equations: Tuple[ParamPoly, ...]
    constraints: Tuple[ParamPoly, ...]
    free: Tuple[str, ...]


@dataclass(frozen=True)
class LaurentSolution:
    system: PolyODESystem
    candidate: BalanceCandidate
    variables: Tuple[str, ...]
    start_exponents: Tuple[int, ...]
    coefficients: Tuple[Tuple[ParamPoly, ...], ...]
    registry: Tuple[FreeParameter, ...]
    constraints: Tuple[ConstraintRecord, ...]
    fixed: Tuple[Tuple[str, QuadExt], ...]
    branch_id: str
    status: BranchStatus
    mode: Mode
    order: int
    values: Tuple[Tuple[str, QuadExt], ...] = ()
    failed_step: Optional[int] = None
    note: str = ""

    def coefficient(self, var: str, power: int) -> ParamPoly:
        return coefficient(self, var, power)

    def series(self, var: str) -> List[Tuple[int, ParamPoly]]:
        i = self.variables.index(var)
        start = self.start_exponents[i]
        return [(start + j, c) for j, c in enumerate(self.coefficients[i])]

    def max_power(self, var: str) -> int:
        i = self.variables.index(var)
        return self.start_exponents[i] + len(self.coefficients[i]) - 1

    def parameter_names(self) -> List[str]:
        return [p.name for p in self.registry]

    def fixed_value(self, name: str) -> Optional[QuadExt]:
        return dict(self.fixed).get(name)


# --- Engine ---

@dataclass(frozen=True)
class _Term:
    equation: int
    coeff: QuadExt
    factors: Tuple[Jet, ...]
    offset: int


class _Unsupported(Exception):
    pass


class _Expansion:
    """Mutable state of one branch while the recursion runs."""

    def __init__(self, system: PolyODESystem, candidate: BalanceCandidate, mode: Mode, values: Dict[str, QuadExt]):
        self.system = system
        self.candidate = candidate
        self.mode = mode
        self.values = values
        self.n = len(system.variables)
        self.start = tuple(int(e) for e in candidate.exponents)
        self.terms = self._collect_terms()
        self.matrix = resonance_matrix(leading_terms(system, candidate), candidate)
        self.coeffs: List[List[ParamPoly]] = [[] for _ in range(self.n)]
        self.jets: Dict[Jet, List[ParamPoly]] = {}
        self.prefixes: Dict[Tuple[Jet, ...], List[ParamPoly]] = {}
        for term in self.terms:
            for f in term.factors:
                self.jets.setdefault(f, [])
            for k in range(2, len(term.factors) + 1):
                self.prefixes.setdefault(term.factors[:k], [])
        self.registry: List[FreeParameter] = []
        self.constraints: List[ConstraintRecord] = []
        self.fixed: Dict[str, QuadExt] = {}
        self.branch_id = ""
        self.status = BranchStatus.OK
        self.failed_step: Optional[int] = None
        self.note = ""
        self.step = 0

    def _collect_terms(self) -> List[_Term]:
        exponents = dict(zip(self.system.variables, self.candidate.exponents))
        out = []
        for i, eq in enumerate(self.system.equations):
            for mono, coeff in eq.terms().items():
                offset = monomial_power(mono, exponents) - self.candidate.powers[i]
                if offset.denominator != 1 or offset < 0:
                    raise SeriesError(f"Term {mono} lies below the leading power of equation {i + 1}")
                factors = tuple(sorted(
                    (self.system.index(v.name), v.order) for v, e in mono for _ in range(e)
                ))
                out.append(_Term(i, coeff, factors, int(offset)))
        return out

    def clone(self) -> "_Expansion":
        other = _Expansion.__new__(_Expansion)
        other.__dict__.update(self.__dict__)
        other.coeffs = [list(c) for c in self.coeffs]
        other.jets = {k: list(v) for k, v in self.jets.items()}
        other.prefixes = {k: list(v) for k, v in self.prefixes.items()}
        other.registry = list(self.registry)
        other.constraints = list(self.constraints)
        other.fixed = dict(self.fixed)
        return other

    # --- bookkeeping ---
    def _jet_value(self, jet: Jet, index: int) -> ParamPoly:
        v, k = jet
        return self.coeffs[v][index] * QuadExt(falling_factorial(Fraction(self.start[v] + index), k))

    def _append(self, index: int, values: Sequence[ParamPoly]) -> None:
        for v in range(self.n):
            self.coeffs[v].append(values[v])
        for jet, series in self.jets.items():
            series.append(self._jet_value(jet, index))
        for key in sorted(self.prefixes, key=len):
            head, last = self._series(key[:-1]), self.jets[key[-1]]
            total = ParamPoly.zero()
            for m in range(index + 1):
                a = head[m]
                if a.is_zero():
                    continue
                b = last[index - m]
                if not b.is_zero():
                    total = total + a * b
            self.prefixes[key].append(total)

    def _series(self, key: Tuple[Jet, ...]) -> List[ParamPoly]:
        return self.prefixes[key] if len(key) > 1 else self.jets[key[0]]

    def _excluded(self, key: Tuple[Jet, ...], j: int) -> ParamPoly:
        """Index-j coefficient of the product with every index-j factor coefficient set to zero."""
        if len(key) == 1:
            return ParamPoly.zero()
        head = self._series(key[:-1])
        last = self.jets[key[-1]]
        total = self._excluded(key[:-1], j) * last[0]
        for m in range(1, j):
            a = head[m]
            if a.is_zero():
                continue
            b = last[j - m]
            if not b.is_zero():
                total = total + a * b
        return total

    def substitute(self, name: str, value: QuadExt) -> None:
        mapping = {name: value}
        self.coeffs = [[c.substitute(mapping) for c in col] for col in self.coeffs]
        self.jets = {k: [c.substitute(mapping) for c in v] for k, v in self.jets.items()}
        self.prefixes = {k: [c.substitute(mapping) for c in v] for k, v in self.prefixes.items()}
        self.fixed[name] = value
        self.registry = [p for p in self.registry if p.name != name]

    # --- recursion ---
    def start_leading(self) -> None:
        leading = []
        for i in range(self.n):
            value = self.candidate.leading_value(i)
            symbol = leading_symbol(i)
            if symbol in value.variables():
                if symbol in self.values:
                    value = value.substitute({symbol: self.values[symbol]})
                    self.fixed[symbol] = self.values[symbol]
                else:
                    self.registry.append(FreeParameter(symbol, 0, self.system.variables[i], self.start[i]))
            leading.append(value)
        self._append(0, leading)

    def step_system(self, j: int) -> StepSystem:
        mapping: Dict[str, object] = {RESONANCE_SYMBOL: j}
        mapping.update(self.fixed)
        matrix = tuple(tuple(entry.substitute(mapping) for entry in row) for row in self.matrix)
        rhs = [ParamPoly.zero() for _ in range(self.n)]
        for term in self.terms:
            n = j - term.offset
            if n < 0:
                continue
            key = term.factors
            value = self._series(key)[n] if n < j else self._excluded(key, j)
            if not value.is_zero():
                rhs[term.equation] = rhs[term.equation] + value * term.coeff
        unknowns = tuple(parameter_name(self.system.variables[v], self.start[v] + j) for v in range(self.n))
        return StepSystem(j, unknowns, matrix, tuple(rhs))

    def eliminate(self, system: StepSystem):
        """Gauss-Jordan with monomial pivots; returns (rows, pivots {col: row}, free cols, leftover rows)."""
        n = self.n
        rows = [list(system.matrix[i]) + [system.rhs[i]] for i in range(n)]
        pivots: Dict[int, int] = {}
        free: List[int] = []
        for col in range(n):
            choices = [i for i in range(n) if i not in pivots.values() and not rows[i][col].is_zero()]
            if not choices:
                free.append(col)
                continue
            constant = [i for i in choices if rows[i][col].is_constant()]
            monomial = [i for i in choices if rows[i][col].is_monomial()]
            if not constant and not monomial:
                raise _Unsupported(f"pivot {rows[choices[0]][col]} is not a monomial")
            p = (constant or monomial)[0]
            pivot = rows[p][col]
            rows[p] = [entry / pivot for entry in rows[p]]
            for i in range(n):
                factor = rows[i][col]
                if i != p and not factor.is_zero():
                    rows[i] = [a - factor * b for a, b in zip(rows[i], rows[p])]
            pivots[col] = p
        leftover = [i for i in range(n) if i not in pivots.values()]
        return rows, pivots, free, leftover

    def advance(self, j: int) -> List["_Expansion"]:
        """Run step j; returns the branches that continue (one unless constraints branch)."""
        system = self.step_system(j)
        try:
            rows, pivots, free, leftover = self.eliminate(system)
        except _Unsupported as e:
            return [self._stop(j, BranchStatus.UNRESOLVED, str(e))]
        unknown = {}
        for col in free:
            var = self.system.variables[col]
            name = parameter_name(var, self.start[col] + j)
            if self.mode == Mode.EVALUATED or name in self.values:
                if name not in self.values:
                    raise MissingParameterError(name, j)
                unknown[col] = ParamPoly.constant(self.values[name])
            else:
                unknown[col] = ParamPoly.variable(name)
                self.registry.append(FreeParameter(name, j, var, self.start[col] + j))
            logger.info(f"Step {j}: free parameter {name}")
        for col, p in pivots.items():
            value = rows[p][self.n]
            for c in free:
                value = value + rows[p][c] * unknown[c]
            unknown[col] = -value
        self._append(j, [unknown[v] for v in range(self.n)])
        self.step = j
        if not free and not leftover:
            logger.debug(f"Step {j}: {[str(unknown[v]) for v in range(self.n)]}")
            return [self]
        constraints = tuple(rows[i][self.n] for i in leftover)
        return self._resolve(j, constraints)

    def _resolve(self, j: int, constraints: Tuple[ParamPoly, ...]) -> List["_Expansion"]:
        live = [c for c in constraints if not c.is_zero()]
        if not live:
            self.constraints.append(ConstraintRecord(j, constraints, "satisfied identically"))
            logger.info(f"Step {j}: compatibility condition holds identically")
            return [self]
        if any(c.is_constant() for c in live):
            self.constraints.append(ConstraintRecord(j, constraints, "inconsistent: logarithmic terms required"))
            return [self._stop(j, BranchStatus.LOG_REQUIRED, f"constraint {live[0]} = 0 cannot hold")]
        names = set().union(*(c.variables() for c in live))
        if len(names) != 1:
            self.constraints.append(ConstraintRecord(j, constraints, "unsupported constraint shape"))
            return [self._stop(j, BranchStatus.UNRESOLVED, f"constraints involve {sorted(names)}")]
        (name,) = names
        leading = name in {leading_symbol(i) for i in range(self.n)}
        base = live[0]
        low = base.min_exponent(name)
        if leading or low < 0:
            base = base.strip_content([name])
        roots = find_roots(UPoly.from_parampoly(base, name))
        branches = []
        numeric = False
        for root in roots:
            if not root.exact:
                numeric = True
                continue
            if leading and not root.value:
                continue
            try:
                if any(c.substitute({name: root.value}) for c in live):
                    continue
            except FieldTowerError:
                continue
            child = self.clone()
            child.constraints.append(ConstraintRecord(j, constraints, f"{name} = {format_quadext(root.value)}"))
            child.substitute(name, root.value)
            logger.info(f"Step {j}: branch {name} = {format_quadext(root.value)}")
            branches.append(child)
        if branches:
            for k, child in enumerate(branches, start=1):
                child.branch_id = f"{self.branch_id}.{k}" if self.branch_id else str(k)
            return branches
        if numeric:
            self.constraints.append(ConstraintRecord(j, constraints, f"{name} has only non-quadratic roots"))
            return [self._stop(j, BranchStatus.UNRESOLVED, f"roots of {base} in {name} are not quadratic")]
        self.constraints.append(ConstraintRecord(j, constraints, "no admissible root"))
        return [self._stop(j, BranchStatus.LOG_REQUIRED, f"no admissible value of {name}")]

    def _stop(self, j: int, status: BranchStatus, note: str) -> "_Expansion":
        self.status = status
        self.failed_step = j
        self.note = note
        logger.warning(f"Branch {self.branch_id or '1'} stopped at step {j}: {status.value} ({note})")
        return self

    def freeze(self) -> LaurentSolution:
        if self.mode == Mode.EVALUATED and self.status == BranchStatus.OK:
            for col in self.coeffs:
                for c in col:
                    if not c.is_constant():
                        raise MissingParameterError(sorted(c.variables())[0])
        return LaurentSolution(
            system=self.system,
            candidate=self.candidate,
            variables=self.system.variables,
            start_exponents=self.start,
            coefficients=tuple(tuple(col) for col in self.coeffs),
            registry=tuple(self.registry),
            constraints=tuple(self.constraints),
            fixed=tuple(sorted(self.fixed.items())),
            branch_id=self.branch_id or "1",
            status=self.status,
            mode=self.mode,
            order=self.step,
            values=tuple(sorted(self.values.items())),
            failed_step=self.failed_step,
            note=self.note,
        )

    @classmethod
    def from_solution(cls, solution: LaurentSolution, upto: int) -> "_Expansion":
        state = cls(solution.system, solution.candidate, solution.mode, dict(solution.values))
        state.fixed = dict(solution.fixed)
        state.registry = [p for p in solution.registry if p.step <= upto]
        state.constraints = [c for c in solution.constraints if c.step <= upto]
        state.branch_id = solution.branch_id
        for j in range(upto + 1):
            state._append(j, [solution.coefficients[v][j] for v in range(state.n)])
        state.step = upto
        return state


# --- Public operations ---

def _coerce_values(param_values: Optional[Mapping[str, Scalar]]) -> Dict[str, QuadExt]:
    return {k: v if isinstance(v, QuadExt) else QuadExt(v) for k, v in (param_values or {}).items()}


def _check_candidate(candidate: BalanceCandidate) -> None:
    if not candidate.is_resolved():
        raise SeriesError(f"Candidate {candidate.label()} is unresolved.")
    if not candidate.is_integer_step():
        raise SeriesError(
            f"Candidate {candidate.label()} has non-integer exponents; square the variable first (square_substitute)."
        )


def _run(system, candidate, order, mode, values) -> List[LaurentSolution]:
    initial = _Expansion(system, candidate, mode, values)
    initial.start_leading()
    finished: List[_Expansion] = []
    stack = [initial]
    while stack:
        state = stack.pop()
        while state.status == BranchStatus.OK and state.step < order:
            children = state.advance(state.step + 1)
            if len(children) > 1:
                stack.extend(reversed(children[1:]))
            state = children[0]
        finished.append(state)
    finished.sort(key=lambda s: [int(k) for k in (s.branch_id or "1").split(".")])
    return [state.freeze() for state in finished]


def expand(
    system: PolyODESystem,
    candidate: BalanceCandidate,
    order: int,
    mode: Mode = Mode.SYMBOLIC,
    param_values: Optional[Mapping[str, Scalar]] = None,
) -> List[LaurentSolution]:
    """Expand the candidate through recursion step `order`, one LaurentSolution per branch.

    Args:
        system: the full system (not the simplified one).
        candidate: an integer-exponent, resolved balance of system.
        order: number of recursion steps; must reach the largest positive resonance.
        mode: SYMBOLIC keeps free parameters as symbols; EVALUATED substitutes param_values.
        param_values: values of free parameters (and optionally of ARBITRARY leading coefficients).

    Raises:
        SeriesError, OrderTooLowError, MissingParameterError
    """
    _check_candidate(candidate)
    if order < 1:
        raise OrderTooLowError(f"order must be >= 1, got {order}")
    report = analyze_candidate(system, candidate)
    positive = report.positive_integer_resonances()
    if positive and order < max(positive):
        raise OrderTooLowError(f"order {order} is below the largest positive resonance {max(positive)}")
    mode = Mode(mode)
    solutions = _run(system, candidate, order, mode, _coerce_values(param_values))
    logger.info(f"Expanded {candidate.label()} to order {order}: {len(solutions)} branch(es)")
    return solutions


def solution_in_progress(
    system: PolyODESystem,
    candidate: BalanceCandidate,
    step: int,
    mode: Mode = Mode.SYMBOLIC,
    param_values: Optional[Mapping[str, Scalar]] = None,
) -> List[LaurentSolution]:
    """Branches expanded through step - 1, ready for compatibility_system(…, step)."""
    _check_candidate(candidate)
    return _run(system, candidate, step - 1, Mode(mode), _coerce_values(param_values))


def compatibility_system(solution: LaurentSolution, step: int) -> CompatibilityResult:
    """Raw equations of a resonance step before any constraint is resolved."""
    if solution.order < step - 1:
        raise CoefficientRangeError(f"Solution reaches step {solution.order}; step {step} needs {step - 1}.")
    state = _Expansion.from_solution(solution, step - 1)
    system = state.step_system(step)
    if not system.determinant().is_zero():
        raise NondegenerateStepError(step)
    try:
        rows, pivots, free, leftover = state.eliminate(system)
    except _Unsupported as e:
        raise SeriesError(f"Step {step}: {e}") from e
    return CompatibilityResult(
        step_system=system,
        equations=system.equations(),
        constraints=tuple(rows[i][state.n] for i in leftover),
        free=tuple(system.unknowns[c] for c in free),
    )


def coefficient(solution: LaurentSolution, var: str, power: int) -> ParamPoly:
    """Exact coefficient of t^power in var."""
    i = solution.variables.index(var)
    index = power - solution.start_exponents[i]
    if index < 0:
        return ParamPoly.zero()
    if index >= len(solution.coefficients[i]):
        raise CoefficientRangeError(f"{var} is expanded up to t^{solution.max_power(var)}, t^{power} requested.")
    return solution.coefficients[i][index]


def evaluate_coefficients(
    solution: LaurentSolution,
    param_values: Mapping[str, Scalar],
    upto: int,
) -> Dict[Tuple[str, int], QuadExt]:
    """Substitute the parameter values into every coefficient up to t^upto."""
    values = _coerce_values(param_values)
    for parameter in solution.registry:
        if parameter.name not in values:
            raise MissingParameterError(parameter.name, parameter.step)
    out = {}
    for var, start in zip(solution.variables, solution.start_exponents):
        for power in range(start, upto + 1):
            out[(var, power)] = coefficient(solution, var, power).evaluate(values)
    return out


def _power_of(solution: LaurentSolution, name: str) -> Optional[int]:
    """Power of t multiplied by a named parameter (leading symbol or free coefficient)."""
    for i, (var, start) in enumerate(zip(solution.variables, solution.start_exponents)):
        if name == leading_symbol(i):
            return start
    for p in solution.registry:
        if p.name == name:
            return p.power
    for var in sorted(solution.variables, key=len, reverse=True):
        rest = name[len(f"c{var}"):] if name.startswith(f"c{var}") else None
        if rest:
            rest = "-" + rest[1:] if rest.startswith("m") else rest
            try:
                return int(rest)
            except ValueError:
                continue
    return None


def time_reversed(solution: LaurentSolution) -> LaurentSolution:
    """The branch of x(-t): t^k coefficients times (-1)^k, odd-power parameters renamed to their negatives."""
    def odd(name: str) -> bool:
        power = _power_of(solution, name)
        return power is not None and power % 2 == 1

    flips = {p.name: ParamPoly.variable(p.name) * -1 for p in solution.registry if p.power % 2}
    coefficients = []
    for start, column in zip(solution.start_exponents, solution.coefficients):
        new = []
        for index, c in enumerate(column):
            c = c.substitute(flips)
            new.append(-c if (start + index) % 2 else c)
        coefficients.append(tuple(new))
    return replace(
        solution,
        coefficients=tuple(coefficients),
        fixed=tuple((name, -value if odd(name) else value) for name, value in solution.fixed),
        values=tuple((name, -value if odd(name) else value) for name, value in solution.values),
        branch_id=f"{solution.branch_id}-reversed",
    )

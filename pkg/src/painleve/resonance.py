# -*- coding: utf-8 -*-
"""
Resonances of a dominant balance and the Painlevé verdict.

Perturbing x_j -> a_j t^alpha_j + b_j t^(alpha_j + r) in the simplified system
and keeping terms linear in b gives Q(r) b = 0. det Q(r) is a polynomial in r
whose roots are the resonances; r = -1 always appears (the free pole position).
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

try:
    from ..exactnum import QuadExt
    from ..exceptions import DegenerateCandidateError, PainleveError
    from ..odemodel import PolyODESystem
    from ..settings import default_precision
    from .balance import BalanceCandidate, falling_factorial, leading_terms, monomial_power
    from .parampoly import ParamPoly
    from .upoly import Root, RootClass, UPoly, find_roots
except ImportError:
    from exactnum import QuadExt
    from exceptions import DegenerateCandidateError, PainleveError
    from odemodel import PolyODESystem
    from settings import default_precision
    from painleve.balance import BalanceCandidate, falling_factorial, leading_terms, monomial_power
    from painleve.parampoly import ParamPoly
    from painleve.upoly import Root, RootClass, UPoly, find_roots

logger = logging.getLogger(__name__)

RESONANCE_SYMBOL = "r"

Matrix = Tuple[Tuple[ParamPoly, ...], ...]


class VerdictStatus(str, Enum):
    PASSES = "PASSES"
    WEAK = "WEAK"
    FAILS = "FAILS"


@dataclass(frozen=True)
class ResonanceReport:
    candidate: BalanceCandidate
    matrix: Matrix
    determinant: UPoly
    roots: Tuple[Root, ...]
    diagnostics: Tuple[str, ...] = ()

    def positive_integer_resonances(self) -> List[int]:
        return sorted(
            int(root.value.as_fraction()) for root in self.roots
            if root.classification == RootClass.INTEGER and root.value.as_fraction() > 0
        )

    def all_integer(self) -> bool:
        return all(root.classification == RootClass.INTEGER for root in self.roots)

    def classifications(self) -> List[RootClass]:
        return [root.classification for root in self.roots]


@dataclass(frozen=True)
class PainleveVerdict:
    status: VerdictStatus
    reasons: Tuple[str, ...] = field(default_factory=tuple)


def resonance_matrix(simplified: PolyODESystem, candidate: BalanceCandidate) -> Matrix:
    """Q(r) for the candidate, entries exact polynomials in r (and in ARBITRARY leading symbols).

    Only terms of the candidate's leading power take part, so the full
    system may be passed as well.
    """
    n = len(simplified.variables)
    r = ParamPoly.variable(RESONANCE_SYMBOL)
    exponents = dict(zip(candidate.variables, candidate.exponents))
    matrix = [[ParamPoly.zero() for _ in range(n)] for _ in range(n)]
    for i, eq in enumerate(simplified.equations):
        for mono, coeff in eq.terms().items():
            if monomial_power(mono, exponents) != candidate.powers[i]:
                continue
            values = {v: candidate.jet_leading_value(simplified.index(v.name), v.order) for v, _ in mono}
            for v, e in mono:
                j = simplified.index(v.name)
                partial = ParamPoly.constant(coeff * e)
                for w, f in mono:
                    power = f - 1 if w == v else f
                    if power:
                        partial = partial * values[w] ** power
                shifted = falling_factorial(r + candidate.exponents[j], v.order)
                matrix[i][j] = matrix[i][j] + partial * shifted
    return tuple(tuple(row) for row in matrix)


def determinant(matrix: Matrix) -> ParamPoly:
    """Laplace expansion along the first row; matrices here are small."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = ParamPoly.zero()
    for j in range(n):
        if matrix[0][j].is_zero():
            continue
        minor = tuple(tuple(row[:j] + row[j + 1:]) for row in matrix[1:])
        term = matrix[0][j] * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def resonance_polynomial(det: ParamPoly) -> Tuple[UPoly, List[str]]:
    """Reduce det Q(r) to a polynomial in r, stripping monomial factors in other symbols."""
    diagnostics = []
    others = det.variables() - {RESONANCE_SYMBOL}
    reduced = det.strip_content(others)
    leftover = reduced.variables() - {RESONANCE_SYMBOL}
    if leftover:
        diagnostics.append(f"det Q(r) depends on {sorted(leftover)}; resonances given at unit value")
        reduced = reduced.substitute({name: 1 for name in leftover})
    return UPoly.from_parampoly(reduced, RESONANCE_SYMBOL), diagnostics


def resonance_roots(det: UPoly, dps: Optional[int] = None) -> List[Root]:
    """Classified roots of det Q(r) with multiplicities."""
    if det.is_zero():
        raise DegenerateCandidateError("det Q(r) vanishes identically.")
    roots = find_roots(det, dps or default_precision())
    if det(QuadExt(-1)):
        logger.warning(f"r = -1 is not a root of {det}; the balance may be spurious.")
    return roots


def analyze_candidate(system: PolyODESystem, candidate: BalanceCandidate, dps: Optional[int] = None) -> ResonanceReport:
    simplified = leading_terms(system, candidate)
    matrix = resonance_matrix(simplified, candidate)
    det, diagnostics = resonance_polynomial(determinant(matrix))
    try:
        roots = resonance_roots(det, dps)
    except DegenerateCandidateError:
        diagnostics.append("det Q(r) vanishes identically: degenerate candidate")
        roots = []
    if not det.is_zero() and det(QuadExt(-1)):
        diagnostics.append("r = -1 is not a resonance")
    logger.info(f"Resonances of {candidate.label()}: {', '.join(str(root) for root in roots)}")
    return ResonanceReport(candidate, matrix, det, tuple(roots), tuple(diagnostics))


def classify(
    system: PolyODESystem,
    candidates: Sequence[BalanceCandidate],
    reports: Optional[Sequence[ResonanceReport]] = None,
    check_compatibility: bool = True,
    dps: Optional[int] = None,
) -> PainleveVerdict:
    """Aggregate the Painlevé verdict over every candidate.

    FAILS on an irrational or complex resonance, or when a compatibility
    condition requires logarithms; WEAK when some exponent or resonance is a
    non-integer rational; PASSES otherwise.
    """
    if reports is None:
        reports = [analyze_candidate(system, c, dps) for c in candidates if c.is_resolved()]
    reasons: List[str] = []
    fails = weak = False
    for candidate in candidates:
        if not candidate.is_resolved():
            reasons.append(f"{candidate.label()}: unresolved balance ({candidate.note})")
    for report in reports:
        label = report.candidate.label()
        for diagnostic in report.diagnostics:
            reasons.append(f"{label}: {diagnostic}")
        for root in report.roots:
            if root.classification in (RootClass.IRRATIONAL, RootClass.COMPLEX):
                fails = True
                reasons.append(f"{label}: {root.classification.value.lower()} resonance r = {root}")
            elif root.classification == RootClass.RATIONAL_NONINT:
                weak = True
                reasons.append(f"{label}: non-integer rational resonance r = {root}")
        if not report.candidate.is_integer_step():
            weak = True
            fractional = [f"{v}~t^{e}" for v, e in zip(report.candidate.variables, report.candidate.exponents) if e.denominator != 1]
            reasons.append(f"{label}: fractional leading exponent {', '.join(fractional)}")
        if check_compatibility and report.candidate.is_integer_step() and report.all_integer():
            positive = report.positive_integer_resonances()
            if positive:
                failed, notes = _compatibility_check(system, report.candidate, max(positive))
                if failed:
                    fails = True
                reasons.extend(f"{label}: {message}" for message in failed + notes)
    status = VerdictStatus.FAILS if fails else VerdictStatus.WEAK if weak else VerdictStatus.PASSES
    logger.info(f"Painlevé verdict for {system.name or 'system'}: {status.value}")
    return PainleveVerdict(status, tuple(reasons))


def _compatibility_check(system: PolyODESystem, candidate: BalanceCandidate, order: int) -> Tuple[List[str], List[str]]:
    """Expand through the last positive resonance; returns (failures, notes)."""
    try:
        from .series import BranchStatus, Mode, expand
    except ImportError:
        from painleve.series import BranchStatus, Mode, expand
    failures, notes = [], []
    try:
        branches = expand(system, candidate, order, Mode.SYMBOLIC)
    except PainleveError as e:
        logger.warning(f"Compatibility check skipped for {candidate.label()}: {e}")
        return failures, [f"compatibility not checked ({e})"]
    for branch in branches:
        if branch.status == BranchStatus.LOG_REQUIRED:
            failures.append(f"compatibility condition violated at step {branch.failed_step} (logarithms required)")
        elif branch.status == BranchStatus.UNRESOLVED:
            notes.append(f"branch {branch.branch_id}: compatibility undecided ({branch.note})")
    return failures, notes

# -*- coding: utf-8 -*-
"""
Report assembly: balances, resonances, verdict, branch series, checks and the
decay table of high-order coefficients, serialized to JSON or plain text.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

try:
    from .exactnum import QuadExt, format_quadext
    from .exceptions import PainleveError, ReportError, SeriesError
    from .models import (
        AnalysisReport,
        BalanceModel,
        BranchModel,
        CheckModel,
        ConstraintModel,
        DecayRowModel,
        ParameterModel,
        ResonanceModel,
        ResonanceRootModel,
        SeriesTermModel,
        SystemEcho,
        VerdictModel,
    )
    from .odemodel import PolyODESystem
    from .painleve.balance import BalanceCandidate, BalanceList, leading_symbol
    from .painleve.resonance import PainleveVerdict, ResonanceReport
    from .painleve.series import BranchStatus, LaurentSolution, Mode, coefficient, expand
    from .settings import worker_count
    from .utils import format_scientific, parse_exact
    from .verify import residual_order
except ImportError:
    from exactnum import QuadExt, format_quadext
    from exceptions import PainleveError, ReportError, SeriesError
    from models import (
        AnalysisReport,
        BalanceModel,
        BranchModel,
        CheckModel,
        ConstraintModel,
        DecayRowModel,
        ParameterModel,
        ResonanceModel,
        ResonanceRootModel,
        SeriesTermModel,
        SystemEcho,
        VerdictModel,
    )
    from odemodel import PolyODESystem
    from painleve.balance import BalanceCandidate, BalanceList, leading_symbol
    from painleve.resonance import PainleveVerdict, ResonanceReport
    from painleve.series import BranchStatus, LaurentSolution, Mode, coefficient, expand
    from settings import worker_count
    from utils import format_scientific, parse_exact
    from verify import residual_order

logger = logging.getLogger(__name__)

DECAY_POWER = 50

# (cz1, cy4, printed cz50, printed cy50) for the branch with a1 = 25/16*sqrt(2)
REFERENCE_GRID: List[Tuple[str, str, str, str]] = [
    ("-1", "-1", "4e-12", "-1e-13"),
    ("-1", "-0.6", "4e-12", "5e-14"),
    ("-1", "-0.2", "-1e-17", "-2e-18"),
    ("-1", "0", "-1e-20", "3e-22"),
    ("-1", "0.4", "6e-15", "1e-16"),
    ("-1", "1", "6e-12", "8e-14"),
    ("-0.6", "-1", "3e-12", "-5e-14"),
    ("-0.6", "-0.6", "4e-14", "-1e-15"),
    ("-0.6", "0", "-5e-23", "9e-25"),
    ("-0.6", "0.4", "3e-15", "4e-17"),
    ("-0.6", "1", "3e-12", "2e-14"),
    ("-0.2", "-1", "1e-12", "-2e-14"),
    ("0", "-1", "-3e-14", "-1e-14"),
    ("0", "0", "-1e-44", "2e-45"),
    ("0", "0.2", "-8e-20", "-3e-20"),
    ("0", "0.4", "-2e-17", "-9e-18"),
    ("0", "0.6", "-5e-16", "-5e-16"),
    ("0", "0.8", "-5e-15", "-2e-15"),
    ("0", "1", "-3e-14", "-1e-14"),
    ("0.4", "0", "-4e-25", "-1e-26"),
    ("0.4", "0.4", "-1e-15", "2e-17"),
    ("0.4", "0.8", "-3e-13", "2e-15"),
    ("0.8", "0", "-1e-21", "-3e-23"),
    ("0.8", "0.4", "-2e-15", "2e-16"),
    ("0.8", "0.8", "-6e-13", "1e-14"),
    ("1", "1", "-4e-12", "1e-13"),
    ("20", "20", "-2.2", "0.051"),
    ("20", "40", "-603", "6.88"),
    ("40", "20", "-11.1", "0.01"),
    ("40", "40", "-1128", "24.5"),
]


# --- Model builders ---

def system_echo(system: PolyODESystem) -> SystemEcho:
    return SystemEcho(
        name=system.name,
        variables=list(system.variables),
        equations=[f"{eq.to_text()} = 0" for eq in system.equations],
        parameters={name: format_quadext(value) for name, value in system.parameters},
        substitution=list(system.substitution) if system.substitution else None,
    )


def balance_model(candidate: BalanceCandidate) -> BalanceModel:
    return BalanceModel(
        label=candidate.label(),
        exponents={v: str(e) for v, e in zip(candidate.variables, candidate.exponents)},
        leading=candidate.describe_leading(),
        status=candidate.status.value,
        note=candidate.note,
    )


def resonance_model(report: ResonanceReport) -> ResonanceModel:
    roots = [
        ResonanceRootModel(
            value=format_quadext(root.value) if root.exact else str(root.value),
            multiplicity=root.multiplicity,
            exact=root.exact,
            classification=root.classification.value,
        )
        for root in report.roots
    ]
    return ResonanceModel(
        balance=report.candidate.label(),
        determinant=str(report.determinant),
        roots=roots,
        diagnostics=list(report.diagnostics),
    )


def verdict_model(verdict: PainleveVerdict) -> VerdictModel:
    return VerdictModel(status=verdict.status.value, reasons=list(verdict.reasons))


def _terms(pairs: Iterable[Tuple[int, object]]) -> List[SeriesTermModel]:
    return [SeriesTermModel(power=p, coefficient=str(c)) for p, c in pairs]


def branch_model(
    solution: LaurentSolution,
    evaluated: Optional[Mapping[Tuple[str, int], QuadExt]] = None,
    checks: Sequence[Tuple[str, bool, str]] = (),
) -> BranchModel:
    """BranchModel of one solution; evaluated holds substituted coefficients keyed by (variable, power)."""
    fixed = dict(solution.fixed)
    a1 = fixed.get(leading_symbol(0))
    series = {var: _terms(solution.series(var)) for var in solution.variables}
    evaluated_terms: Dict[str, List[SeriesTermModel]] = {}
    if evaluated:
        for var in solution.variables:
            pairs = sorted((p, c) for (v, p), c in evaluated.items() if v == var)
            evaluated_terms[var] = _terms(pairs)
    return BranchModel(
        id=solution.branch_id,
        status=solution.status.value,
        mode=solution.mode.value,
        order=solution.order,
        a1=format_quadext(a1) if a1 is not None else None,
        series=series,
        evaluated=evaluated_terms,
        parameters=[ParameterModel(name=p.name, step=p.step, variable=p.variable, power=p.power) for p in solution.registry],
        fixed={k: format_quadext(v) for k, v in solution.fixed},
        values={k: format_quadext(v) for k, v in solution.values},
        constraints=[
            ConstraintModel(step=c.step, constraints=[str(p) for p in c.constraints], resolution=c.resolution)
            for c in solution.constraints
        ],
        checks=[CheckModel(name=n, passed=ok, detail=d) for n, ok, d in checks],
        failed_step=solution.failed_step,
        note=solution.note,
    )


def _residual_check(solution: LaurentSolution) -> Tuple[str, bool, str]:
    profile = residual_order(solution.system, solution, solution.order)
    detail = ", ".join(
        f"eq{e.equation + 1}: {'none' if e.lowest_power is None else e.lowest_power} >= {e.guaranteed}"
        for e in profile.entries
    )
    return "residual", profile.passes(), detail


def build_report(
    system: Optional[PolyODESystem] = None,
    balances: Optional[Sequence[BalanceCandidate]] = None,
    resonances: Optional[Sequence[ResonanceReport]] = None,
    verdict: Optional[PainleveVerdict] = None,
    branches: Sequence[LaurentSolution] = (),
    checks: Optional[Mapping[str, Sequence[Tuple[str, bool, str]]]] = None,
    evaluated: Optional[Mapping[str, Mapping[Tuple[str, int], QuadExt]]] = None,
    decay: Optional[List[DecayRowModel]] = None,
) -> AnalysisReport:
    """Assemble an AnalysisReport; every balance gets a resonance entry and every branch a residual check."""
    checks = dict(checks or {})
    evaluated = evaluated or {}
    resonance_models = [resonance_model(r) for r in resonances or []]
    covered = {m.balance for m in resonance_models}
    for candidate in balances or []:
        if candidate.label() not in covered:
            resonance_models.append(ResonanceModel(
                balance=candidate.label(),
                determinant="",
                diagnostics=[f"no resonance analysis: {candidate.status.value.lower()} balance"],
            ))
    branch_models = []
    for solution in branches:
        branch_checks = list(checks.get(solution.branch_id, []))
        if not any(name == "residual" for name, _, _ in branch_checks):
            try:
                branch_checks.insert(0, _residual_check(solution))
            except PainleveError as e:
                logger.warning(f"Residual check failed to run on branch {solution.branch_id}: {e}")
                branch_checks.insert(0, ("residual", False, f"not computed: {e}"))
        branch_models.append(branch_model(solution, evaluated.get(solution.branch_id), branch_checks))
    return AnalysisReport(
        system=system_echo(system) if system is not None else None,
        balances=[balance_model(c) for c in balances or []],
        balance_diagnostics=list(balances.diagnostics) if isinstance(balances, BalanceList) else [],
        resonances=resonance_models,
        verdict=verdict_model(verdict) if verdict is not None else None,
        branches=branch_models,
        decay_table=decay,
    )


# --- Decay table ---

def _grid_parameters(branch: LaurentSolution) -> Tuple[str, str]:
    names = [p.name for p in sorted(branch.registry, key=lambda p: p.step) if not p.name.startswith("a")]
    if len(names) != 2:
        raise ReportError(f"Decay tables need a branch with two free parameters, found {names}")
    return names[0], names[1]


def _decay_row(args) -> Tuple[str, str]:
    """Exact (cz50, cy50)-style coefficients for one grid point; runs in worker processes too."""
    system, candidate, fixed, names, values, power = args
    param_values = dict(fixed)
    param_values.update(zip(names, values))
    order = max(power - start for start in _starts(candidate))
    solutions = expand(system, candidate, order, Mode.EVALUATED, param_values)
    ok = [s for s in solutions if s.status == BranchStatus.OK]
    if len(ok) != 1:
        raise SeriesError(f"Expected one evaluated branch, got {len(ok)}")
    solution = ok[0]
    return tuple(format_quadext(coefficient(solution, var, power).constant_value()) for var in solution.variables)


def _starts(candidate: BalanceCandidate) -> List[int]:
    return [int(e) for e in candidate.exponents]


def decay_table(
    branch: LaurentSolution,
    grid: Optional[Sequence[Tuple[object, object]]] = None,
    power: int = DECAY_POWER,
    workers: Optional[int] = None,
) -> List[DecayRowModel]:
    """
    Coefficients of t^power in every variable across a grid of the two free parameters.

    Args:
        branch: a SYMBOLIC branch whose ARBITRARY leading coefficient is already fixed.
        grid: (first, second) parameter values in registry order; defaults to REFERENCE_GRID.
        power: power of t to report (50).
        workers: worker processes; defaults to the PAINLEVE_WORKERS setting.

    Returns:
        List[DecayRowModel]: rows in grid order.
    """
    printed: Dict[Tuple[str, str], Tuple[str, str]] = {}
    if grid is None:
        grid = [(parse_exact(a), parse_exact(b)) for a, b, _, _ in REFERENCE_GRID]
        for a, b, pz, py in REFERENCE_GRID:
            printed[(format_quadext(parse_exact(a)), format_quadext(parse_exact(b)))] = (pz, py)
    names = _grid_parameters(branch)
    fixed = {k: v for k, v in branch.fixed}
    rows = [tuple(v if isinstance(v, QuadExt) else QuadExt(v) for v in row) for row in grid]
    jobs = [(branch.system, branch.candidate, fixed, names, row, power) for row in rows]
    workers = workers if workers is not None else worker_count()
    logger.info(f"Decay table: {len(jobs)} rows at t^{power} with {workers} worker(s)")
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_decay_row, jobs))
    else:
        results = [_decay_row(job) for job in jobs]
    table = []
    for row, exact in zip(rows, results):
        key = (format_quadext(row[0]), format_quadext(row[1]))
        first, second = exact[0], exact[1]
        pz, py = printed.get(key, (None, None))
        table.append(DecayRowModel(
            cz1=key[0],
            cy4=key[1],
            cz50=first,
            cy50=second,
            cz50_display=format_scientific(parse_exact(first)),
            cy50_display=format_scientific(parse_exact(second)),
            printed_cz50=pz,
            printed_cy50=py,
        ))
        logger.debug(f"Row {key}: {table[-1].cz50_display}, {table[-1].cy50_display}")
    return table


# --- Serialization ---

def _series_line(var: str, terms: Sequence[SeriesTermModel], tail: Optional[int] = None) -> str:
    pieces = []
    for term in terms:
        text = term.coefficient
        if text == "0":
            continue
        negative = text.startswith("-") and not _is_compound(text)
        body = text[1:] if negative else text
        if _is_compound(body):
            body = f"({body})"
        if term.power != 0:
            body = f"{body}*t^{term.power}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"{'-' if negative else '+'} {body}")
    if tail is not None:
        pieces.append(f"+ O(t^{tail})")
    return f"{var} = {' '.join(pieces) if pieces else '0'}"


def _is_compound(text: str) -> bool:
    """True when a coefficient string has a top-level + or - (needs parentheses before *t^k)."""
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return True
    return False


def render_text(report: AnalysisReport) -> str:
    lines: List[str] = []
    if report.system is not None:
        lines.append(f"# system {report.system.name}".rstrip())
        lines.extend(f"  {eq}" for eq in report.system.equations)
    for balance in report.balances:
        lines.append(f"balance {balance.label}: {', '.join(f'{k}={v}' for k, v in balance.leading.items())} [{balance.status}]")
    for diagnostic in report.balance_diagnostics:
        lines.append(f"  note: {diagnostic}")
    for resonance in report.resonances:
        roots = ", ".join(
            f"{r.value}" + (f" (x{r.multiplicity})" if r.multiplicity > 1 else "") + f" [{r.classification}]"
            for r in resonance.roots
        )
        lines.append(f"resonances {resonance.balance}: {roots or 'none'}")
    if report.verdict is not None:
        lines.append(f"verdict: {report.verdict.status}")
        lines.extend(f"  - {reason}" for reason in report.verdict.reasons)
    for branch in report.branches:
        source = branch.evaluated or branch.series
        for var, terms in source.items():
            tail = terms[-1].power + 1 if terms else None
            lines.append(_series_line(var, terms, tail))
        header = f"[branch {branch.id}: {branch.status}"
        if branch.a1:
            header += f", a1 = {branch.a1}"
        if branch.parameters:
            header += f", free {', '.join(p.name for p in branch.parameters)}"
        lines.append(header + "]")
        for constraint in branch.constraints:
            lines.append(f"  step {constraint.step}: {constraint.resolution}")
        for check in branch.checks:
            lines.append(f"  check {check.name}: {'ok' if check.passed else 'FAILED'} ({check.detail})")
        if branch.note:
            lines.append(f"  note: {branch.note}")
    if report.decay_table:
        lines.append("cz1\tcy4\tcz50\tcy50")
        for row in report.decay_table:
            lines.append(f"{row.cz1}\t{row.cy4}\t{row.cz50_display}\t{row.cy50_display}")
    return "\n".join(lines) + "\n"


def serialize(report: AnalysisReport, fmt: str = "json") -> bytes:
    """JSON (by alias, schema version included) or TEXT rendering as UTF-8 bytes."""
    fmt = fmt.lower()
    if fmt == "json":
        return (report.model_dump_json(by_alias=True, indent=2) + "\n").encode("utf-8")
    if fmt == "text":
        return render_text(report).encode("utf-8")
    raise ReportError(f"Unknown report format {fmt!r}")


def parse_report(data: bytes) -> AnalysisReport:
    return AnalysisReport.model_validate_json(data)

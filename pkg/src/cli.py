# -*- coding: utf-8 -*-
"""
Command-line entry point: balance, resonances, test, series, table, verify, cases.

Exit codes: 0 success, 1 analysis-level failure (the report is still
written), 2 usage or input error.
"""

import argparse
import logging
import sys
from dataclasses import replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from pydantic import ValidationError

try:
    from .exactnum import QuadExt, parse_rational
    from .exceptions import (
        MissingParameterError,
        NumberFormatError,
        OrderTooLowError,
        PainleveError,
        SubstitutionError,
        SystemSyntaxError,
        VerificationError,
    )
    from .models import AnalysisReport, CaseModel, RunConfig
    from .odemodel import PolyODESystem, henon_heiles, known_cases, parse_system, square_substitute
    from .painleve.balance import ARBITRARY, BalanceCandidate, find_balances
    from .painleve.resonance import analyze_candidate, classify
    from .painleve.series import BranchStatus, LaurentSolution, Mode, expand, parameter_name
    from .report import build_report, decay_table, serialize
    from .settings import LOG_FORMAT, default_precision, evaluated_order, log_level, symbolic_order
    from .utils import parse_exact, parse_grid
    from .verify import ClosedFormBranch, checks_for_branch, compare_with_closed_form
except ImportError:
    from exactnum import QuadExt, parse_rational
    from exceptions import (
        MissingParameterError,
        NumberFormatError,
        OrderTooLowError,
        PainleveError,
        SubstitutionError,
        SystemSyntaxError,
        VerificationError,
    )
    from models import AnalysisReport, CaseModel, RunConfig
    from odemodel import PolyODESystem, henon_heiles, known_cases, parse_system, square_substitute
    from painleve.balance import ARBITRARY, BalanceCandidate, find_balances
    from painleve.resonance import analyze_candidate, classify
    from painleve.series import BranchStatus, LaurentSolution, Mode, expand, parameter_name
    from report import build_report, decay_table, serialize
    from settings import LOG_FORMAT, default_precision, evaluated_order, log_level, symbolic_order
    from utils import parse_exact, parse_grid
    from verify import ClosedFormBranch, checks_for_branch, compare_with_closed_form

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ANALYSIS_FAILURE = 1
EXIT_USAGE = 2

# Parameter values that turn the lambda = 1/9 branches into the closed-form solutions
CLOSED_FORM_CZ1 = "3205/3981312*sqrt(2)"
CLOSED_FORM_CY4 = "-858455/12039487488"
CLOSED_FORM_A1 = "25/16*sqrt(2)"

# Checks whose failure makes the series command exit with 1
REQUIRED_CHECKS = ("residual", "energy")


class UsageError(Exception):
    pass


# --- Argument parsing ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="painleve-lab", description="Painlevé test and Laurent-series solutions of polynomial ODE systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, system: bool = True) -> None:
        if system:
            source = p.add_mutually_exclusive_group()
            source.add_argument("--builtin", choices=["hh", "hh-z"], help="hh: Hénon-Heiles in x, y; hh-z: the same with z = x^2.")
            source.add_argument("--file", help="System file ('-' reads stdin).")
            p.add_argument("--lambda", dest="lam", default="1/9", help="lambda (exact rational, default 1/9).")
            p.add_argument("--C", dest="C", default="-16/5", help="C (exact rational, default -16/5).")
        p.add_argument("--format", choices=["json", "text"], default="text")

    def precision(p: argparse.ArgumentParser) -> None:
        p.add_argument("--precision", type=int, default=None, help="BigFloat digits (default from PAINLEVE_PRECISION).")

    p = sub.add_parser("balance", help="Dominant balances.")
    common(p)
    p.add_argument("--range", dest="exponent_range", default=None, help="Exponent search range LOW:HIGH (default -5:-1/2).")
    p = sub.add_parser("resonances", help="Resonances of every balance.")
    common(p)
    precision(p)
    p = sub.add_parser("test", help="Full Painlevé verdict.")
    common(p)
    precision(p)
    p = sub.add_parser("series", help="Laurent-series branches with checks.")
    common(p)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--mode", choices=["SYMBOLIC", "EVALUATED"], default=None)
    p.add_argument("--params", default=None, help="Parameter values, e.g. cz1=0,cy4=-1/2.")
    p = sub.add_parser("table", help="Decay table of t^50 coefficients over a parameter grid.")
    common(p)
    p.add_argument("--grid", default=None, help="Rows 'cz1:cy4;...' (default: the reference grid).")
    p.add_argument("--branch", default="1", help="Branch id whose leading coefficient is used.")
    p = sub.add_parser("verify", help="Compare the lambda = 1/9 branches with the closed-form solutions.")
    common(p)
    precision(p)
    p.add_argument("--order", type=int, default=None)
    p = sub.add_parser("cases", help="Catalogue of integrable and studied parameter points.")
    common(p, system=False)
    precision(p)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    data = {
        "command": args.command,
        "format": args.format,
        "precision": default_precision() if getattr(args, "precision", None) is None else args.precision,
    }
    for key in ("builtin", "file", "order", "mode", "params", "grid"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    if hasattr(args, "lam"):
        data["lambda"] = args.lam
        data["C"] = args.C
    if getattr(args, "exponent_range", None):
        data["exponent_range"] = args.exponent_range.split(":")
    return RunConfig(**data)


# --- Pipeline pieces ---

def load_system(config: RunConfig) -> PolyODESystem:
    if config.file is not None:
        if config.file == "-":
            text = sys.stdin.read()
        else:
            with open(config.file, encoding="utf-8") as handle:
                text = handle.read()
        return parse_system(text, name=config.file if config.file != "-" else "stdin")
    base = henon_heiles(parse_rational(config.lam), parse_rational(config.C))
    if config.builtin == "hh-z":
        return square_substitute(base, "x", "z")
    return base


def _balances(system: PolyODESystem, config: RunConfig):
    if config.exponent_range:
        low, high = (parse_rational(v) for v in config.exponent_range)
        return find_balances(system, (low, high))
    return find_balances(system)


def default_candidates(balances: Sequence[BalanceCandidate]) -> List[BalanceCandidate]:
    """Balances with an ARBITRARY leading coefficient, else every resolved integer-step balance."""
    usable = [c for c in balances if c.is_resolved() and c.is_integer_step()]
    arbitrary = [c for c in usable if any(v is ARBITRARY for v in c.leading)]
    return arbitrary or usable


def expected_parameter_names(system: PolyODESystem, candidate: BalanceCandidate) -> set:
    """Names a free parameter of this candidate can take."""
    report = analyze_candidate(system, candidate)
    names = set(candidate.arbitrary_symbols())
    for r in report.positive_integer_resonances():
        for var, start in zip(candidate.variables, candidate.exponents):
            names.add(parameter_name(var, int(start) + r))
    return names


def _values(config: RunConfig) -> Dict[str, QuadExt]:
    return {k: parse_exact(v) for k, v in config.params.items()}


def _emit(report: AnalysisReport, config: RunConfig) -> None:
    sys.stdout.buffer.write(serialize(report, config.format))
    sys.stdout.flush()


# --- Commands ---

def cmd_balance(config: RunConfig) -> int:
    system = load_system(config)
    balances = _balances(system, config)
    _emit(build_report(system, balances), config)
    return EXIT_OK


def cmd_resonances(config: RunConfig) -> int:
    system = load_system(config)
    balances = _balances(system, config)
    reports = [analyze_candidate(system, c, config.precision) for c in balances if c.is_resolved()]
    _emit(build_report(system, balances, reports), config)
    return EXIT_OK


def cmd_test(config: RunConfig) -> int:
    system = load_system(config)
    balances = _balances(system, config)
    reports = [analyze_candidate(system, c, config.precision) for c in balances if c.is_resolved()]
    verdict = classify(system, balances, reports, dps=config.precision)
    _emit(build_report(system, balances, reports, verdict), config)
    return EXIT_OK


def cmd_series(config: RunConfig) -> int:
    system = load_system(config)
    balances = _balances(system, config)
    candidates = default_candidates(balances)
    if not candidates:
        logger.warning("No resolved integer-step balance; square a half-integer variable first (--builtin hh-z).")
        _emit(build_report(system, balances), config)
        return EXIT_ANALYSIS_FAILURE
    mode = Mode(config.mode)
    order = config.order or (evaluated_order() if mode == Mode.EVALUATED else symbolic_order())
    values = _values(config)
    expected = set().union(*(expected_parameter_names(system, c) for c in candidates))
    unknown = sorted(set(values) - expected)
    if unknown:
        raise UsageError(f"Unknown parameter(s) {', '.join(unknown)}; this system has {', '.join(sorted(expected))}")
    branches: List[LaurentSolution] = []
    for candidate in candidates:
        branches.extend(expand(system, candidate, order, mode, values))
    checks = {}
    failed = not any(b.status == BranchStatus.OK for b in branches)
    for branch in branches:
        if branch.status != BranchStatus.OK or mode != Mode.EVALUATED:
            continue
        results = checks_for_branch(branch, None, order)
        checks[branch.branch_id] = results
        if any(not ok for name, ok, _ in results if name in REQUIRED_CHECKS):
            failed = True
    _emit(build_report(system, balances, branches=branches, checks=checks), config)
    return EXIT_ANALYSIS_FAILURE if failed else EXIT_OK


def _branch_by_id(branches: Sequence[LaurentSolution], branch_id: str) -> LaurentSolution:
    for branch in branches:
        if branch.branch_id == branch_id:
            return branch
    raise UsageError(f"No branch {branch_id!r}; available: {', '.join(b.branch_id for b in branches)}")


def cmd_table(config: RunConfig, branch_id: str = "1") -> int:
    system = load_system(config)
    candidates = default_candidates(find_balances(system))
    if not candidates:
        raise UsageError("The decay table needs an integer-step balance (use --builtin hh-z).")
    candidate = candidates[0]
    report = analyze_candidate(system, candidate)
    order = max(report.positive_integer_resonances() or [1])
    branches = expand(system, candidate, order, Mode.SYMBOLIC)
    branch = _branch_by_id(branches, branch_id)
    grid = parse_grid(config.grid) if config.grid else None
    rows = decay_table(branch, grid)
    _emit(build_report(system, decay=rows), config)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    if parse_rational(config.lam) != Fraction(1, 9) or parse_rational(config.C) != Fraction(-16, 5):
        raise UsageError("Closed-form solutions exist for lambda = 1/9, C = -16/5 only.")
    system = square_substitute(henon_heiles(Fraction(1, 9), Fraction(-16, 5)), "x", "z")
    candidates = [c for c in default_candidates(find_balances(system)) if c.arbitrary_symbols()]
    if not candidates:
        raise VerificationError("No balance with an arbitrary leading coefficient in the squared system.")
    candidate = candidates[0]
    order = config.order or evaluated_order()
    a1_name = candidate.arbitrary_symbols()[0]
    z_var = system.substitution[1]
    z_start = int(candidate.exponent(z_var))
    cz1_name = parameter_name(z_var, z_start + 4)
    cy4_name = parameter_name([v for v in system.variables if v != z_var][0], 4)
    branches, checks, evaluated_ok = [], {}, True
    for sign in (1, -1):
        values = {
            a1_name: parse_exact(CLOSED_FORM_A1) * sign,
            cz1_name: parse_exact(CLOSED_FORM_CZ1) * sign,
            cy4_name: parse_exact(CLOSED_FORM_CY4),
        }
        # z starts at t^-3, so t^order of both series needs order + 3 steps
        expanded = expand(system, candidate, order - z_start, Mode.EVALUATED, values)
        solutions = [s for s in expanded if s.status == BranchStatus.OK]
        if len(solutions) != 1:
            raise VerificationError(f"Expected one evaluated branch for sign {sign:+d}, got {len(solutions)}")
        solution = solutions[0]
        solution = replace(solution, branch_id=f"{solution.branch_id}{'+' if sign > 0 else '-'}")
        comparison = compare_with_closed_form(solution, {}, ClosedFormBranch(sign, config.precision), order)
        results = checks_for_branch(solution, None, order)
        results.append((
            "closed form",
            comparison.agrees,
            f"max relative error {float(comparison.max_relative_error):.3e} at {comparison.worst}",
        ))
        evaluated_ok = evaluated_ok and all(ok for _, ok, _ in results)
        checks[solution.branch_id] = results
        branches.append(solution)
    _emit(build_report(system, branches=branches, checks=checks), config)
    return EXIT_OK if evaluated_ok else EXIT_ANALYSIS_FAILURE


def cmd_cases(config: RunConfig) -> int:
    cases = []
    agree = True
    for case in known_cases():
        system = case.system()
        balances = find_balances(system)
        verdict = classify(system, balances, dps=config.precision)
        ok = verdict.status.value == case.expected
        agree = agree and ok
        cases.append(CaseModel(
            label=case.label,
            lam=str(case.lam),
            C=str(case.C),
            expected=case.expected,
            verdict=verdict.status.value,
            agrees=ok,
            note=case.note,
            reasons=list(verdict.reasons),
        ))
        logger.info(f"{case.label}: expected {case.expected}, got {verdict.status.value}")
    _emit(AnalysisReport(cases=cases), config)
    return EXIT_OK if agree else EXIT_ANALYSIS_FAILURE


# --- Entry point ---

def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run the subcommand and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        config = _config(args)
    except (ValidationError, NumberFormatError) as e:
        sys.stderr.write(f"painleve-lab: invalid options: {e}\n")
        return EXIT_USAGE
    commands = {
        "balance": cmd_balance,
        "resonances": cmd_resonances,
        "test": cmd_test,
        "series": cmd_series,
        "table": lambda c: cmd_table(c, args.branch),
        "verify": cmd_verify,
        "cases": cmd_cases,
    }
    try:
        return commands[config.command](config)
    except (UsageError, SystemSyntaxError, SubstitutionError, NumberFormatError, MissingParameterError, OrderTooLowError, OSError) as e:
        logger.error(f"Usage error: {e}", exc_info=True)
        sys.stderr.write(f"painleve-lab: {e}\n")
        return EXIT_USAGE
    except PainleveError as e:
        logger.error(f"Analysis error: {e}", exc_info=True)
        sys.stderr.write(f"painleve-lab: {e}\n")
        return EXIT_ANALYSIS_FAILURE
    except Exception as e:
        logger.error(f"Unexpected error while running {config.command}: {e}", exc_info=True)
        sys.stderr.write(f"painleve-lab: internal error: {e}\n")
        return EXIT_ANALYSIS_FAILURE


def main() -> None:
    logging.basicConfig(level=log_level(), format=LOG_FORMAT, stream=sys.stderr)
    sys.exit(run())


if __name__ == "__main__":
    main()

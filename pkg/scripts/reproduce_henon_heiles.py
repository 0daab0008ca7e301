# -*- coding: utf-8 -*-
"""
Script to reproduce the full analysis of the Hénon-Heiles system at
lambda = 1/9, C = -16/5.

Runs balances, resonances and the verdict on the system in x, y, expands the
squared system to order 50 on the closed-form parameters, runs every check,
computes the decay table and writes the JSON report to data/.
"""

import os
import sys
import logging
from dataclasses import replace
from fractions import Fraction

# --- Setup Project Root Path ---
# This allows the script to find the 'src' module when run from the 'scripts' directory
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

try:
    from src.exceptions import PainleveError
    from src.odemodel import henon_heiles, square_substitute
    from src.painleve.balance import find_balances
    from src.painleve.resonance import analyze_candidate, classify
    from src.painleve.series import BranchStatus, Mode, expand
    from src.report import build_report, decay_table, serialize
    from src.settings import LOG_FORMAT, evaluated_order
    from src.utils import parse_exact
    from src.verify import ClosedFormBranch, checks_for_branch, compare_with_closed_form
except ImportError as e:
    print(f"Error: Could not import from src. Make sure the script is run correctly relative to the project root or PYTHONPATH is set. Details: {e}")
    sys.exit(1)

# --- Configuration ---
logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

LAMBDA = Fraction(1, 9)
C = Fraction(-16, 5)
OUTPUT_PATH = os.path.join(project_root, "data", "henon_heiles_lambda_1_9.json")
CLOSED_FORM = {"cz1": "3205/3981312*sqrt(2)", "cy4": "-858455/12039487488"}


def main() -> int:
    system = henon_heiles(LAMBDA, C)
    balances = find_balances(system)
    reports = [analyze_candidate(system, c) for c in balances if c.is_resolved()]
    verdict = classify(system, balances, reports)
    logger.info(f"Verdict for lambda={LAMBDA}, C={C}: {verdict.status.value}")

    squared = square_substitute(system, "x", "z")
    squared_balances = find_balances(squared)
    candidate = next(c for c in squared_balances if c.arbitrary_symbols())
    order = evaluated_order()

    branches, checks = [], {}
    for sign in (1, -1):
        values = {
            "a1": parse_exact("25/16*sqrt(2)") * sign,
            "cz1": parse_exact(CLOSED_FORM["cz1"]) * sign,
            "cy4": parse_exact(CLOSED_FORM["cy4"]),
        }
        solution = next(s for s in expand(squared, candidate, order, Mode.EVALUATED, values) if s.status == BranchStatus.OK)
        solution = replace(solution, branch_id=f"{solution.branch_id}{'+' if sign > 0 else '-'}")
        results = checks_for_branch(solution, None, order)
        comparison = compare_with_closed_form(solution, {}, ClosedFormBranch(sign), order - 3)
        results.append(("closed form", comparison.agrees, f"max relative error {float(comparison.max_relative_error):.3e}"))
        checks[solution.branch_id] = results
        branches.append(solution)
        logger.info(f"Sign {sign:+d}: {sum(ok for _, ok, _ in results)}/{len(results)} checks passed")

    symbolic = expand(squared, candidate, 6, Mode.SYMBOLIC)
    rows = decay_table(symbolic[0])

    report = build_report(system, balances, reports, verdict, branches, checks, decay=rows)
    os.makedirs(os.path.dirname(OUTPUT_PATH), exist_ok=True)
    with open(OUTPUT_PATH, "wb") as handle:
        handle.write(serialize(report, "json"))
    logger.info(f"Report written to {OUTPUT_PATH}")
    return 0


if __name__ == "__main__":
    try:
        sys.exit(main())
    except PainleveError as e:
        logger.error(f"Analysis failed: {e}", exc_info=True)
        sys.exit(1)
    except Exception as e:
        logger.error(f"An unexpected error occurred: {e}", exc_info=True)
        sys.exit(1)

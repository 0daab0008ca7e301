# -*- coding: utf-8 -*-
"""
Painlevé analysis package.

The three stages of the test live in separate modules: balance (dominant
behaviours), resonance (Kovalevskaya exponents and the verdict) and series
(Laurent expansions with compatibility conditions). This __init__ exposes
their primary functions for easier access.
"""

import logging

logger = logging.getLogger(__name__)

# From balance.py
try:
    from .balance import (
        ARBITRARY,
        BalanceCandidate,
        BalanceStatus,
        find_balances,
        leading_terms,
    )
except ImportError as e:
    logger.warning(f"Could not import from .balance: {e}")

# From resonance.py
try:
    from .resonance import (
        PainleveVerdict,
        ResonanceReport,
        VerdictStatus,
        analyze_candidate,
        classify,
        resonance_matrix,
        resonance_roots,
    )
except ImportError as e:
    logger.warning(f"Could not import from .resonance: {e}")

# From series.py
try:
    from .series import (
        BranchStatus,
        LaurentSolution,
        Mode,
        coefficient,
        compatibility_system,
        evaluate_coefficients,
        expand,
        solution_in_progress,
        time_reversed,
    )
except ImportError as e:
    logger.warning(f"Could not import from .series: {e}")

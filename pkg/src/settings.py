# -*- coding: utf-8 -*-
"""
Runtime configuration read from the environment (and a local .env file).
"""

import logging
import os

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

load_dotenv()

MIN_PRECISION = 32
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def _int_setting(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}; using {default}.")
        return default
    if value < minimum:
        logger.warning(f"{name}={value} is below the minimum {minimum}; using {default}.")
        return default
    return value


def default_precision() -> int:
    """Decimal digits used for BigFloat work unless a caller overrides it."""
    return _int_setting("PAINLEVE_PRECISION", 128, MIN_PRECISION)


def trial_division_bound() -> int:
    return _int_setting("PAINLEVE_TRIAL_DIVISION_BOUND", 10**6)


def worker_count() -> int:
    return _int_setting("PAINLEVE_WORKERS", 1)


def symbolic_order() -> int:
    return _int_setting("PAINLEVE_SYMBOLIC_ORDER", 20)


def evaluated_order() -> int:
    return _int_setting("PAINLEVE_EVALUATED_ORDER", 50)


def log_level(default: str = "WARNING") -> int:
    name = os.getenv("PAINLEVE_LOG_LEVEL", default).upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.WARNING

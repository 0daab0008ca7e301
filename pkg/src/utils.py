# -*- coding: utf-8 -*-
"""
String helpers for the command line and the reports.
Parses parameter assignments ("cz1=0,cy4=-1/2") and (cz1, cy4) grids with
regex patterns, and renders exact values in the short scientific notation of
the decay tables.
"""

import re
import logging
from fractions import Fraction
from typing import Dict, List, Tuple

import mpmath

try:
    from .exactnum import QuadExt, parse_quadext
    from .exceptions import NumberFormatError
except ImportError:
    from exactnum import QuadExt, parse_quadext
    from exceptions import NumberFormatError

logger = logging.getLogger(__name__)

# --- Patterns ---

# Parameter names: c<var><power>, c<var>m<power> or leading symbols a<k>
PARAMETER_NAME_PATTERN = r'(?:c[A-Za-z_][A-Za-z_0-9]*?m?\d+|a\d+)'

# One "name=value" item; the value is anything up to the next comma
ASSIGNMENT_PATTERN = re.compile(rf'^\s*(?P<name>{PARAMETER_NAME_PATTERN})\s*=\s*(?P<value>[^,=]+?)\s*$')

# Grid rows "cz1:cy4", separated by ';'
GRID_ROW_PATTERN = re.compile(r'^\s*(?P<first>[^:;]+?)\s*:\s*(?P<second>[^:;]+?)\s*$')


# --- Parsing ---

def parse_exact(text: str) -> QuadExt:
    """Decimal, rational or quadratic-surd text -> QuadExt ('0.4' -> 2/5)."""
    return parse_quadext(text)


def parse_param_assignments(text: str) -> Dict[str, QuadExt]:
    """
    Parses "cz1=0, cy4=-858455/12039487488" into exact values.

    Args:
        text (str): Comma separated name=value items; empty text gives {}.

    Returns:
        Dict[str, QuadExt]: The parameter values by name.
    """
    values: Dict[str, QuadExt] = {}
    if not text or not text.strip():
        return values
    # sqrt(...) may not contain commas, so a plain split is enough
    for item in text.split(','):
        match = ASSIGNMENT_PATTERN.match(item)
        if not match:
            raise NumberFormatError(f"Bad parameter assignment {item.strip()!r}; expected name=value")
        name = match.group("name")
        if name in values:
            logger.warning(f"Parameter {name} given twice; keeping the last value.")
        values[name] = parse_exact(match.group("value"))
    logger.debug(f"Parsed parameters: {', '.join(f'{k}={v}' for k, v in values.items())}")
    return values


def parse_grid(text: str) -> List[Tuple[QuadExt, QuadExt]]:
    """Parses "0:0; -1:-1; 0.4:0.8" into (cz1, cy4) pairs, keeping the order."""
    rows = []
    for chunk in text.split(';'):
        if not chunk.strip():
            continue
        match = GRID_ROW_PATTERN.match(chunk)
        if not match:
            raise NumberFormatError(f"Bad grid row {chunk.strip()!r}; expected cz1:cy4")
        rows.append((parse_exact(match.group("first")), parse_exact(match.group("second"))))
    if not rows:
        raise NumberFormatError("Empty grid")
    return rows


# --- Display ---

def format_scientific(value, digits: int = 2) -> str:
    """Short scientific rendering of an exact or BigFloat value: '-1e-44', '4.2e-12', '-2.2', '0'."""
    if isinstance(value, (int, Fraction)):
        value = QuadExt(value)
    if isinstance(value, QuadExt):
        if not value:
            return "0"
        # enough digits to survive the cancellation inside a + b*sqrt(q)
        value = value.to_bigfloat(60)
    if value == 0:
        return "0"
    text = mpmath.nstr(value, digits, min_fixed=-1, max_fixed=2)
    # 4.0e-12 -> 4e-12, 2.20 -> 2.2
    mantissa, _, exponent = text.partition('e')
    if '.' in mantissa:
        mantissa = mantissa.rstrip('0').rstrip('.')
    if exponent:
        exponent = str(int(exponent))
        return f"{mantissa}e{exponent}"
    return mantissa


def leading_digit_and_exponent(value) -> Tuple[int, int]:
    """(first significant digit with sign, decimal exponent) after rounding to one figure: 4.2e-12 -> (4, -12)."""
    if isinstance(value, (int, Fraction)):
        value = QuadExt(value)
    if isinstance(value, QuadExt):
        value = value.to_bigfloat(60)
    if value == 0:
        return 0, 0
    # min_fixed > max_fixed forces the 'd.de+x' form
    text = mpmath.nstr(mpmath.mpf(value), 1, min_fixed=1, max_fixed=0)
    mantissa, _, exponent = text.partition('e')
    digit = int(mantissa.lstrip('-')[0])
    return (-digit if mantissa.startswith('-') else digit), int(exponent or 0)


def same_order_of_magnitude(value, printed: str, tolerance: int = 1) -> bool:
    """True when value and the printed figure share sign and exponent, first digits within tolerance."""
    d1, e1 = leading_digit_and_exponent(value)
    d2, e2 = leading_digit_and_exponent(mpmath.mpf(printed))
    if d1 == 0 or d2 == 0:
        return d1 == d2
    return e1 == e2 and (d1 > 0) == (d2 > 0) and abs(d1 - d2) <= tolerance

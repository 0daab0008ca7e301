# -*- coding: utf-8 -*-
"""
Exact numbers for the Painlevé engine.

* BigRational is fractions.Fraction (arbitrary-size numerator/denominator,
  always reduced, zero is 0/1).
* QuadExt is a + b*sqrt(q) with rational a, b and a square-free integer
  radicand q (negative q encodes imaginary radicals). A value with b == 0 is
  rational and carries the marker radicand 1; rationals combine with any
  radicand, two different non-trivial radicands raise FieldTowerError.
* BigFloat is mpmath's mpf, evaluated at a configurable decimal precision.

String forms used in reports: "-1819/663552", "25/16*sqrt(2)",
"1/2 - 3/4*sqrt(-7)".
"""

import logging
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple, Union

import mpmath
from sympy import factorint, isprime
from sympy.ntheory import pollard_rho

try:
    from .exceptions import ExactZeroDivisionError, FieldTowerError, NumberFormatError
    from .settings import default_precision, trial_division_bound
except ImportError:
    from exceptions import ExactZeroDivisionError, FieldTowerError, NumberFormatError
    from settings import default_precision, trial_division_bound

logger = logging.getLogger(__name__)

BigRational = Fraction
BigFloat = mpmath.mpf

RationalLike = Union[int, Fraction]

# --- Square-free cores ---

def _factor(m: int) -> Dict[int, int]:
    """Trial division up to the configured bound, then Pollard rho on what is left.

    A residue that resists rho stays in the result as a single (possibly
    composite) base.
    """
    bound = trial_division_bound()
    result: Dict[int, int] = {}
    pending = list(factorint(m, limit=bound).items())
    while pending:
        base, exp = pending.pop()
        if base <= bound or isprime(base):
            result[base] = result.get(base, 0) + exp
            continue
        divisor = pollard_rho(base, retries=8)
        if not divisor or divisor in (1, base):
            logger.debug(f"Keeping unfactored residue {base} inside the radicand.")
            result[base] = result.get(base, 0) + exp
            continue
        pending.append((divisor, exp))
        pending.append((base // divisor, exp))
    return result


@lru_cache(maxsize=4096)
def square_free_core(n: int) -> Tuple[int, int]:
    """Split n = k**2 * core with core square-free; the sign of n stays in core."""
    if n == 0:
        return 0, 0
    k, core = 1, 1
    for base, exp in _factor(abs(n)).items():
        k *= base ** (exp // 2)
        if exp % 2:
            core *= base
    return k, (core if n > 0 else -core)


def rational_sqrt(s: RationalLike) -> "QuadExt":
    """Exact square root of a rational as a QuadExt (radicand = square-free core of s)."""
    s = Fraction(s)
    if s == 0:
        return QuadExt(0)
    k_num, c_num = square_free_core(abs(s.numerator))
    k_den, c_den = square_free_core(s.denominator)
    radicand = c_num * c_den
    if s < 0:
        radicand = -radicand
    coefficient = Fraction(k_num, k_den * c_den)
    if radicand == 1:
        return QuadExt(coefficient)
    return QuadExt._raw(Fraction(0), coefficient, radicand)


# --- QuadExt ---

class QuadExt:
    """An element a + b*sqrt(q) of a single quadratic extension of the rationals."""

    __slots__ = ("_a", "_b", "_q")

    def __init__(self, rational_part: RationalLike = 0, radical_part: RationalLike = 0, radicand: RationalLike = 1):
        a = Fraction(rational_part)
        b = Fraction(radical_part)
        q = Fraction(radicand)
        if b != 0 and q != 1:
            if q == 0:
                b = Fraction(0)
            else:
                # sqrt(r/s) = sqrt(r*s)/s, then pull the square part out
                k, core = square_free_core(q.numerator * q.denominator)
                b = b * k / q.denominator
                if core == 1:
                    a, b = a + b, Fraction(0)
                q = Fraction(core)
        elif q == 1:
            a, b = a + b, Fraction(0)
        self._a = a
        self._b = b
        self._q = int(q) if b != 0 else 1

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, q: int) -> "QuadExt":
        value = cls.__new__(cls)
        value._a = a
        value._b = b
        value._q = q if b != 0 else 1
        return value

    # --- accessors ---
    @property
    def rational_part(self) -> Fraction:
        return self._a

    @property
    def radical_part(self) -> Fraction:
        return self._b

    @property
    def radicand(self) -> int:
        return self._q

    def is_rational(self) -> bool:
        return self._b == 0

    def is_integer(self) -> bool:
        return self._b == 0 and self._a.denominator == 1

    def is_real(self) -> bool:
        return self._b == 0 or self._q > 0

    def as_fraction(self) -> Fraction:
        if self._b != 0:
            raise ValueError(f"{self} is not rational.")
        return self._a

    # --- field structure ---
    @staticmethod
    def _coerce(other) -> Optional["QuadExt"]:
        if isinstance(other, QuadExt):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt._raw(Fraction(other), Fraction(0), 1)
        return None

    def _join(self, other: "QuadExt") -> int:
        if other._b == 0:
            return self._q
        if self._b == 0 or self._q == other._q:
            return other._q
        raise FieldTowerError(self._q, other._q)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        q = self._join(o)
        return QuadExt._raw(self._a + o._a, self._b + o._b, q)

    __radd__ = __add__

    def __neg__(self) -> "QuadExt":
        return QuadExt._raw(-self._a, -self._b, self._q)

    def __pos__(self) -> "QuadExt":
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        q = self._join(o)
        return QuadExt._raw(self._a - o._a, self._b - o._b, q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o._b == 0:
            return QuadExt._raw(self._a * o._a, self._b * o._a, self._q)
        if self._b == 0:
            return QuadExt._raw(self._a * o._a, self._a * o._b, o._q)
        q = self._join(o)
        return QuadExt._raw(
            self._a * o._a + q * self._b * o._b,
            self._a * o._b + self._b * o._a,
            q,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        """Galois conjugate a - b*sqrt(q)."""
        return QuadExt._raw(self._a, -self._b, self._q)

    def norm(self) -> Fraction:
        return self._a * self._a - self._q * self._b * self._b

    def inverse(self) -> "QuadExt":
        if not self:
            raise ExactZeroDivisionError("Division by an exact zero.")
        if self._b == 0:
            return QuadExt._raw(1 / self._a, Fraction(0), 1)
        n = self.norm()
        return QuadExt._raw(self._a / n, -self._b / n, self._q)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o._b == 0:
            if o._a == 0:
                raise ExactZeroDivisionError("Division by an exact zero.")
            return QuadExt._raw(self._a / o._a, self._b / o._a, self._q)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> "QuadExt":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QuadExt._raw(Fraction(1), Fraction(0), 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # --- comparison ---
    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._b == 0 and o._b == 0:
            return self._a == o._a
        return self._a == o._a and self._b == o._b and self._q == o._q

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b, self._q))

    def sign(self) -> int:
        """Sign of a real value, decided exactly."""
        if not self.is_real():
            raise ValueError(f"{self} is not real.")
        if self._b == 0:
            return (self._a > 0) - (self._a < 0)
        sa = (self._a > 0) - (self._a < 0)
        sb = (self._b > 0) - (self._b < 0)
        if sa == 0 or sa == sb:
            return sb
        # a and b*sqrt(q) have opposite signs: the larger square wins
        return sa if self._a * self._a > self._q * self._b * self._b else sb

    # --- numeric views ---
    def to_bigfloat(self, dps: Optional[int] = None):
        """mpf (or mpc for a negative radicand) at dps decimal digits."""
        with mpmath.workdps(dps or default_precision()):
            a = mpmath.mpf(self._a.numerator) / self._a.denominator
            if self._b == 0:
                return +a
            b = mpmath.mpf(self._b.numerator) / self._b.denominator
            return a + b * mpmath.sqrt(self._q)

    def __str__(self) -> str:
        return format_quadext(self)

    def __repr__(self) -> str:
        return f"QuadExt('{self}')"


# --- String forms ---

_RATIONAL_TOKEN = r"\d+(?:\.\d+)?(?:/\d+)?"
QUADEXT_PATTERN = re.compile(
    rf"""^\s*
    (?P<a>[+-]?\s*{_RATIONAL_TOKEN}(?![\d./]|\s*\*))?
    \s*
    (?:
        (?P<sign>[+-])?\s*
        (?:(?P<b>{_RATIONAL_TOKEN})\s*\*\s*)?
        sqrt\(\s*(?P<q>-?{_RATIONAL_TOKEN})\s*\)
    )?
    \s*$""",
    re.VERBOSE,
)


def parse_rational(text: str) -> Fraction:
    """'-1819/663552', '3', '0.4' -> Fraction."""
    try:
        return Fraction(text.strip().replace(" ", ""))
    except (ValueError, ZeroDivisionError) as e:
        raise NumberFormatError(f"Not a rational number: {text!r}") from e


def parse_quadext(text: str) -> QuadExt:
    """Inverse of format_quadext; also accepts plain rationals."""
    match = QUADEXT_PATTERN.match(text)
    if not match or (match.group("a") is None and match.group("q") is None):
        raise NumberFormatError(f"Not an exact number: {text!r}")
    a = parse_rational(match.group("a")) if match.group("a") else Fraction(0)
    if match.group("q") is None:
        return QuadExt(a)
    b = parse_rational(match.group("b")) if match.group("b") else Fraction(1)
    if match.group("sign") == "-":
        b = -b
    elif match.group("sign") is None and match.group("a") is not None:
        raise NumberFormatError(f"Missing operator between terms in {text!r}")
    root = rational_sqrt(parse_rational(match.group("q")))
    return QuadExt(a) + root * b


def format_quadext(value: QuadExt) -> str:
    a, b, q = value.rational_part, value.radical_part, value.radicand
    if b == 0:
        return str(a)
    if abs(b) == 1:
        radical = f"sqrt({q})"
    else:
        radical = f"{abs(b)}*sqrt({q})"
    if a == 0:
        return radical if b > 0 else f"-{radical}"
    return f"{a} {'+' if b > 0 else '-'} {radical}"


def to_bigfloat(value: Union[QuadExt, RationalLike], dps: Optional[int] = None):
    """Numeric view of any exact scalar."""
    return QuadExt._coerce(value).to_bigfloat(dps)


def exact_sort_key(value: QuadExt) -> Tuple:
    """Canonical order of exact roots: real before imaginary radicands, then |radicand|, then positive first."""
    return (value.radicand < 0, abs(value.radicand), value.radical_part < 0, abs(value.radical_part), value.rational_part)

# -*- coding: utf-8 -*-
"""
Univariate polynomials over QuadExt and their classified roots.

Roots are extracted exactly whenever possible:
1. square-free decomposition (gcd with the derivative) gives multiplicities;
2. each square-free part, or its norm f*conj(f) when the coefficients are
   irrational, is factored over Q with sympy; linear factors give rational
   roots and quadratic factors give roots in a single quadratic extension;
3. whatever is left is solved with mpmath.polyroots and flagged numeric.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import mpmath
import sympy

try:
    from ..exactnum import QuadExt, exact_sort_key, format_quadext, rational_sqrt
    from ..exceptions import ExactZeroDivisionError, FieldTowerError
    from ..settings import default_precision
except ImportError:
    from exactnum import QuadExt, exact_sort_key, format_quadext, rational_sqrt
    from exceptions import ExactZeroDivisionError, FieldTowerError
    from settings import default_precision

logger = logging.getLogger(__name__)


class RootClass(str, Enum):
    INTEGER = "INTEGER"
    RATIONAL_NONINT = "RATIONAL_NONINT"
    IRRATIONAL = "IRRATIONAL"
    COMPLEX = "COMPLEX"


@dataclass(frozen=True)
class Root:
    """A root with its multiplicity; value is a QuadExt when exact, an mpf/mpc otherwise."""
    value: Union[QuadExt, mpmath.mpf, mpmath.mpc]
    multiplicity: int
    exact: bool
    classification: RootClass

    def __str__(self) -> str:
        if self.exact:
            return format_quadext(self.value)
        return mpmath.nstr(self.value, 20)


def classify_exact(value: QuadExt) -> RootClass:
    if value.is_integer():
        return RootClass.INTEGER
    if value.is_rational():
        return RootClass.RATIONAL_NONINT
    return RootClass.IRRATIONAL if value.is_real() else RootClass.COMPLEX


class UPoly:
    """Dense polynomial, coefficients stored lowest degree first, no trailing zeros."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Sequence, var: str = "r"):
        values = [c if isinstance(c, QuadExt) else QuadExt(c) for c in coeffs]
        while values and not values[-1]:
            values.pop()
        self.coeffs: Tuple[QuadExt, ...] = tuple(values)
        self.var = var

    @classmethod
    def from_parampoly(cls, poly, var: str = "r") -> "UPoly":
        return cls(poly.as_univariate(var), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> QuadExt:
        return self.coeffs[-1]

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def radicand(self) -> int:
        for c in self.coeffs:
            if not c.is_rational():
                return c.radicand
        return 1

    def __call__(self, x):
        acc = QuadExt(0) if isinstance(x, (int, Fraction, QuadExt)) else mpmath.mpf(0)
        for c in reversed(self.coeffs):
            if isinstance(acc, QuadExt):
                acc = acc * x + c
            else:
                acc = acc * x + c.to_bigfloat()
        return acc

    def __add__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        zero = QuadExt(0)
        return UPoly([
            (self.coeffs[i] if i < len(self.coeffs) else zero) + (other.coeffs[i] if i < len(other.coeffs) else zero)
            for i in range(n)
        ], self.var)

    def __neg__(self) -> "UPoly":
        return UPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other) -> "UPoly":
        if not isinstance(other, UPoly):
            return UPoly([c * other for c in self.coeffs], self.var)
        if self.is_zero() or other.is_zero():
            return UPoly([], self.var)
        out = [QuadExt(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(out, self.var)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def derivative(self) -> "UPoly":
        return UPoly([c * k for k, c in enumerate(self.coeffs)][1:], self.var)

    def conjugate(self) -> "UPoly":
        return UPoly([c.conjugate() for c in self.coeffs], self.var)

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        inv = QuadExt(1) / self.leading
        return UPoly([c * inv for c in self.coeffs], self.var)

    def __divmod__(self, other: "UPoly") -> Tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ExactZeroDivisionError("Polynomial division by zero.")
        remainder = list(self.coeffs)
        quotient = [QuadExt(0)] * max(len(remainder) - other.degree, 1)
        inv = QuadExt(1) / other.leading
        while len(remainder) - 1 >= other.degree and any(remainder):
            shift = len(remainder) - 1 - other.degree
            factor = remainder[-1] * inv
            quotient[shift] = factor
            for k, c in enumerate(other.coeffs):
                remainder[shift + k] = remainder[shift + k] - factor * c
            remainder.pop()
            while remainder and not remainder[-1]:
                remainder.pop()
        return UPoly(quotient, self.var), UPoly(remainder, self.var)

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UPoly") -> "UPoly":
        return divmod(self, other)[1]

    def gcd(self, other: "UPoly") -> "UPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def square_free_decomposition(self) -> List[Tuple["UPoly", int]]:
        """Yun's algorithm: [(f_i, i)] with self = lc * prod f_i**i, each f_i square-free."""
        if self.degree < 1:
            return []
        result = []
        f = self.monic()
        g = f.gcd(f.derivative())
        w = f // g
        i = 1
        while w.degree > 0:
            y = w.gcd(g)
            factor = w // y
            if factor.degree > 0:
                result.append((factor, i))
            g = g // y
            w = y
            i += 1
        return result

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            power = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            text = format_quadext(c)
            if power:
                if c == 1:
                    text = power
                elif c == -1:
                    text = f"-{power}"
                elif c.rational_part != 0 and c.radical_part != 0:
                    text = f"({text})*{power}"
                else:
                    text = f"{text}*{power}"
            if not pieces:
                pieces.append(text)
            elif text.startswith("-"):
                pieces.append(f"- {text[1:]}")
            else:
                pieces.append(f"+ {text}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"UPoly('{self}')"


# --- Root extraction ---

def _to_sympy(poly: UPoly, symbol) -> sympy.Poly:
    coeffs = [sympy.Rational(c.as_fraction().numerator, c.as_fraction().denominator) for c in reversed(poly.coeffs)]
    return sympy.Poly(coeffs, symbol, domain="QQ")


def _rational_factors(poly: UPoly) -> List[List[Fraction]]:
    """Irreducible factors over Q of a rational polynomial, as low-first coefficient lists."""
    symbol = sympy.Symbol(poly.var)
    _, factors = _to_sympy(poly, symbol).factor_list()
    out = []
    for factor, _ in factors:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(factor.all_coeffs())]
        out.append(coeffs)
    return out


def _candidates_from_factor(coeffs: List[Fraction]) -> List[QuadExt]:
    if len(coeffs) == 2:
        return [QuadExt(-coeffs[0] / coeffs[1])]
    if len(coeffs) == 3:
        c0, c1, c2 = coeffs
        root = rational_sqrt(c1 * c1 - 4 * c2 * c0)
        return [(root - c1) / (2 * c2), (-root - c1) / (2 * c2)]
    return []


def _exact_roots(poly: UPoly) -> List[QuadExt]:
    """Exact roots of a square-free polynomial reachable by linear or quadratic factors over Q."""
    rational_image = poly if poly.is_rational() else poly * poly.conjugate()
    found: List[QuadExt] = []
    for factor in _rational_factors(rational_image):
        for candidate in _candidates_from_factor(factor):
            if candidate in found:
                continue
            try:
                if not poly(candidate):
                    found.append(candidate)
            except FieldTowerError:
                logger.debug(f"Root candidate {candidate} lies outside the field of {poly}.")
    return found


def _numeric_roots(poly: UPoly, dps: int) -> List:
    with mpmath.workdps(dps):
        coeffs = [c.to_bigfloat(dps) for c in reversed(poly.coeffs)]
        for steps in (100, 400, 1600):
            try:
                return list(mpmath.polyroots(coeffs, maxsteps=steps, extraprec=2 * dps))
            except mpmath.libmp.NoConvergence:
                logger.warning(f"polyroots did not converge in {steps} steps for {poly}; retrying.")
        raise ArithmeticError(f"Numeric root finding failed for {poly}.")


def _classify_numeric(poly: UPoly, value, dps: int) -> Tuple[object, bool, RootClass]:
    tolerance = mpmath.mpf(10) ** (-(dps // 2))
    with mpmath.workdps(dps):
        z = mpmath.mpc(value)
        nearest = int(mpmath.nint(z.real))
        if abs(z - nearest) < tolerance and not poly(QuadExt(nearest)):
            return QuadExt(nearest), True, RootClass.INTEGER
        if abs(z.imag) < tolerance:
            return mpmath.mpf(z.real), False, RootClass.IRRATIONAL
        return z, False, RootClass.COMPLEX


def find_roots(poly: UPoly, dps: Optional[int] = None) -> List[Root]:
    """All roots with multiplicities; exact ones first in canonical order, numeric ones after."""
    if poly.is_zero():
        raise ValueError("The zero polynomial has no finite root set.")
    dps = dps or default_precision()
    exact: List[Root] = []
    numeric: List[Root] = []
    for part, multiplicity in poly.square_free_decomposition():
        remainder = part
        for value in _exact_roots(part):
            exact.append(Root(value, multiplicity, True, classify_exact(value)))
            remainder = remainder // UPoly([-value, QuadExt(1)], poly.var)
        if remainder.degree < 1:
            continue
        logger.warning(f"Falling back to numeric roots for the factor {remainder}.")
        for value in _numeric_roots(remainder, dps):
            value, is_exact, kind = _classify_numeric(remainder, value, dps)
            target = exact if is_exact else numeric
            target.append(Root(value, multiplicity, is_exact, kind))
    exact.sort(key=lambda root: exact_sort_key(root.value))
    numeric.sort(key=lambda root: (mpmath.re(root.value), mpmath.im(root.value)))
    return exact + numeric

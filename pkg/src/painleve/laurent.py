# -*- coding: utf-8 -*-
"""
Truncated Laurent series in t with tracked precision.

A LaurentSeries stores coefficients c_k for valuation <= k < precision; every
coefficient at or beyond precision is unknown. precision=None marks an exact
finite sum (a Laurent polynomial). Coefficients may be QuadExt, ParamPoly or
mpmath numbers: the ring is whatever the coefficients implement.
"""

from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

try:
    from ..exceptions import CoefficientRangeError, ExactZeroDivisionError
except ImportError:
    from exceptions import CoefficientRangeError, ExactZeroDivisionError


def _min_precision(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class LaurentSeries:
    __slots__ = ("valuation", "coeffs", "precision")

    def __init__(self, coeffs: Sequence, valuation: int = 0, precision: Optional[int] = None):
        values = list(coeffs)
        if precision is not None:
            values = values[: max(precision - valuation, 0)]
        # strip exact zeros at both ends
        start = 0
        while start < len(values) and values[start] == 0:
            start += 1
        values = values[start:]
        valuation += start
        if precision is None:
            while values and values[-1] == 0:
                values.pop()
        if not values:
            valuation = precision if precision is not None else 0
        self.valuation = valuation
        self.coeffs: List = values
        self.precision = precision

    @classmethod
    def from_dict(cls, terms: Dict[int, object], precision: Optional[int] = None) -> "LaurentSeries":
        if not terms:
            return cls([], 0, precision)
        low = min(terms)
        high = max(terms)
        return cls([terms.get(k, 0) for k in range(low, high + 1)], low, precision)

    # --- access ---
    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, power: int):
        if self.precision is not None and power >= self.precision:
            raise CoefficientRangeError(f"Coefficient of t^{power} is beyond the known precision t^{self.precision}.")
        index = power - self.valuation
        if 0 <= index < len(self.coeffs):
            return self.coeffs[index]
        return 0

    def items(self) -> Iterator[Tuple[int, object]]:
        for index, c in enumerate(self.coeffs):
            yield self.valuation + index, c

    def lowest_nonzero(self, above: Optional[int] = None) -> Optional[int]:
        """First power (optionally > above) with a nonzero known coefficient."""
        for power, c in self.items():
            if (above is None or power > above) and c != 0:
                return power
        return None

    def map(self, fn) -> "LaurentSeries":
        return LaurentSeries([fn(c) for c in self.coeffs], self.valuation, self.precision)

    def truncate(self, precision: int) -> "LaurentSeries":
        return LaurentSeries(self.coeffs, self.valuation, _min_precision(self.precision, precision))

    # --- arithmetic ---
    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries([other], 0, None)
        precision = _min_precision(self.precision, other.precision)
        if self.is_zero() and other.is_zero():
            return LaurentSeries([], 0, precision)
        low = min(s.valuation for s in (self, other) if not s.is_zero())
        high = max(s.valuation + len(s.coeffs) for s in (self, other))
        if precision is not None:
            high = min(high, precision)
        out = []
        for power in range(low, high):
            a = self._raw(power)
            b = other._raw(power)
            out.append(a + b)
        return LaurentSeries(out, low, precision)

    __radd__ = __add__

    def _raw(self, power: int):
        index = power - self.valuation
        if 0 <= index < len(self.coeffs):
            return self.coeffs[index]
        return 0

    def __neg__(self) -> "LaurentSeries":
        return self.map(lambda c: -c)

    def __sub__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries([other], 0, None)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "LaurentSeries":
        return self.map(lambda c: c * factor)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            if (self.is_zero() and self.precision is None) or (other.is_zero() and other.precision is None):
                return LaurentSeries([], 0, None)
            # a zero series with known precision p sits at valuation p
            precision = None
            if self.precision is not None:
                precision = self.precision + other.valuation
            if other.precision is not None:
                precision = _min_precision(precision, other.precision + self.valuation)
            return LaurentSeries([], 0, precision)
        valuation = self.valuation + other.valuation
        precision = None
        if self.precision is not None:
            precision = self.precision + other.valuation
        if other.precision is not None:
            precision = _min_precision(precision, other.precision + self.valuation)
        length = len(self.coeffs) + len(other.coeffs) - 1
        if precision is not None:
            length = min(length, precision - valuation)
        out = []
        for n in range(length):
            acc = 0
            for i in range(max(0, n - len(other.coeffs) + 1), min(n, len(self.coeffs) - 1) + 1):
                a = self.coeffs[i]
                if a == 0:
                    continue
                b = other.coeffs[n - i]
                if b == 0:
                    continue
                acc = acc + a * b
            out.append(acc)
        return LaurentSeries(out, valuation, precision)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "LaurentSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentSeries([1], 0, None)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self) -> "LaurentSeries":
        out = [c * (self.valuation + i) for i, c in enumerate(self.coeffs)]
        precision = None if self.precision is None else self.precision - 1
        return LaurentSeries(out, self.valuation - 1, precision)

    def inverse(self, terms: Optional[int] = None) -> "LaurentSeries":
        """Reciprocal series; an exact input needs terms (number of coefficients wanted)."""
        if self.is_zero():
            raise ExactZeroDivisionError("Reciprocal of a zero series.")
        if self.precision is not None:
            count = self.precision - self.valuation
            if terms is not None:
                count = min(count, terms)
        elif terms is None:
            if len(self.coeffs) == 1:
                count = 1
            else:
                raise ValueError("Reciprocal of a Laurent polynomial needs an explicit number of terms.")
        else:
            count = terms
        lead = self.coeffs[0]
        lead_inv = Fraction(1, lead) if isinstance(lead, int) else 1 / lead
        out = [lead_inv]
        for n in range(1, count):
            acc = 0
            for k in range(1, min(n, len(self.coeffs) - 1) + 1):
                a = self.coeffs[k]
                if a == 0:
                    continue
                acc = acc + a * out[n - k]
            out.append(-acc * lead_inv)
        exact = self.precision is None and len(self.coeffs) == 1
        precision = None if exact else -self.valuation + count
        return LaurentSeries(out, -self.valuation, precision)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        return self.map(lambda c: c / other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.valuation, self.precision) == (other.valuation, other.precision) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        ) and len(self.coeffs) == len(other.coeffs)

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*t^{p}" for p, c in self.items()) or "0"
        tail = "" if self.precision is None else f" + O(t^{self.precision})"
        return f"LaurentSeries({body}{tail})"

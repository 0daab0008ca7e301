# -*- coding: utf-8 -*-
"""
Sparse Laurent polynomials over QuadExt in named parameters.

ParamPoly holds the coefficients of formal series (e.g. 21845/47775744 -
1/6*sqrt(2)*cz1), the entries of resonance matrices (polynomials in r and in
arbitrary leading coefficients) and the leading-order balance equations.
Terms are stored as {monomial: coefficient} with monomials as sorted tuples of
(name, exponent); zero coefficients and zero exponents never appear.
Negative exponents are allowed so that division by a monomial stays exact.
"""

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

try:
    from ..exactnum import QuadExt, format_quadext
    from ..exceptions import ExactZeroDivisionError, MissingParameterError
except ImportError:
    from exactnum import QuadExt, format_quadext
    from exceptions import ExactZeroDivisionError, MissingParameterError

Monomial = Tuple[Tuple[str, int], ...]
Scalar = Union[int, Fraction, QuadExt]

ONE_MONOMIAL: Monomial = ()


def _mono_mul(left: Monomial, right: Monomial) -> Monomial:
    if not left:
        return right
    if not right:
        return left
    merged = dict(left)
    for name, exp in right:
        total = merged.get(name, 0) + exp
        if total:
            merged[name] = total
        else:
            merged.pop(name, None)
    return tuple(sorted(merged.items()))


def _mono_pow(mono: Monomial, k: int) -> Monomial:
    return tuple((name, exp * k) for name, exp in mono) if k else ONE_MONOMIAL


def _mono_str(mono: Monomial) -> str:
    parts = []
    for name, exp in mono:
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(parts)


class ParamPoly:
    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        clean: Dict[Monomial, QuadExt] = {}
        if terms:
            for mono, coeff in terms.items():
                value = coeff if isinstance(coeff, QuadExt) else QuadExt(coeff)
                if value:
                    key = tuple(sorted((n, e) for n, e in mono if e))
                    clean[key] = clean[key] + value if key in clean else value
                    if not clean[key]:
                        del clean[key]
        self._terms = clean

    @classmethod
    def _wrap(cls, terms: Dict[Monomial, QuadExt]) -> "ParamPoly":
        poly = cls.__new__(cls)
        poly._terms = terms
        return poly

    @classmethod
    def constant(cls, value: Scalar) -> "ParamPoly":
        value = value if isinstance(value, QuadExt) else QuadExt(value)
        return cls._wrap({ONE_MONOMIAL: value} if value else {})

    @classmethod
    def variable(cls, name: str, exponent: int = 1) -> "ParamPoly":
        return cls._wrap({((name, exponent),): QuadExt(1)})

    @classmethod
    def zero(cls) -> "ParamPoly":
        return cls._wrap({})

    # --- inspection ---
    @property
    def terms(self) -> Dict[Monomial, QuadExt]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, QuadExt]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONOMIAL in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> QuadExt:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant.")
        return self._terms.get(ONE_MONOMIAL, QuadExt(0))

    def constant_term(self) -> QuadExt:
        return self._terms.get(ONE_MONOMIAL, QuadExt(0))

    def variables(self) -> frozenset:
        return frozenset(name for mono in self._terms for name, _ in mono)

    def degree_in(self, name: str) -> int:
        return max((dict(mono).get(name, 0) for mono in self._terms), default=0)

    def min_exponent(self, name: str) -> int:
        return min((dict(mono).get(name, 0) for mono in self._terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e for _, e in mono) for mono in self._terms), default=0)

    def coefficient_of(self, name: str, exponent: int) -> "ParamPoly":
        """Collect the terms carrying name**exponent, with that factor removed."""
        out: Dict[Monomial, QuadExt] = {}
        for mono, coeff in self._terms.items():
            if dict(mono).get(name, 0) == exponent:
                out[tuple((n, e) for n, e in mono if n != name)] = coeff
        return ParamPoly._wrap(out)

    def content_monomial(self, names: Optional[Iterable[str]] = None) -> Monomial:
        """Largest monomial dividing every term (exponents may be negative)."""
        if not self._terms:
            return ONE_MONOMIAL
        selected = set(names) if names is not None else set(self.variables())
        content = []
        for name in sorted(selected):
            low = self.min_exponent(name)
            if low:
                content.append((name, low))
        return tuple(content)

    def strip_content(self, names: Optional[Iterable[str]] = None) -> "ParamPoly":
        content = self.content_monomial(names)
        if not content:
            return self
        inverse = _mono_pow(content, -1)
        return ParamPoly._wrap({_mono_mul(mono, inverse): c for mono, c in self._terms.items()})

    def as_univariate(self, name: str) -> list:
        """Dense coefficient list (lowest degree first) of a polynomial in one variable."""
        extra = self.variables() - {name}
        if extra:
            raise ValueError(f"{self} depends on {sorted(extra)} besides {name}.")
        if self.min_exponent(name) < 0:
            raise ValueError(f"{self} has negative powers of {name}.")
        coeffs = [QuadExt(0)] * (self.degree_in(name) + 1)
        for mono, coeff in self._terms.items():
            coeffs[dict(mono).get(name, 0)] = coeff
        return coeffs

    # --- arithmetic ---
    @staticmethod
    def _lift(other) -> Optional["ParamPoly"]:
        if isinstance(other, ParamPoly):
            return other
        if isinstance(other, (int, Fraction, QuadExt)):
            return ParamPoly.constant(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o._terms:
            return self
        if not self._terms:
            return o
        out = dict(self._terms)
        for mono, coeff in o._terms.items():
            if mono in out:
                total = out[mono] + coeff
                if total:
                    out[mono] = total
                else:
                    del out[mono]
            else:
                out[mono] = coeff
        return ParamPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly._wrap({mono: -c for mono, c in self._terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, factor: Scalar) -> "ParamPoly":
        if not factor:
            return ParamPoly.zero()
        return ParamPoly._wrap({mono: c * factor for mono, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return self.scale(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return ParamPoly.zero()
        if len(other._terms) == 1 and ONE_MONOMIAL in other._terms:
            return self.scale(other._terms[ONE_MONOMIAL])
        if len(self._terms) == 1 and ONE_MONOMIAL in self._terms:
            return other.scale(self._terms[ONE_MONOMIAL])
        out: Dict[Monomial, QuadExt] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _mono_mul(m1, m2)
                value = c1 * c2
                if mono in out:
                    total = out[mono] + value
                    if total:
                        out[mono] = total
                    else:
                        del out[mono]
                elif value:
                    out[mono] = value
        return ParamPoly._wrap(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Exact division by a scalar or by a single-term ParamPoly."""
        if isinstance(other, (int, Fraction, QuadExt)):
            if not other:
                raise ExactZeroDivisionError("Division of a ParamPoly by zero.")
            inv = QuadExt(1) / other
            return self.scale(inv)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        if not other.is_monomial():
            if other.is_zero():
                raise ExactZeroDivisionError("Division of a ParamPoly by zero.")
            raise ValueError(f"Cannot divide by the non-monomial {other}.")
        (mono, coeff), = other._terms.items()
        inv_mono = _mono_pow(mono, -1)
        inv = QuadExt(1) / coeff
        return ParamPoly._wrap({_mono_mul(m, inv_mono): c * inv for m, c in self._terms.items()})

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> "ParamPoly":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ParamPoly.constant(1) / (self ** (-k))
        result = ParamPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # --- substitution ---
    def substitute(self, values: Mapping[str, Union[Scalar, "ParamPoly"]]) -> "ParamPoly":
        """Replace the named parameters; negative powers need invertible values."""
        if not self._terms or not values or not (self.variables() & set(values)):
            return self
        powers: Dict[Tuple[str, int], ParamPoly] = {}
        result = ParamPoly.zero()
        for mono, coeff in self._terms.items():
            kept = []
            factor = ParamPoly.constant(coeff)
            for name, exp in mono:
                if name in values:
                    key = (name, exp)
                    if key not in powers:
                        base = values[name]
                        base = base if isinstance(base, ParamPoly) else ParamPoly.constant(base)
                        powers[key] = base ** exp
                    factor = factor * powers[key]
                else:
                    kept.append((name, exp))
            result = result + factor * ParamPoly._wrap({tuple(kept): QuadExt(1)})
        return result

    def evaluate(self, values: Mapping[str, Scalar]) -> QuadExt:
        missing = self.variables() - set(values)
        if missing:
            raise MissingParameterError(sorted(missing)[0])
        return self.substitute(values).constant_value()

    # --- comparison and display ---
    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda item: (sum(abs(e) for _, e in item[0]), item[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono, coeff in self.sorted_terms():
            text = _term_str(mono, coeff)
            if not pieces:
                pieces.append(text)
            elif text.startswith("-"):
                pieces.append(f"- {text[1:]}")
            else:
                pieces.append(f"+ {text}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"ParamPoly('{self}')"

    def needs_parentheses(self) -> bool:
        """True when the printed form is a sum and must be wrapped before multiplying."""
        if len(self._terms) > 1:
            return True
        if len(self._terms) == 1:
            (mono, coeff), = self._terms.items()
            return not mono and coeff.rational_part != 0 and coeff.radical_part != 0
        return False


def _term_str(mono: Monomial, coeff: QuadExt) -> str:
    if not mono:
        return format_quadext(coeff)
    names = _mono_str(mono)
    if coeff == 1:
        return names
    if coeff == -1:
        return f"-{names}"
    if coeff.rational_part != 0 and coeff.radical_part != 0:
        return f"({format_quadext(coeff)})*{names}"
    return f"{format_quadext(coeff)}*{names}"

# -*- coding: utf-8 -*-
"""
Polynomial ODE systems in jet variables.

Equations are kept in implicit form P = 0 with P a JetPolynomial whose
indeterminates are the jet variables x, x', x'', ... . Parameters such as
lambda and C are exact constants folded into the coefficients; the system
also remembers their values so that energy checks can read them back.

Text format:

    vars x, y;
    x'' = -x - 2*x*y;
    y'' = -y - x^2 + y^2;
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, NamedTuple, Optional, Tuple, Union

try:
    from .exactnum import QuadExt, format_quadext, rational_sqrt
    from .exceptions import (
        NonPolynomialError,
        SubstitutionError,
        SystemSyntaxError,
        UndeclaredVariableError,
    )
except ImportError:
    from exactnum import QuadExt, format_quadext, rational_sqrt
    from exceptions import (
        NonPolynomialError,
        SubstitutionError,
        SystemSyntaxError,
        UndeclaredVariableError,
    )

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction, QuadExt]


class JetVar(NamedTuple):
    name: str
    order: int = 0

    def __str__(self) -> str:
        return self.name + "'" * self.order


JetMonomial = Tuple[Tuple[JetVar, int], ...]


def _jet_mono_mul(left: JetMonomial, right: JetMonomial) -> JetMonomial:
    if not left:
        return right
    if not right:
        return left
    merged: Dict[JetVar, int] = dict(left)
    for var, exp in right:
        merged[var] = merged.get(var, 0) + exp
    return tuple(sorted(merged.items()))


def monomial_str(mono: JetMonomial) -> str:
    return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in mono)


class JetPolynomial:
    """Sparse polynomial in jet variables with QuadExt coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[JetMonomial, Scalar]] = None):
        clean: Dict[JetMonomial, QuadExt] = {}
        for mono, coeff in (terms or {}).items():
            value = coeff if isinstance(coeff, QuadExt) else QuadExt(coeff)
            key = tuple(sorted((v, e) for v, e in mono if e))
            total = clean.get(key, QuadExt(0)) + value
            if total:
                clean[key] = total
            else:
                clean.pop(key, None)
        self._terms = clean

    @classmethod
    def constant(cls, value: Scalar) -> "JetPolynomial":
        return cls({(): value})

    @classmethod
    def jet(cls, name: str, order: int = 0) -> "JetPolynomial":
        return cls({((JetVar(name, order), 1),): 1})

    def terms(self) -> Dict[JetMonomial, QuadExt]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[JetMonomial, QuadExt]]:
        return iter(sorted(self._terms.items(), key=lambda item: _term_order(item[0])))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {()}

    def constant_value(self) -> QuadExt:
        return self._terms.get((), QuadExt(0))

    def jet_vars(self) -> frozenset:
        return frozenset(v for mono in self._terms for v, _ in mono)

    def highest_order(self, name: str) -> int:
        """Highest derivative order of name present, -1 if absent."""
        return max((v.order for v in self.jet_vars() if v.name == name), default=-1)

    def __add__(self, other: "JetPolynomial") -> "JetPolynomial":
        merged = dict(self._terms)
        for mono, coeff in other._terms.items():
            merged[mono] = merged.get(mono, QuadExt(0)) + coeff
        return JetPolynomial(merged)

    def __neg__(self) -> "JetPolynomial":
        return JetPolynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "JetPolynomial") -> "JetPolynomial":
        return self + (-other)

    def __mul__(self, other: Union["JetPolynomial", Scalar]) -> "JetPolynomial":
        if not isinstance(other, JetPolynomial):
            return JetPolynomial({m: c * other for m, c in self._terms.items()})
        out: Dict[JetMonomial, QuadExt] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _jet_mono_mul(m1, m2)
                out[mono] = out.get(mono, QuadExt(0)) + c1 * c2
        return JetPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "JetPolynomial":
        result = JetPolynomial.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, JetPolynomial) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono, coeff in self.items():
            text = _jet_term_str(mono, coeff)
            if not pieces:
                pieces.append(text)
            elif text.startswith("-"):
                pieces.append(f"- {text[1:]}")
            else:
                pieces.append(f"+ {text}")
        return " ".join(pieces)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"JetPolynomial('{self}')"


def _term_order(mono: JetMonomial):
    # highest derivatives first, then by total degree
    top = max((v.order for v, _ in mono), default=-1)
    return (-top, -sum(e for _, e in mono), [(v.name, -v.order, -e) for v, e in mono])


def _jet_term_str(mono: JetMonomial, coeff: QuadExt) -> str:
    if not mono:
        return format_quadext(coeff)
    names = monomial_str(mono)
    if coeff == 1:
        return names
    if coeff == -1:
        return f"-{names}"
    if coeff.rational_part != 0 and coeff.radical_part != 0:
        return f"({format_quadext(coeff)})*{names}"
    return f"{format_quadext(coeff)}*{names}"


@dataclass(frozen=True)
class PolyODESystem:
    """Ordered variables, one owning equation P_i = 0 per variable, and the parameter values used."""
    variables: Tuple[str, ...]
    equations: Tuple[JetPolynomial, ...]
    parameters: Tuple[Tuple[str, QuadExt], ...] = ()
    name: str = ""
    # (original variable, new variable) when built by square_substitute
    substitution: Optional[Tuple[str, str]] = None

    def __post_init__(self):
        if len(self.variables) != len(self.equations):
            raise SystemSyntaxError(
                f"{len(self.variables)} variables but {len(self.equations)} equations", 0, 0
            )

    def parameter(self, name: str) -> Optional[QuadExt]:
        return dict(self.parameters).get(name)

    def equation_for(self, var: str) -> JetPolynomial:
        return self.equations[self.variables.index(var)]

    def index(self, var: str) -> int:
        return self.variables.index(var)

    def order_of(self, var: str) -> int:
        return max(e.highest_order(var) for e in self.equations)

    def to_text(self) -> str:
        lines = [f"vars {', '.join(self.variables)};"]
        lines += [f"{eq.to_text()} = 0;" for eq in self.equations]
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.to_text()


# --- Parser ---

TOKEN_PATTERN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<float>\d+\.\d*|\.\d+)
  | (?P<number>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<prime>')
  | (?P<op>[-+*/^=;,()])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = TOKEN_PATTERN.match(text, pos)
        column = pos - line_start + 1
        if not match:
            raise SystemSyntaxError(f"Unexpected character {text[pos]!r}", line, column)
        kind = match.lastgroup
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind == "float":
            raise SystemSyntaxError(f"Floating literal {match.group()!r}; use a rational such as 3/10", line, column)
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, match.group(), line, column))
        pos = match.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    """Recursive descent over the token list; expressions evaluate straight to JetPolynomial."""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.variables: List[str] = []

    # --- token helpers ---
    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _accept(self, text: str) -> bool:
        if self.current.text == text and self.current.kind in ("op", "ident"):
            self.pos += 1
            return True
        return False

    def _expect(self, text: str) -> Token:
        if self.current.text != text:
            found = self.current.text or "end of input"
            raise SystemSyntaxError(f"Expected {text!r}, found {found!r}", self.current.line, self.current.column)
        return self._advance()

    # --- grammar ---
    def parse(self) -> Tuple[List[str], List[Tuple[JetPolynomial, Optional[str], Token]]]:
        self._expect("vars")
        self.variables.append(self._identifier())
        while self._accept(","):
            self.variables.append(self._identifier())
        self._expect(";")
        equations = []
        while self.current.kind != "end":
            start = self.current
            lhs_owner = self._bare_jet_owner()
            lhs = self._expression()
            self._expect("=")
            rhs = self._expression()
            self._expect(";")
            equations.append((lhs - rhs, lhs_owner, start))
        if not equations:
            raise SystemSyntaxError("No equations after the vars declaration", self.current.line, self.current.column)
        return self.variables, equations

    def _identifier(self) -> str:
        token = self._advance()
        if token.kind != "ident":
            raise SystemSyntaxError(f"Expected a variable name, found {token.text!r}", token.line, token.column)
        if token.text in self.variables:
            raise SystemSyntaxError(f"Variable {token.text!r} declared twice", token.line, token.column)
        return token.text

    def _bare_jet_owner(self) -> Optional[str]:
        """Name of the variable when the left side is a lone jet variable (x'' = ...)."""
        k = self.pos
        if self.tokens[k].kind != "ident" or self.tokens[k].text not in self.variables:
            return None
        k += 1
        while self.tokens[k].kind == "prime":
            k += 1
        return self.tokens[self.pos].text if self.tokens[k].text == "=" else None

    def _expression(self) -> JetPolynomial:
        result = self._term()
        while self.current.text in ("+", "-"):
            op = self._advance().text
            term = self._term()
            result = result + term if op == "+" else result - term
        return result

    def _term(self) -> JetPolynomial:
        result = self._factor()
        while self.current.text in ("*", "/"):
            op = self._advance()
            operand = self._factor()
            if op.text == "*":
                result = result * operand
            elif not operand.is_constant():
                raise NonPolynomialError("Division by a variable", op.line, op.column)
            elif operand.is_zero():
                raise SystemSyntaxError("Division by zero", op.line, op.column)
            else:
                result = result * (QuadExt(1) / operand.constant_value())
        return result

    def _factor(self) -> JetPolynomial:
        if self._accept("-"):
            return -self._factor()
        if self._accept("+"):
            return self._factor()
        base = self._atom()
        if self.current.text == "^":
            caret = self._advance()
            exponent = self._exponent(caret)
            return base ** exponent
        return base

    def _exponent(self, caret: Token) -> int:
        token = self.current
        # a following '/' divides the power: x^2/3 is x^2 * 1/3
        if token.kind == "number":
            self._advance()
            return int(token.text)
        raise NonPolynomialError("Exponent must be a non-negative integer literal", caret.line, caret.column)

    def _atom(self) -> JetPolynomial:
        token = self._advance()
        if token.kind == "number":
            return JetPolynomial.constant(int(token.text))
        if token.text == "(":
            inner = self._expression()
            self._expect(")")
            return inner
        if token.kind == "ident" and token.text == "sqrt":
            self._expect("(")
            inner = self._expression()
            self._expect(")")
            if not inner.is_constant() or not inner.constant_value().is_rational():
                raise NonPolynomialError("sqrt() takes a rational literal", token.line, token.column)
            return JetPolynomial.constant(rational_sqrt(inner.constant_value().as_fraction()))
        if token.kind == "ident":
            if token.text not in self.variables:
                raise UndeclaredVariableError(f"Undeclared variable {token.text!r}", token.line, token.column)
            order = 0
            while self.current.kind == "prime":
                self._advance()
                order += 1
            return JetPolynomial.jet(token.text, order)
        found = token.text or "end of input"
        raise SystemSyntaxError(f"Unexpected {found!r}", token.line, token.column)


def parse_system(text: str, name: str = "") -> PolyODESystem:
    """Parse the vars/equations text format into a PolyODESystem.

    Equations written as ``x'' = ...`` are owned by their left-hand variable;
    the remaining equations are assigned to the remaining variables in
    declaration order.
    """
    variables, equations = _Parser(text).parse()
    if len(equations) != len(variables):
        last = equations[-1][2]
        raise SystemSyntaxError(
            f"{len(variables)} variables declared but {len(equations)} equations given", last.line, last.column
        )
    owned: Dict[str, JetPolynomial] = {}
    unowned = []
    for poly, owner, start in equations:
        if owner is not None and owner not in owned:
            owned[owner] = poly
        else:
            unowned.append((poly, start))
    for var in variables:
        if var not in owned:
            poly, _ = unowned.pop(0)
            owned[var] = poly
    for var in variables:
        top = max(p.highest_order(var) for p in owned.values())
        if owned[var].highest_order(var) != top or top < 0:
            start = next(s for p, _, s in equations if p is owned[var])
            raise SystemSyntaxError(f"Equation for {var} does not contain its highest derivative", start.line, start.column)
    system = PolyODESystem(tuple(variables), tuple(owned[v] for v in variables), (), name)
    logger.debug(f"Parsed system with variables {variables}")
    return system


# --- Built-in systems ---

def henon_heiles(lam: Scalar, C: Scalar) -> PolyODESystem:
    """x'' + lam*x + 2*x*y = 0, y'' + y + x^2 - C*y^2 = 0."""
    lam = lam if isinstance(lam, QuadExt) else QuadExt(lam)
    C = C if isinstance(C, QuadExt) else QuadExt(C)
    x, y = JetPolynomial.jet("x"), JetPolynomial.jet("y")
    eq_x = JetPolynomial.jet("x", 2) + x * lam + x * y * 2
    eq_y = JetPolynomial.jet("y", 2) + y + x * x - y * y * C
    return PolyODESystem(("x", "y"), (eq_x, eq_y), (("lambda", lam), ("C", C)), "henon-heiles")


def square_substitute(system: PolyODESystem, var: str, new_name: str = "z") -> PolyODESystem:
    """Rewrite the system in new = var**2.

    The owner equation must read c*var'' + var*S = 0 with S free of var
    derivatives and var appearing in S only through even powers; every other
    equation may contain var only through even powers. With var'' = var*Q,
    Q = -S/c, the owner equation becomes new''*new - new'^2/2 - 2*new^2*Q = 0.
    """
    if var not in system.variables:
        raise SubstitutionError(f"{var!r} is not a variable of the system")
    if new_name in system.variables:
        raise SubstitutionError(f"{new_name!r} already names a variable")
    second = JetVar(var, 2)
    new0 = JetPolynomial.jet(new_name)
    new1 = JetPolynomial.jet(new_name, 1)
    new2 = JetPolynomial.jet(new_name, 2)

    def even_to_new(mono: JetMonomial, shift: int) -> JetPolynomial:
        """Replace var**(2k + shift) by new**k in one monomial."""
        rest: JetMonomial = ()
        power = 0
        for v, e in mono:
            if v.name == var:
                if v.order:
                    raise SubstitutionError(f"Derivative {v} of {var} outside its owner equation")
                power = e
            else:
                rest = rest + ((v, e),)
        power -= shift
        if power < 0 or power % 2:
            raise SubstitutionError(f"Term {monomial_str(mono) or '1'} is not of the form {var}^{shift}*{var}^(2k)")
        return JetPolynomial({rest: 1}) * (new0 ** (power // 2))

    owner = system.equation_for(var)
    leading = [(m, c) for m, c in owner.terms().items() if any(v == second for v, _ in m)]
    if owner.highest_order(var) != 2 or len(leading) != 1 or leading[0][0] != ((second, 1),):
        raise SubstitutionError(f"Owner equation of {var} is not of the form c*{var}'' + {var}*S")
    c = leading[0][1]
    quotient = JetPolynomial()
    for mono, coeff in owner.terms().items():
        if mono == ((second, 1),):
            continue
        quotient = quotient + even_to_new(mono, 1) * (-coeff / c)
    new_owner = new2 * new0 - new1 * new1 * Fraction(1, 2) - new0 * new0 * quotient * 2

    equations = []
    for name, eq in zip(system.variables, system.equations):
        if name == var:
            equations.append(new_owner)
            continue
        rewritten = JetPolynomial()
        for mono, coeff in eq.terms().items():
            rewritten = rewritten + even_to_new(mono, 0) * coeff
        equations.append(rewritten)
    variables = tuple(new_name if v == var else v for v in system.variables)
    logger.info(f"Substituted {new_name} = {var}^2 in {system.name or 'system'}")
    return PolyODESystem(
        variables,
        tuple(equations),
        system.parameters,
        f"{system.name}-{new_name}" if system.name else new_name,
        (var, new_name),
    )


@dataclass(frozen=True)
class KnownCase:
    label: str
    lam: Fraction
    C: Fraction
    expected: str
    note: str = ""

    def system(self) -> PolyODESystem:
        return henon_heiles(self.lam, self.C)


def known_cases() -> List[KnownCase]:
    """Parameter points of the generalized Hénon-Heiles family with their known Painlevé status."""
    return [
        KnownCase("integrable (i)", Fraction(1), Fraction(-1), "PASSES", "separable in parabolic coordinates"),
        KnownCase("integrable (ii), lambda=1", Fraction(1), Fraction(-6), "PASSES", "KdV-type case, any lambda"),
        KnownCase("integrable (ii), lambda=1/2", Fraction(1, 2), Fraction(-6), "PASSES", "KdV-type case, any lambda"),
        KnownCase("integrable (iii)", Fraction(1, 16), Fraction(-16), "WEAK", "half-integer leading exponent"),
        KnownCase("original", Fraction(1), Fraction(1), "FAILS", "chaotic Hénon-Heiles potential"),
        KnownCase("study point", Fraction(1, 9), Fraction(-16, 5), "FAILS", "special solutions in closed form"),
    ]

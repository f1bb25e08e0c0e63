"""Exact expression trees over the spacetime coordinates (t, x, y, z).

The node vocabulary is deliberately small: constants, coordinate
variables, sums, products, integer powers, sin, cos and exp.  That set is
closed under partial differentiation, so every scalar function entering
the library carries exact analytic derivatives.  Raw numeric callbacks
are not accepted anywhere; user functions enter only through this
vocabulary (either constructed programmatically or parsed from the text
syntax, e.g. ``-1.0*cos(2.0*(y-t)+0.5)*x``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple


class SpacetimePoint(NamedTuple):
    """Evaluation point, natural units (lengths and times in 1/mass)."""

    t: float
    x: float
    y: float
    z: float


ORIGIN = SpacetimePoint(0.0, 0.0, 0.0, 0.0)

VARIABLES = ("t", "x", "y", "z")

# exp() overflows double precision just above this argument
_EXP_ARG_MAX = 709.0


class EvalDomainError(ArithmeticError):
    """Evaluation left the finite double-precision domain."""


class ParseError(ValueError):
    """Malformed expression text."""


def as_expr(value) -> "ScalarExpr":
    if isinstance(value, ScalarExpr):
        return value
    if isinstance(value, (int, float)):
        return Const(float(value))
    raise TypeError(f"cannot interpret {value!r} as a scalar expression")


class ScalarExpr:
    """Base class for all expression nodes.  Immutable and hashable."""

    def eval(self, point: SpacetimePoint) -> float:
        value = self._eval(point)
        if not math.isfinite(value):
            raise EvalDomainError(f"non-finite value {value} at {point}")
        return value

    def _eval(self, point: SpacetimePoint) -> float:
        raise NotImplementedError

    def diff(self, var: str) -> "ScalarExpr":
        if var not in VARIABLES:
            raise ValueError(f"unknown variable {var!r}, expected one of {VARIABLES}")
        return self._diff(var)

    def _diff(self, var: str) -> "ScalarExpr":
        raise NotImplementedError

    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return add(self, mul(Const(-1.0), as_expr(other)))

    def __rsub__(self, other):
        return add(as_expr(other), mul(Const(-1.0), self))

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __neg__(self):
        return mul(Const(-1.0), self)

    def __pow__(self, exponent):
        return pow_int(self, exponent)


@dataclass(frozen=True)
class Const(ScalarExpr):
    value: float

    def _eval(self, point):
        return self.value

    def _diff(self, var):
        return Const(0.0)

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True)
class Var(ScalarExpr):
    name: str

    def __post_init__(self):
        if self.name not in VARIABLES:
            raise ValueError(f"unknown variable {self.name!r}")

    def _eval(self, point):
        return float(getattr(point, self.name))

    def _diff(self, var):
        return Const(1.0 if var == self.name else 0.0)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Sum(ScalarExpr):
    terms: tuple

    def _eval(self, point):
        return math.fsum(term._eval(point) for term in self.terms)

    def _diff(self, var):
        return add(*(term._diff(var) for term in self.terms))

    def __str__(self):
        return "(" + " + ".join(str(t) for t in self.terms) + ")"


@dataclass(frozen=True)
class Prod(ScalarExpr):
    factors: tuple

    def _eval(self, point):
        out = 1.0
        for factor in self.factors:
            out *= factor._eval(point)
        return out

    def _diff(self, var):
        # product rule over all factors
        pieces = []
        for i, factor in enumerate(self.factors):
            rest = self.factors[:i] + self.factors[i + 1 :]
            pieces.append(mul(factor._diff(var), *rest))
        return add(*pieces)

    def __str__(self):
        return "*".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class Pow(ScalarExpr):
    base: ScalarExpr
    exponent: int

    def _eval(self, point):
        base = self.base._eval(point)
        if base == 0.0 and self.exponent < 0:
            raise EvalDomainError("zero base with negative exponent")
        return base**self.exponent

    def _diff(self, var):
        n = self.exponent
        return mul(Const(float(n)), pow_int(self.base, n - 1), self.base._diff(var))

    def __str__(self):
        return f"({self.base})^{self.exponent}"


@dataclass(frozen=True)
class Sin(ScalarExpr):
    arg: ScalarExpr

    def _eval(self, point):
        return math.sin(self.arg._eval(point))

    def _diff(self, var):
        return mul(cos(self.arg), self.arg._diff(var))

    def __str__(self):
        return f"sin({self.arg})"


@dataclass(frozen=True)
class Cos(ScalarExpr):
    arg: ScalarExpr

    def _eval(self, point):
        return math.cos(self.arg._eval(point))

    def _diff(self, var):
        return mul(Const(-1.0), sin(self.arg), self.arg._diff(var))

    def __str__(self):
        return f"cos({self.arg})"


@dataclass(frozen=True)
class Exp(ScalarExpr):
    arg: ScalarExpr

    def _eval(self, point):
        arg = self.arg._eval(point)
        if arg > _EXP_ARG_MAX:
            raise EvalDomainError(f"exp overflow: argument {arg}")
        return math.exp(arg)

    def _diff(self, var):
        return mul(exp(self.arg), self.arg._diff(var))

    def __str__(self):
        return f"exp({self.arg})"


ZERO = Const(0.0)
ONE = Const(1.0)
T, X, Y, Z = (Var(name) for name in VARIABLES)


# ---------------------------------------------------------------------------
# smart constructors with light constant folding

def add(*terms) -> ScalarExpr:
    flat = []
    const_part = 0.0
    for term in terms:
        term = as_expr(term)
        if isinstance(term, Sum):
            sub = term.terms
        else:
            sub = (term,)
        for piece in sub:
            if isinstance(piece, Const):
                const_part += piece.value
            else:
                flat.append(piece)
    if const_part != 0.0 or not flat:
        flat.append(Const(const_part))
    if len(flat) == 1:
        return flat[0]
    return Sum(tuple(flat))


def mul(*factors) -> ScalarExpr:
    flat = []
    const_part = 1.0
    for factor in factors:
        factor = as_expr(factor)
        if isinstance(factor, Prod):
            sub = factor.factors
        else:
            sub = (factor,)
        for piece in sub:
            if isinstance(piece, Const):
                const_part *= piece.value
            else:
                flat.append(piece)
    if const_part == 0.0:
        return ZERO
    if const_part != 1.0 or not flat:
        flat.insert(0, Const(const_part))
    if len(flat) == 1:
        return flat[0]
    return Prod(tuple(flat))


def pow_int(base, exponent) -> ScalarExpr:
    base = as_expr(base)
    if not isinstance(exponent, int):
        raise TypeError("exponent must be an integer")
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    if isinstance(base, Const):
        return Const(base.value**exponent)
    return Pow(base, exponent)


def sin(arg) -> ScalarExpr:
    arg = as_expr(arg)
    if isinstance(arg, Const):
        return Const(math.sin(arg.value))
    return Sin(arg)


def cos(arg) -> ScalarExpr:
    arg = as_expr(arg)
    if isinstance(arg, Const):
        return Const(math.cos(arg.value))
    return Cos(arg)


def exp(arg) -> ScalarExpr:
    arg = as_expr(arg)
    if isinstance(arg, Const):
        return Const(math.exp(arg.value))
    return Exp(arg)


# ---------------------------------------------------------------------------
# text syntax:  + - * ^, sin( ) cos( ) exp( ), variables t x y z,
# scientific-notation literals, parentheses

_FUNCTIONS = {"sin": sin, "cos": cos, "exp": exp}


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            try:
                value = float(text[i:j])
            except ValueError:
                raise ParseError(f"bad numeric literal {text[i:j]!r} at position {i}")
            tokens.append(("num", value, i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r} at position {i}")
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind):
        token = self.advance()
        if token[0] != kind:
            raise ParseError(
                f"expected {kind!r} but found {token[1]!r} at position {token[2]}"
            )
        return token

    def parse(self) -> ScalarExpr:
        expr = self.expr()
        token = self.peek()
        if token[0] != "end":
            raise ParseError(f"trailing input at position {token[2]}: {token[1]!r}")
        return expr

    def expr(self) -> ScalarExpr:
        terms = [self.term()]
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            nxt = self.term()
            terms.append(nxt if op == "+" else mul(Const(-1.0), nxt))
        return add(*terms)

    def term(self) -> ScalarExpr:
        factors = [self.factor()]
        while self.peek()[0] == "*":
            self.advance()
            factors.append(self.factor())
        return mul(*factors)

    def factor(self) -> ScalarExpr:
        sign = 1.0
        while self.peek()[0] in ("+", "-"):
            if self.advance()[0] == "-":
                sign = -sign
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            exp_sign = 1
            while self.peek()[0] in ("+", "-"):
                if self.advance()[0] == "-":
                    exp_sign = -exp_sign
            token = self.expect("num")
            if token[1] != int(token[1]):
                raise ParseError(f"exponent must be an integer, got {token[1]}")
            base = pow_int(base, exp_sign * int(token[1]))
        return mul(Const(sign), base) if sign != 1.0 else base

    def atom(self) -> ScalarExpr:
        token = self.advance()
        kind, value, pos = token
        if kind == "num":
            return Const(value)
        if kind == "name":
            if value in VARIABLES:
                return Var(value)
            if value in _FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return _FUNCTIONS[value](arg)
            raise ParseError(f"unknown name {value!r} at position {pos}")
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {value!r} at position {pos}")


def parse_expr(text: str) -> ScalarExpr:
    """Parse the infix text syntax into an expression tree."""
    if not text.strip():
        raise ParseError("empty expression")
    return _Parser(text).parse()

"""Analytic expressions in one complex variable ``z``.

Grammar (single-token lookahead, recursive descent)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' ['-'] INT)?
    atom   := NUMBER ['i'] | 'i' | 'pi' | 'e' | 'z'
            | FUNC '(' expr ')' | '(' expr ')'
    FUNC   := 'exp' | 'sin' | 'cos' | 'sqrt'

``^`` binds tighter than unary minus, so ``-z^2`` is ``-(z^2)``.  Implicit
multiplication is not supported: write ``2*z``, not ``2z``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from .errors import DivisionByZeroJet, EvaluationError, ParseError
from .jets import Jet, jet_const, jet_cos, jet_exp, jet_powi, jet_sin, jet_sqrt, jet_var

FUNCTIONS = ("exp", "sin", "cos", "sqrt")
CONSTANTS = {"pi": math.pi, "e": math.e}


# AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: complex


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class App:
    func: str
    arg: "Expr"


Expr = Union[Num, Const, Var, Neg, BinOp, Pow, App]


@dataclass(frozen=True)
class CurveSpec:
    """Curve in CP^n given by inhomogeneous coordinates ``x_1(z) .. x_n(z)``."""

    n: int
    components: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("projective dimension must be at least 1")
        comps = tuple(parse(c) if isinstance(c, str) else c for c in self.components)
        if len(comps) != self.n:
            raise ValueError(f"expected {self.n} components, got {len(comps)}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_strings(cls, *components: str) -> "CurveSpec":
        return cls(len(components), tuple(components))


# tokenizer ------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?i?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # num, name, op, end
    text: str
    pos: int


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos), text)
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


def _byte_offset(text, pos):
    return len(text[:pos].encode("utf-8"))


# parser ---------------------------------------------------------------------


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, expected):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"expected {expected}, found {found}", _byte_offset(self.text, t.pos), self.text)

    def expect_op(self, op):
        if self.tok.kind == "op" and self.tok.text == op:
            return self.advance()
        self.error(repr(op))

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            self.error("operator or end of input")
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            return Neg(self.factor())
        node = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            sign = 1
            if self.tok.kind == "op" and self.tok.text == "-":
                self.advance()
                sign = -1
            t = self.tok
            if t.kind != "num" or not t.text.isdigit():
                self.error("integer exponent")
            self.advance()
            node = Pow(node, sign * int(t.text))
        return node

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            if t.text.endswith("i"):
                return Num(complex(0.0, float(t.text[:-1])))
            return Num(complex(float(t.text)))
        if t.kind == "name":
            self.advance()
            if t.text == "z":
                return Var()
            if t.text == "i":
                return Num(1j)
            if t.text in CONSTANTS:
                return Const(t.text)
            if t.text in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return App(t.text, arg)
            self.i -= 1
            self.error("number, 'z', 'i', 'pi', 'e' or one of " + ", ".join(FUNCTIONS))
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        self.error("an operand")


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree; raises :class:`ParseError`."""
    return _Parser(text).parse()


# printer --------------------------------------------------------------------


def _num_str(v: complex) -> str:
    if v.imag == 0.0:
        return repr(v.real)
    if v.real == 0.0:
        return repr(v.imag) + "i"
    return f"({v.real!r}+{v.imag!r}i)"


def to_string(e: Expr) -> str:
    """Render ``e`` so that ``parse(to_string(e)) == e``."""
    if isinstance(e, Num):
        return _num_str(e.value)
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Var):
        return "z"
    if isinstance(e, Neg):
        return "-" + to_string(e.arg)
    if isinstance(e, BinOp):
        return f"({to_string(e.left)}{e.op}{to_string(e.right)})"
    if isinstance(e, Pow):
        base = to_string(e.base)
        if isinstance(e.base, (Neg, Pow)):
            base = f"({base})"
        return f"{base}^{e.exponent}"
    if isinstance(e, App):
        return f"{e.func}({to_string(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


# evaluation -----------------------------------------------------------------


def _eval(e, a, K):
    if isinstance(e, Num):
        return jet_const(e.value, a, K)
    if isinstance(e, Const):
        return jet_const(CONSTANTS[e.name], a, K)
    if isinstance(e, Var):
        return jet_var(a, K)
    if isinstance(e, Neg):
        return -_eval(e.arg, a, K)
    if isinstance(e, BinOp):
        u, v = _eval(e.left, a, K), _eval(e.right, a, K)
        if e.op == "+":
            return u + v
        if e.op == "-":
            return u - v
        if e.op == "*":
            return u * v
        try:
            return u / v
        except DivisionByZeroJet:
            raise EvaluationError(f"division by zero at z = {a}") from None
    if isinstance(e, Pow):
        try:
            return jet_powi(_eval(e.base, a, K), e.exponent)
        except DivisionByZeroJet:
            raise EvaluationError(f"negative power of zero at z = {a}") from None
    if isinstance(e, App):
        u = _eval(e.arg, a, K)
        if e.func == "exp":
            return jet_exp(u)
        if e.func == "sin":
            return jet_sin(u)
        if e.func == "cos":
            return jet_cos(u)
        try:
            return jet_sqrt(u)
        except DivisionByZeroJet:
            raise EvaluationError(f"sqrt of zero at z = {a}") from None
    raise TypeError(f"not an expression node: {e!r}")


def eval_jet(e, a, K: int) -> Jet:
    """Order-``K`` jet of expression ``e`` (tree or string) at ``z = a``."""
    if isinstance(e, str):
        e = parse(e)
    return _eval(e, complex(a), K)


def lift(spec: CurveSpec, a, K: int) -> list:
    """Homogeneous lifting ``f = (1, x_1, ..., x_n)`` as a list of jets."""
    a = complex(a)
    jets = [jet_const(1.0, a, K)]
    for idx, comp in enumerate(spec.components, start=1):
        try:
            jets.append(eval_jet(comp, a, K))
        except EvaluationError as exc:
            raise EvaluationError(str(exc), component=idx) from None
    return jets

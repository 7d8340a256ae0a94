"""Expression trees and the infix mini-language that produces them.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := atom (('^' | '**') exponent)?
    exponent:= ['-'|'+'] NUMBER | '(' ['-'|'+'] NUMBER ['/' NUMBER] ')'
    atom    := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'

Names are ``eps``, ``pi``, the variables ``x`` and ``n``, and the functions in
:data:`FUNCTIONS`.  Powers take rational exponents only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ParseError

ELEMENTARY = ("exp", "ln", "sin", "cos", "sinh", "cosh", "sqrt", "arctan")
# step is the jump fixture: 0 below zero, 1 from zero on
FUNCTIONS = ELEMENTARY + ("step",)
VARIABLES = ("x", "n")


class Expr:
    """Base node.  Arithmetic operators build larger trees."""

    def __add__(self, other):
        return BinOp("+", self, as_expr(other))

    def __radd__(self, other):
        return BinOp("+", as_expr(other), self)

    def __sub__(self, other):
        return BinOp("-", self, as_expr(other))

    def __rsub__(self, other):
        return BinOp("-", as_expr(other), self)

    def __mul__(self, other):
        return BinOp("*", self, as_expr(other))

    def __rmul__(self, other):
        return BinOp("*", as_expr(other), self)

    def __truediv__(self, other):
        return BinOp("/", self, as_expr(other))

    def __rtruediv__(self, other):
        return BinOp("/", as_expr(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, exponent):
        return Pow(self, Fraction(exponent))

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, eq=True)
class Var(Expr):
    name: str


@dataclass(frozen=True, eq=True)
class Num(Expr):
    value: Union[Fraction, float]


@dataclass(frozen=True, eq=True)
class Eps(Expr):
    pass


@dataclass(frozen=True, eq=True)
class Pi(Expr):
    pass


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True, eq=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    base: Expr
    exponent: Fraction


@dataclass(frozen=True, eq=True)
class Call(Expr):
    func: str
    arg: Expr

    def __post_init__(self):
        if self.func not in FUNCTIONS:
            raise ParseError(f"unknown function {self.func!r}")


ExprTree = Expr


def as_expr(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, str):
        return parse(value)
    if isinstance(value, bool):
        raise TypeError("bool is not an expression")
    if isinstance(value, int):
        return Num(Fraction(value))
    if isinstance(value, (Fraction, float)):
        return Num(value)
    raise TypeError(f"cannot make an expression from {type(value).__name__}")


x = Var("x")
n = Var("n")
eps = Eps()


def _fn(name):
    def build(arg):
        return Call(name, as_expr(arg))

    build.__name__ = name
    return build


exp, ln, sin, cos, sinh, cosh, sqrt, arctan, step = (_fn(f) for f in FUNCTIONS)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]\w*)"
    r"|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _number(tok: str, exact: bool):
    if exact:
        return Fraction(tok)
    return float(tok)


class _Parser:
    def __init__(self, text: str, exact: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.exact = exact

    def peek(self):
        return self.tokens[self.i]

    def take(self, value=None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Expr:
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return Neg(self.unary())
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            return Pow(base, self.exponent())
        return base

    def _signed_number(self) -> Fraction:
        sign = 1
        if self.peek()[1] in ("-", "+"):
            sign = -1 if self.take()[1] == "-" else 1
        kind, val, pos = self.take()
        if kind != "num":
            raise ParseError("exponent must be a rational number", pos)
        return sign * Fraction(val)

    def exponent(self) -> Fraction:
        if self.peek()[1] == "(":
            self.take()
            value = self._signed_number()
            if self.peek()[1] == "/":
                self.take()
                kind, val, pos = self.take()
                if kind != "num" or Fraction(val) == 0:
                    raise ParseError("bad exponent denominator", pos)
                value /= Fraction(val)
            self.take(")")
            return value
        return self._signed_number()

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return Num(_number(val, self.exact))
        if kind == "name":
            if self.peek()[1] == "(":
                if val not in FUNCTIONS:
                    raise ParseError(f"unknown function {val!r}", pos)
                self.take("(")
                arg = self.expr()
                self.take(")")
                return Call(val, arg)
            if val == "eps":
                return Eps()
            if val == "pi":
                return Pi()
            if val in VARIABLES:
                return Var(val)
            raise ParseError(f"unknown name {val!r}", pos)
        if val == "(":
            node = self.expr()
            self.take(")")
            return node
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse(text: str, exact: bool = True) -> Expr:
    """Parse infix text.  Decimal literals become Fractions when ``exact``."""
    return _Parser(text, exact).parse()


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _fmt_num(v) -> str:
    return repr(v) if isinstance(v, float) else str(v)


def to_text(node: Expr, parent: int = 0) -> str:
    """Render a tree back to the mini-language, parenthesizing only when needed."""
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Eps):
        return "eps"
    if isinstance(node, Pi):
        return "pi"
    if isinstance(node, Num):
        s = _fmt_num(node.value)
        return f"({s})" if (parent and ("/" in s or s.startswith("-"))) else s
    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"
    if isinstance(node, Neg):
        s = "-" + to_text(node.operand, 3)
        return f"({s})" if parent >= 2 else s
    if isinstance(node, Pow):
        e = node.exponent
        es = str(e.numerator) if e.denominator == 1 else f"({e.numerator}/{e.denominator})"
        s = f"{to_text(node.base, 4)}^{es}"
        return f"({s})" if parent >= 4 else s
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        # right operand of - and / binds tighter to keep left associativity
        s = f"{to_text(node.left, p)} {node.op} {to_text(node.right, p + 1)}"
        return f"({s})" if parent > p else s
    raise TypeError(f"not an expression node: {node!r}")


def free_variables(node: Expr) -> set:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, (Num, Eps, Pi)):
        return set()
    if isinstance(node, (Neg, Call)):
        return free_variables(node.operand if isinstance(node, Neg) else node.arg)
    if isinstance(node, Pow):
        return free_variables(node.base)
    return free_variables(node.left) | free_variables(node.right)

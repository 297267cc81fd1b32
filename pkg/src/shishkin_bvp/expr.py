"""Tiny arithmetic language for coefficient functions of x.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?
    atom   := number | 'x' | func '(' expr ')' | '(' expr ')'
    func   := sin | cos | exp | ln | sqrt | abs

'^' is right-associative and binds tighter than unary minus, so
``-x^2 == -(x^2)`` while ``2^-1 == 0.5``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import EvaluationError

FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "ln": np.log,
    "sqrt": np.sqrt,
    "abs": np.abs,
}


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text


class Expr:
    """Base AST node.  Nodes evaluate on floats or numpy arrays."""

    def evaluate(self, x):
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class Num(Expr):
    value: float

    def evaluate(self, x):
        return self.value + 0.0 * np.asarray(x, dtype=float) if np.ndim(x) else self.value

    def to_text(self):
        return repr(self.value)


@dataclass(frozen=True)
class Var(Expr):
    def evaluate(self, x):
        return x

    def to_text(self):
        return "x"


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr

    def evaluate(self, x):
        return -self.operand.evaluate(x)

    def to_text(self):
        return f"(-{self.operand.to_text()})"


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def evaluate(self, x):
        lhs = self.left.evaluate(x)
        rhs = self.right.evaluate(x)
        with np.errstate(all="ignore"):
            if self.op == "+":
                out = lhs + rhs
            elif self.op == "-":
                out = lhs - rhs
            elif self.op == "*":
                out = lhs * rhs
            elif self.op == "/":
                if np.any(np.asarray(rhs) == 0):
                    raise EvaluationError(f"division by zero in {self.to_text()}")
                out = np.divide(lhs, rhs)
            else:
                out = np.power(np.asarray(lhs, dtype=float), rhs)
        return _finite(out, self)

    def to_text(self):
        return f"({self.left.to_text()} {self.op} {self.right.to_text()})"


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr

    def evaluate(self, x):
        value = self.arg.evaluate(x)
        if self.func == "ln" and np.any(np.asarray(value) <= 0):
            raise EvaluationError(f"logarithm of a nonpositive value in {self.to_text()}")
        if self.func == "sqrt" and np.any(np.asarray(value) < 0):
            raise EvaluationError(f"square root of a negative value in {self.to_text()}")
        with np.errstate(all="ignore"):
            out = FUNCTIONS[self.func](value)
        return _finite(out, self)

    def to_text(self):
        return f"{self.func}({self.arg.to_text()})"


def _finite(value, node):
    if not np.all(np.isfinite(value)):
        raise EvaluationError(f"non-finite value in {node.to_text()}")
    return value


_TOKEN = re.compile(r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, expected: str):
        kind, value, offset = self.peek()
        found = "end of input" if kind == "end" else repr(value)
        raise ExprSyntaxError(f"expected {expected}, found {found}", offset, self.text)

    def expect_op(self, op: str):
        kind, value, _ = self.peek()
        if kind != "op" or value != op:
            self.error(repr(op))
        self.advance()

    def parse(self) -> Expr:
        node = self.expr()
        if self.peek()[0] != "end":
            self.error("operator or end of input")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.advance()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        if self.peek()[:2] == ("op", "-"):
            self.advance()
            return Neg(self.factor())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.advance()
            return BinOp("^", base, self.factor())
        return base

    def atom(self):
        kind, value, offset = self.peek()
        if kind == "num":
            self.advance()
            number = float(value)
            if not math.isfinite(number):
                raise ExprSyntaxError(f"number {value} out of range", offset, self.text)
            return Num(number)
        if kind == "name":
            if value == "x":
                self.advance()
                return Var()
            if value in FUNCTIONS:
                self.advance()
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(value, arg)
            raise ExprSyntaxError(f"unknown name {value!r}", offset, self.text)
        if kind == "op" and value == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        self.error("number, 'x', function or '('")


def parse_expression(text: str) -> Expr:
    """Parse ``text`` into an AST; raises ExprSyntaxError with a 0-based offset."""
    return _Parser(text).parse()


def eval_expression(expr: Expr, x: float) -> float:
    return float(expr.evaluate(float(x)))


class ExprField:
    """A parsed expression usable as a problem coefficient."""

    def __init__(self, text: str):
        self.text = text
        self.expr = parse_expression(text)

    def __call__(self, x):
        return self.expr.evaluate(x)

    def __repr__(self):
        return f"ExprField({self.text!r})"

"""Recursive-descent parser and evaluator for hypercomplex expressions.

Grammar (unary minus binds tighter than * and /, which bind tighter than
+ and -; binary operators are left associative)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | primary
    primary := NUMBER [i|j|k] | i | j | k | '_' | NAME '(' expr ')' | '(' expr ')'

A number immediately followed by a basis letter is a single literal, so
``2i`` is 2*i.  ``_`` is the previous result in the REPL.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra, HNum, conjugate, invert, mul
from .analytic import DEFAULT_SERIES, SeriesConfig, cos, exp, sin

FUNCTIONS = ("exp", "sin", "cos", "conj")
BASIS_LETTERS = {"i": 1, "j": 2, "k": 3}


class ExpressionSyntaxError(ValueError):
    def __init__(self, message: str, position: int, expected: str = ""):
        super().__init__(f"{message} at position {position}" + (f" (expected {expected})" if expected else ""))
        self.position = position
        self.expected = expected


class EvaluationError(ValueError):
    pass


# -- AST ------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction
    basis: int = 0


@dataclass(frozen=True)
class Basis:
    index: int


@dataclass(frozen=True)
class Last:
    pass


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    pos: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class Call:
    name: str
    arg: object
    pos: int = field(default=-1, compare=False)


# -- tokenizer ------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?P<unit>[ijk](?![A-Za-z0-9_]))?"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/()])"
    r")"
)


@dataclass(frozen=True)
class Token:
    kind: str      # num, name, op, end
    text: str
    pos: int
    value: object = None


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup) if m.lastgroup != "unit" else m.start("num")
        if m.group("num") is not None:
            unit = m.group("unit")
            tokens.append(Token("num", m.group(0).strip(), start,
                                (Fraction(m.group("num")), BASIS_LETTERS[unit] if unit else 0)))
        elif m.group("name") is not None:
            tokens.append(Token("name", m.group("name"), start))
        else:
            tokens.append(Token("op", m.group("op"), start))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at_op(self, *ops) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            raise ExpressionSyntaxError(f"unexpected {self.describe()}", self.tok.pos, repr(op))
        return self.advance()

    def describe(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            raise ExpressionSyntaxError(f"unexpected {self.describe()}", self.tok.pos, "operator or end of input")
        return node

    def expr(self):
        node = self.term()
        while self.at_op("+", "-"):
            t = self.advance()
            node = BinOp(t.text, node, self.term(), t.pos)
        return node

    def term(self):
        node = self.unary()
        while self.at_op("*", "/"):
            t = self.advance()
            node = BinOp(t.text, node, self.unary(), t.pos)
        return node

    def unary(self):
        if self.at_op("-"):
            self.advance()
            return Neg(self.unary())
        return self.primary()

    def primary(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(*t.value)
        if t.kind == "name":
            self.advance()
            if t.text in BASIS_LETTERS:
                return Basis(BASIS_LETTERS[t.text])
            if t.text == "_":
                return Last()
            if t.text in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(t.text, arg, t.pos)
            raise ExpressionSyntaxError(f"unknown name {t.text!r}", t.pos, "i, j, k, _ or " + ", ".join(FUNCTIONS))
        if self.at_op("("):
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        raise ExpressionSyntaxError(f"unexpected {self.describe()}", t.pos, "number, basis letter, function or '('")


def parse_expression(text: str):
    return _Parser(text).parse()


# -- printing -------------------------------------------------------------------

def _decimal(q: Fraction) -> str:
    num, den = q.numerator, q.denominator
    scale = 0
    while 10 ** scale % den:
        scale += 1
        if scale > 400:
            raise ValueError(f"{q} has no finite decimal form")
    digits = str(abs(num) * (10 ** scale // den))
    if scale:
        digits = digits.rjust(scale + 1, "0")
        digits = digits[:-scale] + "." + digits[-scale:]
    return ("-" if num < 0 else "") + digits


def to_source(node) -> str:
    """Fully parenthesised source text that parses back to an equal tree."""
    if isinstance(node, Num):
        return _decimal(node.value) + ("", "i", "j", "k")[node.basis]
    if isinstance(node, Basis):
        return "ijk"[node.index - 1]
    if isinstance(node, Last):
        return "_"
    if isinstance(node, Neg):
        return "-" + to_source(node.operand)
    if isinstance(node, BinOp):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, Call):
        return f"{node.name}({to_source(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation -----------------------------------------------------------------

def _same_mode(x: HNum, y: HNum) -> tuple[HNum, HNum]:
    if x.exact == y.exact:
        return x, y
    return x.to_float(), y.to_float()


def evaluate(node, alg: Algebra, last: HNum | None = None, series: SeriesConfig = DEFAULT_SERIES) -> HNum:
    """Evaluate under ``alg``; exact until a transcendental function forces floats."""

    def ev(n):
        if isinstance(n, Num):
            return HNum.basis(n.basis) * n.value
        if isinstance(n, Basis):
            return HNum.basis(n.index)
        if isinstance(n, Last):
            if last is None:
                raise EvaluationError("no previous result for '_'")
            return last
        if isinstance(n, Neg):
            return -ev(n.operand)
        if isinstance(n, BinOp):
            x, y = _same_mode(ev(n.left), ev(n.right))
            if n.op == "+":
                return x + y
            if n.op == "-":
                return x - y
            if n.op == "*":
                return mul(alg, x, y)
            return mul(alg, x, invert(alg, y))
        if isinstance(n, Call):
            arg = ev(n.arg)
            if n.name == "conj":
                return conjugate(alg, arg, "full")
            return {"exp": exp, "sin": sin, "cos": cos}[n.name](alg, arg, series)
        raise TypeError(f"not an expression node: {n!r}")

    return ev(node)

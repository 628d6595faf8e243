"""Recursive-descent parser for density expressions and assertions.

Precedence, tightest first: ``*`` between expressions, scalar application
``r * e``, ``+``/``-``; then comparisons, ``!``, ``&``, ``|``, ``=>`` (right
associative).  Rationals are exact (``3`` or ``3/4``); decimals are rejected.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..flags import parse_flag
from ..graphs import GraphFormatError, parse_graph
from .ast import (
    Add,
    And,
    Assertion,
    Atom,
    Const,
    Expr,
    FalseA,
    Geq,
    Implies,
    Mul,
    Not,
    One,
    Or,
    Scale,
    TrueA,
    Zero,
    assertion_type,
    eq,
    expr_type,
    gt,
    leq,
    lt,
    neg,
    sub,
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


_TOKEN_PATTERNS = [
    ("FLAG", r"f:\d+:\{[^}]*\}\|t:\d+:\{[^}]*\}\|theta:[\d,]*"),
    ("GRAPH", r"g:\d+:\{[^}]*\}"),
    ("DECIMAL", r"\d+\.\d*|\.\d+"),
    ("INT", r"\d+"),
    ("KEYWORD", r"true\b|false\b"),
    ("OP", r">=|<=|=>|[=<>!|&+\-*/()]"),
    ("WS", r"\s+"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pat})" for name, pat in _TOKEN_PATTERNS))


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind == "DECIMAL":
            raise ParseError("decimal constants are not allowed; write an exact fraction", pos)
        if kind != "WS":
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("EOF", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # token helpers
    def peek(self, offset: int = 0) -> Token:
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind in ("OP", "KEYWORD") and t.text == text

    def take(self) -> Token:
        t = self.peek()
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            t = self.peek()
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.pos)
        return self.take()

    def expect_eof(self) -> None:
        t = self.peek()
        if t.kind != "EOF":
            raise ParseError(f"unexpected {t.text!r}", t.pos)

    # expressions
    def expr(self) -> Expr:
        left = self.term()
        while self.at("+") or self.at("-"):
            op = self.take().text
            right = self.term()
            left = Add(left, right) if op == "+" else sub(left, right)
        return left

    def _rational_ahead(self) -> int:
        """Length in tokens of a rational literal at the cursor, 0 if none."""
        if self.peek().kind != "INT":
            return 0
        if self.peek(1).text == "/" and self.peek(2).kind == "INT":
            return 3
        return 1

    def term(self) -> Expr:
        n = self._rational_ahead()
        if n and self.peek(n).text == "*":
            r = self.rational()
            self.expect("*")
            return Scale(r, self.term())
        left = self.unary()
        while self.at("*"):
            self.take()
            left = Mul(left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.at("-"):
            self.take()
            return neg(self.unary())
        return self.primary()

    def rational(self) -> Fraction:
        num = self.take()
        if num.kind != "INT":
            raise ParseError("expected an integer", num.pos)
        if self.at("/") and self.peek(1).kind == "INT":
            self.take()
            den = self.take()
            if int(den.text) == 0:
                raise ParseError("zero denominator", den.pos)
            return Fraction(int(num.text), int(den.text))
        return Fraction(int(num.text))

    def primary(self) -> Expr:
        t = self.peek()
        if t.kind == "GRAPH":
            self.take()
            try:
                return Atom(parse_graph(t.text))
            except (GraphFormatError, ValueError) as exc:
                raise ParseError(str(exc), t.pos) from None
        if t.kind == "FLAG":
            self.take()
            try:
                return Atom(parse_flag(t.text))
            except (GraphFormatError, ValueError) as exc:
                raise ParseError(str(exc), t.pos) from None
        if t.kind == "INT":
            r = self.rational()
            if r == 0:
                return Zero()
            if r == 1:
                return One()
            return Const(r)
        if self.at("("):
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(f"expected an expression, found {t.text or 'end of input'!r}", t.pos)

    # assertions
    def assertion(self) -> Assertion:
        left = self.disjunction()
        if self.at("=>"):
            self.take()
            return Implies(left, self.assertion())
        return left

    def disjunction(self) -> Assertion:
        left = self.conjunction()
        while self.at("|"):
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Assertion:
        left = self.negation()
        while self.at("&"):
            self.take()
            left = And(left, self.negation())
        return left

    def negation(self) -> Assertion:
        if self.at("!"):
            self.take()
            return Not(self.negation())
        if self.at("true"):
            self.take()
            return TrueA()
        if self.at("false"):
            self.take()
            return FalseA()
        if self.at("("):
            # Either a parenthesized assertion or a comparison whose left side
            # starts with a parenthesized expression; try the comparison first.
            save = self.i
            try:
                return self.comparison()
            except ParseError:
                self.i = save
            self.take()
            a = self.assertion()
            self.expect(")")
            return a
        return self.comparison()

    def comparison(self) -> Assertion:
        left = self.expr()
        t = self.peek()
        ops = {">=": Geq, "<=": leq, "=": eq, ">": gt, "<": lt}
        if t.kind == "OP" and t.text in ops:
            self.take()
            right = self.expr()
            return ops[t.text](left, right)
        raise ParseError(f"expected a comparison operator, found {t.text or 'end of input'!r}", t.pos)


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    e = p.expr()
    p.expect_eof()
    expr_type(e)
    return e


def parse_assertion(text: str) -> Assertion:
    p = _Parser(text)
    a = p.assertion()
    p.expect_eof()
    assertion_type(a)
    return a

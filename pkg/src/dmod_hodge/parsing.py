"""Polynomial expression parsing for the command line.

Grammar: integers, rationals a/b, declared variables, + - * ^ with
nonnegative integer exponents, parentheses, unary minus.  Implicit
multiplication is not accepted: "2x" and "x y" are syntax errors, which
keeps "xy" unambiguous (an unknown variable, not x*y).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .dmod import validate_variables
from .errors import PolyParseError, UnknownVariableError
from .polys import Poly

_TOKEN = re.compile(
    r"\s*(?:(?P<rat>\d+\s*/\s*\d+)|(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)"
    r"|(?P<op>[-+*^()]))"
)


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            # skip past any whitespace to point at the offender
            bad = pos + len(src[pos:]) - len(src[pos:].lstrip())
            if bad >= len(src):
                break
            raise PolyParseError(f"unexpected character {src[bad]!r}", bad)
        kind = m.lastgroup
        text = m.group(kind)
        out.append((kind, text, m.start(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, src: str, vars: tuple[str, ...]):
        self.src = src
        self.vars = vars
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        if t is None:
            raise PolyParseError("unexpected end of input", len(self.src))
        self.i += 1
        return t

    def expr(self) -> Poly:
        sign = 1
        t = self.peek()
        while t is not None and t[0] == "op" and t[1] in "+-":
            if t[1] == "-":
                sign = -sign
            self.take()
            t = self.peek()
        acc = self.term() * sign
        while True:
            t = self.peek()
            if t is None or t[0] != "op" or t[1] not in "+-":
                return acc
            self.take()
            rhs = self.term()
            acc = acc + rhs if t[1] == "+" else acc - rhs

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            t = self.peek()
            if t is None or t[0] != "op" or t[1] != "*":
                return acc
            self.take()
            acc = acc * self.factor()

    def factor(self) -> Poly:
        base = self.atom()
        t = self.peek()
        if t is not None and t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "int":
                raise PolyParseError("exponent must be a nonnegative integer", e[2])
            return base ** int(e[1])
        return base

    def atom(self) -> Poly:
        kind, text, pos = self.take()
        if kind == "int":
            return Poly.constant(Fraction(int(text)), self.vars)
        if kind == "rat":
            num, den = (part.strip() for part in text.split("/"))
            if int(den) == 0:
                raise PolyParseError("zero denominator", pos)
            return Poly.constant(Fraction(int(num), int(den)), self.vars)
        if kind == "name":
            if text not in self.vars:
                raise UnknownVariableError(text, pos)
            return Poly.variable(text, self.vars)
        if kind == "op" and text == "(":
            inner = self.expr()
            t = self.peek()
            if t is None or t[1] != ")":
                raise PolyParseError("expected closing parenthesis",
                                     t[2] if t else len(self.src))
            self.take()
            return inner
        if kind == "op" and text == "-":
            return -self.atom()
        raise PolyParseError(f"unexpected {text!r}", pos)


def parse_poly(src: str, vars: Sequence[str]) -> Poly:
    """Parse an expression over the declared variables."""
    vars = validate_variables(vars)
    p = _Parser(src, vars)
    out = p.expr()
    t = p.peek()
    if t is not None:
        raise PolyParseError(f"trailing input starting at {t[1]!r}", t[2])
    return out


_RATIONAL = re.compile(r"[+-]?\d+(?:\s*/\s*\d+)?\Z")


def parse_rational(src: str) -> Fraction:
    """Strict a/b or integer literal, sign allowed; no decimals."""
    body = src.strip()
    if not _RATIONAL.match(body):
        raise PolyParseError(f"not a rational number: {src!r}", 0)
    try:
        return Fraction(body.replace(" ", ""))
    except ZeroDivisionError:
        raise PolyParseError(f"zero denominator: {src!r}", 0) from None

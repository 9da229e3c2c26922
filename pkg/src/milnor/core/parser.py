"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace ignored, no implicit multiplication)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' factor) | ('/' uint))*
    factor := base ['^' uint]
    base   := uint | name | '(' expr ')'

Division is only by a positive integer literal; it exists so that the
canonical printed form of rational polynomials parses back.
"""

from __future__ import annotations

import re
from typing import Sequence

from .polynomial import Polynomial, PolynomialError, UnknownVariableError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class ParseError(PolynomialError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.vars = tuple(variables)

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", pos)

    def uint(self) -> int:
        kind, val, pos = self.take()
        if kind != "int":
            raise ParseError(f"expected unsigned integer, found {val or 'end of input'!r}", pos)
        return int(val)

    def expr(self) -> Polynomial:
        negate = False
        if self.peek()[:2] == ("op", "-"):
            self.take()
            negate = True
        result = self.term()
        if negate:
            result = -result
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            _, op, _ = self.take()
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            _, op, pos = self.take()
            if op == "*":
                result = result * self.factor()
            else:
                divisor = self.uint()
                if divisor == 0:
                    raise ParseError("division by zero", pos)
                result = result / divisor
        return result

    def factor(self) -> Polynomial:
        base = self.base()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            base = base ** self.uint()
        return base

    def base(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "int":
            return Polynomial.constant(int(val), self.vars)
        if kind == "name":
            if val not in self.vars:
                raise UnknownVariableError(f"unknown variable {val!r} at offset {pos}")
            return Polynomial.variable(val, self.vars)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse ``text`` into a Polynomial over ``variables``."""
    p = _Parser(text, variables)
    result = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", pos)
    return result

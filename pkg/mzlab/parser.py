"""Recursive-descent parser for polynomial input.

Grammar (whitespace insignificant, no implicit multiplication):

    expr        := term (('+' | '-') term)*
    term        := factor ('*' factor)*
    factor      := coefficient | var ('^' int)? | '(' expr ')' | '-' factor
    coefficient := int ('/' int)?

``int`` may carry a leading ``-``. Over ``qlaurent`` the name ``t`` is the
coefficient generator unless it is declared as a variable.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from mzlab.errors import NegativeExponentWithoutLaurent, ParseError, RingMismatch, UnknownVariable
from mzlab.poly import Poly
from mzlab.rings import CoeffRing, LaurentTRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            break
        number, name, op = match.groups()
        start = match.start(match.lastindex) if match.lastindex else pos
        if number is not None:
            tokens.append(Token("int", number, start))
        elif name is not None:
            tokens.append(Token("name", name, start))
        elif op is not None:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r}", start)
            tokens.append(Token("op", op, start))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class PolyParser:
    def __init__(self, text: str, ring: CoeffRing, variables: Sequence[str], laurent: bool) -> None:
        self.text = text
        self.ring = ring
        self.variables = tuple(variables)
        self.laurent = laurent
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, text: str) -> Token:
        token = self.current
        if token.kind != "op" or token.text != text:
            found = token.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", token.pos)
        return self.advance()

    def is_op(self, text: str) -> bool:
        return self.current.kind == "op" and self.current.text == text

    def constant(self, value) -> Poly:
        return Poly.constant(self.ring, self.variables, value, self.laurent)

    def parse(self) -> Poly:
        result = self.expr()
        if self.current.kind != "end":
            raise ParseError(f"unexpected {self.current.text!r}", self.current.pos)
        return result

    def expr(self) -> Poly:
        result = self.term()
        while self.is_op("+") or self.is_op("-"):
            op = self.advance().text
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Poly:
        result = self.factor()
        while self.is_op("*"):
            self.advance()
            result = result * self.factor()
        return result

    def factor(self) -> Poly:
        token = self.current
        if self.is_op("("):
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        if token.kind == "int" or (self.is_op("-") and self.tokens[self.index + 1].kind == "int"):
            return self.coefficient()
        if self.is_op("-"):
            self.advance()
            return -self.factor()
        if token.kind == "name":
            return self.power_of_name()
        found = token.text or "end of input"
        raise ParseError(f"expected a coefficient, variable or '(', found {found!r}", token.pos)

    def integer(self) -> int:
        start = self.current
        sign = 1
        if self.is_op("-"):
            self.advance()
            sign = -1
        token = self.current
        if token.kind != "int":
            raise ParseError("expected an integer", token.pos if token.kind != "end" else start.pos)
        self.advance()
        return sign * int(token.text)

    def coefficient(self) -> Poly:
        start = self.current.pos
        num = self.integer()
        den = 1
        if self.is_op("/"):
            self.advance()
            den = self.integer()
        try:
            value = self.ring.from_fraction(num, den)
        except RingMismatch as exc:
            raise ParseError(str(exc), start) from None
        return self.constant(value)

    def power_of_name(self) -> Poly:
        token = self.advance()
        exponent = 1
        exp_pos = token.pos
        if self.is_op("^"):
            self.advance()
            exp_pos = self.current.pos
            exponent = self.integer()
        if token.text in self.variables:
            if exponent < 0 and not self.laurent:
                raise NegativeExponentWithoutLaurent(f"negative exponent on {token.text}", exp_pos)
            index = self.variables.index(token.text)
            exp = tuple(exponent if i == index else 0 for i in range(len(self.variables)))
            return Poly.monomial(self.ring, self.variables, exp, laurent=self.laurent)
        if isinstance(self.ring, LaurentTRing) and token.text == LaurentTRing.symbol:
            return self.constant(self.ring.monomial(exponent, Fraction(1)))
        raise UnknownVariable(f"unknown variable {token.text!r}", token.pos)


def parse_poly(text: str, ring: CoeffRing, variables: Sequence[str], laurent: bool = False) -> Poly:
    return PolyParser(text, ring, variables, laurent).parse()


def parse_images(text: Optional[str], ring: CoeffRing, variables: Sequence[str], laurent: bool) -> list[Poly]:
    """Parse ``;``-separated generator images, one per variable."""
    if text is None:
        return []
    chunks = text.split(";")
    if len(chunks) != len(variables):
        raise ParseError(f"expected {len(variables)} images separated by ';', got {len(chunks)}")
    return [parse_poly(chunk, ring, variables, laurent) for chunk in chunks]

"""Recursive-descent parser for phase expressions.

Grammar (whitespace or '*' multiply, '^' or '**' raise to a non-negative integer)::

    expr   := term (('+' | '-') term)*
    term   := unary (['*'] unary)*
    unary  := ('+' | '-') unary | power
    power  := atom [('^' | '**') ['-'] INT]
    atom   := NUMBER | VAR | '(' expr ')'

NUMBER is an integer, a rational literal ``3/4`` or a decimal ``0.5`` (read exactly).
VAR is ``x1``, ``x2`` or the aliases ``y1``, ``y2``.
"""

import re
from fractions import Fraction
from typing import List, NamedTuple

from algebra.polynomial import BivariatePolynomial
from errors import NegativeExponentError, PolynomialSyntaxError

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+/\d+|\d+\.\d+|\d+)|(?P<var>[xy][12])|(?P<pow>\*\*|\^)|(?P<op>[-+*()]))"
)


class Token(NamedTuple):
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN_RE.match(text, position)
        if not match:
            start = position + (len(text[position:]) - len(text[position:].lstrip()))
            raise PolynomialSyntaxError(f"Unexpected character {text[start]!r}", start, text)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def error(self, message: str) -> PolynomialSyntaxError:
        return PolynomialSyntaxError(message, self.current.position, self.text)

    def parse(self) -> BivariatePolynomial:
        if self.current.kind == "end":
            raise self.error("Empty expression")
        result = self.expr()
        if self.current.kind != "end":
            raise self.error(f"Unexpected token {self.current.text!r}")
        return result

    def expr(self) -> BivariatePolynomial:
        result = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            sign = self.advance().text
            rhs = self.term()
            result = result + rhs if sign == "+" else result - rhs
        return result

    def _starts_atom(self) -> bool:
        token = self.current
        return token.kind in ("number", "var") or (token.kind == "op" and token.text == "(")

    def term(self) -> BivariatePolynomial:
        result = self.unary()
        while True:
            if self.current.kind == "op" and self.current.text == "*":
                self.advance()
                result = result * self.unary()
            elif self._starts_atom():
                result = result * self.unary()
            else:
                return result

    def unary(self) -> BivariatePolynomial:
        if self.current.kind == "op" and self.current.text in "+-":
            sign = self.advance().text
            operand = self.unary()
            return operand if sign == "+" else -operand
        return self.power()

    def power(self) -> BivariatePolynomial:
        base = self.atom()
        if self.current.kind != "pow":
            return base
        self.advance()
        if self.current.kind == "op" and self.current.text == "-":
            raise NegativeExponentError("Negative exponent", self.current.position, self.text)
        token = self.current
        if token.kind != "number" or not token.text.isdigit():
            raise self.error("Exponent must be a non-negative integer")
        self.advance()
        return base ** int(token.text)

    def atom(self) -> BivariatePolynomial:
        token = self.current
        if token.kind == "number":
            self.advance()
            try:
                return BivariatePolynomial.constant(Fraction(token.text))
            except ZeroDivisionError:
                raise PolynomialSyntaxError("Zero denominator", token.position, self.text)
        if token.kind == "var":
            self.advance()
            return BivariatePolynomial.x1() if token.text[1] == "1" else BivariatePolynomial.x2()
        if token.kind == "op" and token.text == "(":
            self.advance()
            inner = self.expr()
            if not (self.current.kind == "op" and self.current.text == ")"):
                raise self.error("Expected ')'")
            self.advance()
            return inner
        if token.kind == "end":
            raise self.error("Unexpected end of expression")
        raise self.error(f"Unexpected token {token.text!r}")


def parse_polynomial(text: str) -> BivariatePolynomial:
    """
    Parse a phase expression into canonical sparse form.

    Args:
        text: Expression such as "x2^2 - 2 x1^2 x2 + x1^4 + x1^5"

    Returns:
        The polynomial; "0" gives the empty term map

    Raises:
        PolynomialSyntaxError: On malformed input, with the offending position
        NegativeExponentError: On a negative exponent
    """
    return _Parser(text).parse()

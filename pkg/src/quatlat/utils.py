"""Utility functions for quatlat: logging and polynomial parsing."""

import logging
import re
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Sequence

from .errors import ParseError
from .exact import Poly

logger = logging.getLogger(__name__)


def setup_logging(level: str = "INFO") -> None:
    """Set up logging configuration.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR)
    """
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )


# -------------------------------------------------------------------------
# Polynomial string syntax
# -------------------------------------------------------------------------

class Token(NamedTuple):
    kind: str
    text: str
    position: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\*\*|[-+*^()]))")


def _tokenize(text: str) -> Iterator[Token]:
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ParseError(text, pos, "unexpected character")
        number, name, op = match.groups()
        start = match.start(match.lastindex or 0)
        if number is not None:
            yield Token("num", number, start)
        elif name is not None:
            yield Token("var", name, start)
        else:
            yield Token("op", "^" if op == "**" else op, start)
        pos = match.end()
    yield Token("end", "", len(text))


class _PolyParser:
    """Recursive-descent parser for integer-coefficient polynomials in one variable.

    Grammar::

        expr   := term (('+' | '-') term)*
        term   := ('+' | '-')? factor ('*'? factor)*
        factor := atom ('^' NUMBER)?
        atom   := NUMBER | VARIABLE | '(' expr ')'
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = list(_tokenize(text))
        self.index = 0
        self.variable = None

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _expect(self, kind: str, text: str = "") -> Token:
        token = self.current
        if token.kind != kind or (text and token.text != text):
            wanted = text or kind
            raise ParseError(self.text, token.position, f"expected {wanted!r}")
        return self._advance()

    def parse(self) -> Poly:
        if self.current.kind == "end":
            raise ParseError(self.text, 0, "empty polynomial")
        result = self._expr()
        if self.current.kind != "end":
            raise ParseError(self.text, self.current.position, "trailing input")
        return result

    def _expr(self) -> Poly:
        result = self._term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self._advance().text
            rhs = self._term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def _term(self) -> Poly:
        sign = 1
        if self.current.kind == "op" and self.current.text in "+-":
            sign = -1 if self._advance().text == "-" else 1
        result = self._factor()
        while True:
            token = self.current
            if token.kind == "op" and token.text == "*":
                self._advance()
                result = result * self._factor()
            elif token.kind in ("num", "var") or (token.kind == "op" and token.text == "("):
                # implicit product such as 10t^4
                result = result * self._factor()
            else:
                break
        return result * sign

    def _factor(self) -> Poly:
        base = self._atom()
        if self.current.kind == "op" and self.current.text == "^":
            self._advance()
            exponent = int(self._expect("num").text)
            base = base ** exponent
        return base

    def _atom(self) -> Poly:
        token = self.current
        if token.kind == "num":
            self._advance()
            return Poly.constant(int(token.text))
        if token.kind == "var":
            if self.variable is None:
                self.variable = token.text
            elif token.text != self.variable:
                raise ParseError(self.text, token.position,
                                 f"second variable {token.text!r}")
            self._advance()
            return Poly.gen()
        if token.kind == "op" and token.text == "(":
            self._advance()
            inner = self._expr()
            self._expect("op", ")")
            return inner
        raise ParseError(self.text, token.position, "expected number, variable or '('")


def parse_poly(text: str) -> Poly:
    """Parse an ASCII polynomial such as ``t^6-10*t^4+7*t^3+15*t^2-14*t+3``.

    Args:
        text: Polynomial in a single variable with integer coefficients

    Returns:
        Parsed polynomial

    Raises:
        ParseError: with the offending character position
    """
    return _PolyParser(text).parse()


def coefficients_to_strings(poly: Poly) -> List[str]:
    """Ascending coefficients as decimal strings (JSON wire format)."""
    return [str(c) for c in poly.coefficients]


def poly_from_strings(coefficients: Sequence[str]) -> Poly:
    """Inverse of coefficients_to_strings; accepts "a/b" rationals."""
    return Poly([Fraction(c) for c in coefficients])

"""Expression parser for curve input.

Grammar (authoritative):

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := 'x' | 'y' | rational | '(' expr ')' | '-' base
    rational := int ('/' uint)?

Exponents are nonnegative integer literals and implicit multiplication is not
allowed ("2x" is a syntax error).  The result is returned fully expanded.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegreeZeroError, ParseError, ZeroPolynomialError
from .poly import BivarPoly


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("number", text[i:j], i))
            i = j
        elif ch in "xy":
            tokens.append(_Token("var", ch, i))
            i += 1
        elif ch in "+-*^/()":
            tokens.append(_Token(ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expr(self) -> BivarPoly:
        acc = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            rhs = self.term()
            acc = acc + rhs if op.kind == "+" else acc - rhs
        return acc

    def term(self) -> BivarPoly:
        acc = self.factor()
        while self.peek().kind == "*":
            self.advance()
            acc = acc * self.factor()
        return acc

    def factor(self) -> BivarPoly:
        b = self.base()
        if self.peek().kind == "^":
            self.advance()
            tok = self.peek()
            if tok.kind != "number":
                raise ParseError("expected a nonnegative integer exponent", tok.pos)
            self.advance()
            b = b ** int(tok.text)
        return b

    def base(self) -> BivarPoly:
        tok = self.peek()
        if tok.kind == "var":
            self.advance()
            return BivarPoly.x() if tok.text == "x" else BivarPoly.y()
        if tok.kind == "number":
            self.advance()
            num = int(tok.text)
            if self.peek().kind == "/":
                self.advance()
                den_tok = self.peek()
                if den_tok.kind != "number":
                    raise ParseError("expected an integer denominator", den_tok.pos)
                self.advance()
                den = int(den_tok.text)
                if den == 0:
                    raise ParseError("zero denominator", den_tok.pos)
                return BivarPoly.constant(Fraction(num, den))
            return BivarPoly.constant(num)
        if tok.kind == "(":
            self.advance()
            inner = self.expr()
            closing = self.peek()
            if closing.kind != ")":
                raise ParseError("expected ')'", closing.pos)
            self.advance()
            return inner
        if tok.kind == "-":
            # negation wraps the whole factor: "-x^2" is -(x^2), which the
            # print/parse round trip requires
            self.advance()
            return -self.factor()
        raise ParseError("expected 'x', 'y', a rational, '(' or '-'", tok.pos)


def parse_poly(text: str) -> BivarPoly:
    """Parse an expression over x, y into a fully expanded polynomial.

    Raises ParseError (position-annotated) on malformed input, ZeroPolynomialError
    if the expression expands to 0 and DegreeZeroError for a nonzero constant.
    """
    parser = _Parser(_tokenize(text))
    result = parser.expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ParseError("expected end of input", trailing.pos)
    if result.is_zero():
        raise ZeroPolynomialError("expression expands to the zero polynomial")
    if result.is_constant():
        raise DegreeZeroError("expression expands to a nonzero constant")
    return result

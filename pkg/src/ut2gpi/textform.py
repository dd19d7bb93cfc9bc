"""Text syntax for sandwiched polynomials.

Grammar (whitespace-insensitive; juxtaposition of factors multiplies):

    poly     := ['+'|'-'] term (('+'|'-') term)*
    term     := [rational '*'] factor (['*'] factor)*
    factor   := var | const | '[' poly (',' poly)+ ']' | '(' poly ')'
              | factor '^' nat
    var      := 'x' nat
    const    := 'I' | 'E11' | 'E12' | 'E22'
    rational := nat ['/' nat]

Brackets with several arguments are left-normed commutators.  The constant
E11 is expanded as I - E22 on construction.  Printing emits one '*'-joined
product per monomial in the canonical order, which reparses to an equal
polynomial.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import E11, E12, E22, IDENT
from .genpoly import GenPolynomial, commutator, poly_mul

_CONSTS = {"I": IDENT, "E11": E11, "E12": E12, "E22": E22}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__("%s (line %d, column %d)" % (message, line, col))
        self.line = line
        self.col = col


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return "_Token(%r, %r)" % (self.kind, self.text)


def _tokenize(src: str) -> list[_Token]:
    out = []
    line, col = 1, 1
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            out.append(_Token("nat", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < n and src[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("variable needs an index, like x1", line, col)
            out.append(_Token("var", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (src[j].isalnum()):
                j += 1
            word = src[i:j]
            if word not in _CONSTS:
                raise ParseError("unknown symbol %r" % word, line, col)
            out.append(_Token("const", word, line, col))
            col += j - i
            i = j
            continue
        if ch in "+-*/^[](),":
            out.append(_Token(ch, ch, line, col))
            col += 1
            i += 1
            continue
        raise ParseError("unexpected character %r" % ch, line, col)
    out.append(_Token("end", "", line, col))
    return out


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self, kind=None) -> _Token:
        tok = self.tokens[self.pos]
        if kind is not None and tok.kind != kind:
            raise ParseError(
                "expected %s, found %r" % (kind, tok.text or "end of input"),
                tok.line,
                tok.col,
            )
        self.pos += 1
        return tok

    def parse_poly(self) -> GenPolynomial:
        sign = 1
        if self.peek().kind in ("+", "-"):
            sign = -1 if self.take().kind == "-" else 1
        total = self.parse_term().scale(sign)
        while self.peek().kind in ("+", "-"):
            sign = -1 if self.take().kind == "-" else 1
            total = total + self.parse_term().scale(sign)
        return total

    def parse_term(self) -> GenPolynomial:
        coeff = Fraction(1)
        if self.peek().kind == "nat":
            coeff = self.parse_rational()
            self.take("*")
        acc = self.parse_factor()
        while True:
            tok = self.peek()
            if tok.kind == "*":
                self.take()
                acc = poly_mul(acc, self.parse_factor())
            elif tok.kind in ("var", "const", "[", "("):
                acc = poly_mul(acc, self.parse_factor())
            else:
                break
        return acc.scale(coeff)

    def parse_rational(self) -> Fraction:
        num = int(self.take("nat").text)
        if self.peek().kind == "/":
            self.take()
            den_tok = self.take("nat")
            den = int(den_tok.text)
            if den == 0:
                raise ParseError("zero denominator", den_tok.line, den_tok.col)
            return Fraction(num, den)
        return Fraction(num)

    def parse_factor(self) -> GenPolynomial:
        tok = self.peek()
        if tok.kind == "var":
            self.take()
            base = GenPolynomial.var(int(tok.text[1:]))
        elif tok.kind == "const":
            self.take()
            base = GenPolynomial.const(_CONSTS[tok.text])
        elif tok.kind == "(":
            self.take()
            base = self.parse_poly()
            self.take(")")
        elif tok.kind == "[":
            self.take()
            args = [self.parse_poly()]
            while self.peek().kind == ",":
                self.take()
                args.append(self.parse_poly())
            self.take("]")
            if len(args) < 2:
                raise ParseError("commutator needs at least 2 arguments", tok.line, tok.col)
            base = commutator(*args)
        else:
            raise ParseError(
                "expected a factor, found %r" % (tok.text or "end of input"),
                tok.line,
                tok.col,
            )
        while self.peek().kind == "^":
            self.take()
            exp = int(self.take("nat").text)
            power = GenPolynomial.one()
            for _ in range(exp):
                power = poly_mul(power, base)
            base = power
        return base


def parse_poly(src: str) -> GenPolynomial:
    """Parse the grammar above to a polynomial."""
    parser = _Parser(_tokenize(src))
    poly = parser.parse_poly()
    end = parser.peek()
    if end.kind != "end":
        raise ParseError("trailing input %r" % end.text, end.line, end.col)
    return poly


def _monomial_text(xs, slots) -> str:
    factors = []
    if slots[0] != 0:
        factors.append(("E22", "E12")[slots[0] - 1])
    for v, s in zip(xs, slots[1:]):
        factors.append("x%d" % v)
        if s != 0:
            factors.append(("E22", "E12")[s - 1])
    if not factors:
        return "I"
    return "*".join(factors)


def poly_to_text(f: GenPolynomial) -> str:
    """Canonical text form: monomials in canonical order, explicit
    coefficients, '*'-joined factors."""
    if f.is_zero():
        return "0*I"
    parts = []
    for (xs, slots), coeff in f.sorted_terms():
        body = _monomial_text(xs, slots)
        mag = abs(coeff)
        if mag == 1 and body != "I":
            text = body
        elif mag.denominator == 1:
            text = "%d*%s" % (mag, body)
        else:
            text = "%d/%d*%s" % (mag.numerator, mag.denominator, body)
        if not parts:
            parts.append(text if coeff > 0 else "-" + text)
        else:
            parts.append(("+ " if coeff > 0 else "- ") + text)
    return " ".join(parts)

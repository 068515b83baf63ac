"""Recursive-descent parser for algebra and scalar expressions.

Grammar (whitespace insignificant)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' int)?
    atom   := integer | 'q' | 'e' | 'f' | 't' | 'C'
            | '[' int ']' ['!'] | '[' 't' ';' int ']' | '(' expr ')'

Division is only allowed by a nonzero scalar.  Negative powers are allowed
for invertible bases (nonzero scalars and pure powers of t); everything else
takes a nonnegative exponent.
"""

from __future__ import annotations

import re

from .algebra import E, F, T, AlgebraElement, bracket_t, casimir, power
from .scalars import Q, RatScalar, qfact, qint


class ParseError(ValueError):
    """Syntax error; ``position`` is the 0-based offset into the source text."""

    def __init__(self, message: str, text: str, position: int):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.position}^"


class UnknownSymbolError(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_SYMBOLS = {"q", "e", "f", "t", "C"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            toks.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            name = m.group(2)
            if name not in _SYMBOLS:
                raise UnknownSymbolError(f"unknown symbol {name!r}", text, m.start(2))
            toks.append(("sym", name, m.start(2)))
        elif m.group(3) is not None:
            toks.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, self.text, tok[2])

    def expect(self, value: str):
        tok = self.take()
        if tok[1] != value or tok[0] == "int":
            raise self.error(f"expected {value!r}", tok)
        return tok

    def parse(self) -> AlgebraElement:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        out = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise self.error(f"unexpected {tok[1]!r}")
        return out

    def expr(self) -> AlgebraElement:
        out = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> AlgebraElement:
        out = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op[1] == "*":
                out = out * rhs
            else:
                if not rhs.is_scalar() or rhs.is_zero():
                    raise self.error("division by a non-scalar or zero", op)
                out = out.scale(rhs.scalar_part().inverse())
        return out

    def unary(self) -> AlgebraElement:
        if self.peek() == ("op", "-", self.peek()[2]):
            self.take()
            return -self.unary()
        return self.power()

    def signed_int(self) -> int:
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        tok = self.take()
        if tok[0] != "int":
            raise self.error("expected an integer", tok)
        return sign * int(tok[1])

    def power(self) -> AlgebraElement:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            tok = self.take()
            k = self.signed_int()
            if k >= 0:
                return power(base, k)
            if base.is_scalar() and not base.is_zero():
                return AlgebraElement.from_scalar(base.scalar_part() ** k)
            terms = base.terms
            if len(terms) == 1:
                (m, c), = terms.items()
                if m.f_exp == 0 and m.e_exp == 0:
                    return AlgebraElement.monomial(0, m.t_exp * k, 0, c ** k)
            raise self.error("negative power of a non-invertible element", tok)
        return base

    def atom(self) -> AlgebraElement:
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            return AlgebraElement.from_scalar(int(val))
        if kind == "sym":
            if val == "q":
                return AlgebraElement.from_scalar(Q)
            if val == "e":
                return E
            if val == "f":
                return F
            if val == "t":
                return T
            return casimir()
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "op" and val == "[":
            if self.peek()[:2] == ("sym", "t"):
                self.take()
                self.expect(";")
                a = self.signed_int()
                self.expect("]")
                return bracket_t(a)
            n = self.signed_int()
            self.expect("]")
            if self.peek()[:2] == ("op", "!"):
                bang = self.take()
                if n < 0:
                    raise self.error("q-factorial of a negative integer", bang)
                return AlgebraElement.from_scalar(qfact(n))
            return AlgebraElement.from_scalar(qint(n))
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {val!r}", tok)


def parse_element(text: str) -> AlgebraElement:
    return _Parser(text).parse()


def parse_scalar(text: str) -> RatScalar:
    x = parse_element(text)
    if not x.is_scalar():
        raise ParseError("expression is not a scalar", text, 0)
    return x.scalar_part()


__all__ = ["ParseError", "UnknownSymbolError", "parse_element", "parse_scalar"]

"""Polynomial text grammar and canonical rendering.

    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    factor := var ['^' nat] | '(' poly ')' ['^' nat]
    coeff  := int | int '/' posint

Multiplication is always explicit; ``a10`` is a variable, never ``a1*0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from gmpy2 import mpq

from .poly import Poly, VarSet

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class ParseDiagnostic:
    offset: int
    message: str
    expected: frozenset = field(default_factory=frozenset)
    line: int | None = None

    def __str__(self) -> str:
        where = f"offset {self.offset}" if self.line is None else \
            f"line {self.line}, offset {self.offset}"
        text = f"{where}: {self.message}"
        if self.expected:
            text += f" (expected {', '.join(sorted(self.expected))})"
        return text


class ParseError(ValueError):
    def __init__(self, diagnostic: ParseDiagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


@dataclass
class _Tok:
    kind: str  # "int", "var", an operator character, or "end"
    text: str
    offset: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(ParseDiagnostic(_byte_offset(text, pos),
                                             f"unexpected character {text[pos]!r}"))
        kind = m.lastgroup
        start = m.start(kind)
        tok = m.group(kind)
        toks.append(_Tok(tok if kind == "op" else kind, tok, _byte_offset(text, start)))
        pos = m.end()
    toks.append(_Tok("end", "", _byte_offset(text, n)))
    return toks


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str, varset: VarSet):
        self.toks = _tokenize(text)
        self.i = 0
        self.vs = varset

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, tok: _Tok, message: str, expected=()):
        raise ParseError(ParseDiagnostic(tok.offset, message, frozenset(expected)))

    def parse(self) -> Poly:
        p = self.poly()
        tok = self.peek()
        if tok.kind != "end":
            if tok.kind == "/":
                self.fail(tok, "division is only allowed inside a rational coefficient")
            self.fail(tok, f"unexpected {tok.text!r}", {"'+'", "'-'", "'*'", "end of input"})
        return p

    def poly(self) -> Poly:
        sign = 1
        tok = self.peek()
        if tok.kind in ("+", "-"):
            self.take()
            sign = -1 if tok.kind == "-" else 1
        total = self.term() * sign
        while self.peek().kind in ("+", "-"):
            op = self.take()
            t = self.term()
            total = total + t if op.kind == "+" else total - t
        return total

    def term(self) -> Poly:
        tok = self.peek()
        if tok.kind == "int":
            value = self.coeff()
            acc = Poly.constant(self.vs, value)
        elif tok.kind in ("var", "("):
            acc = self.factor()
        else:
            self.fail(tok, "expected a term", {"integer", "variable", "'('"})
        while self.peek().kind == "*":
            self.take()
            acc = acc * self.factor()
        if self.peek().kind == "/":
            self.fail(self.peek(), "division is only allowed inside a rational coefficient")
        return acc

    def coeff(self) -> mpq:
        num = int(self.take().text)
        if self.peek().kind == "/":
            self.take()
            tok = self.peek()
            if tok.kind != "int":
                self.fail(tok, "expected a positive integer denominator", {"positive integer"})
            self.take()
            den = int(tok.text)
            if den == 0:
                self.fail(tok, "denominator must be positive", {"positive integer"})
            return mpq(num, den)
        return mpq(num)

    def factor(self) -> Poly:
        tok = self.take()
        if tok.kind == "var":
            if tok.text not in self.vs:
                self.fail(tok, f"unknown variable {tok.text!r}")
            base = Poly.variable(self.vs, tok.text)
        elif tok.kind == "(":
            base = self.poly()
            close = self.take()
            if close.kind != ")":
                self.fail(close, "unbalanced parenthesis", {"')'"})
        elif tok.kind == "int":
            self.fail(tok, "numeric factors must lead the term", {"variable", "'('"})
        else:
            self.fail(tok, "expected a factor", {"variable", "'('"})
        if self.peek().kind == "^":
            self.take()
            exp = self.peek()
            if exp.kind != "int":
                self.fail(exp, "expected natural number exponent", {"natural number"})
            self.take()
            base = base ** int(exp.text)
        return base


def parse_poly(text: str, varset: VarSet) -> Poly:
    if not text or not text.strip():
        raise ParseError(ParseDiagnostic(0, "empty polynomial text", frozenset({"term"})))
    return _Parser(text, varset).parse()


def _format_coeff(c: mpq) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def render_poly(p: Poly) -> str:
    """Canonical text: terms in descending grevlex order of the declared variables."""
    if p.is_zero():
        return "0"
    names = p.varset.names
    parts = []
    for exps, c in p.monomials():
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = _format_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(mag) + "*" + "*".join(factors)
        neg = c < 0
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def read_generator_file(path: str | Path, varset: VarSet) -> list[Poly]:
    """One polynomial per line; '#' starts a comment."""
    polys = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            polys.append(parse_poly(text, varset))
        except ParseError as exc:
            d = exc.diagnostic
            raise ParseError(ParseDiagnostic(d.offset, d.message, d.expected, lineno)) from None
    return polys

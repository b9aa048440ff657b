"""Text grammar for rings, ring elements, Laurent series and matrices.

    ring     := "Q" | "Q[" gen ("," gen)* "]"        gen := name "^" int
    series   := expr [":" "prec" int]
    expr     := term (("+" | "-") term)*
    term     := factor (("*" | "/") factor)*
    factor   := ("+" | "-") factor | atom ["^" ["-"] int]
    atom     := number | name | "t" | "(" expr ")"
    matrix   := row (";" row)*                       row := series ("," series)*

Whitespace is ignored.  Division and negative powers are only allowed
when the divisor (base) is a monomial c*x with c a nonzero rational and x
a power of t.  Every error carries the character offset where it occurred.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

from .errors import ParseError
from .laurent import LaurentSeries
from .ring import NilAlgebra

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.lastindex is None:
            break
        kind = ("num", "name", "op")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring=None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.ring = ring

    # -- token helpers --------------------------------------------------------

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message, pos=None):
        raise ParseError(message, self.text, self.tok[2] if pos is None else pos)

    def peek(self, value):
        return self.tok[0] != "end" and self.tok[1] == value

    def take(self, value=None, kind=None):
        k, v, p = self.tok
        if (value is not None and v != value) or (kind is not None and k != kind):
            want = repr(value) if value is not None else kind
            got = "end of input" if k == "end" else repr(v)
            self.error(f"expected {want}, found {got}")
        self.i += 1
        return v, p

    def integer(self, signed=False):
        neg = False
        if signed and self.peek("-"):
            self.take("-")
            neg = True
        v, _ = self.take(kind="num")
        return -int(v) if neg else int(v)

    def finish(self):
        if self.tok[0] != "end":
            self.error(f"unexpected {self.tok[1]!r}")

    # -- rings ----------------------------------------------------------------

    def ring_spec(self):
        name, pos = self.take(kind="name")
        if name != "Q":
            self.error("ring must start with 'Q'", pos)
        gens = []
        if self.peek("["):
            self.take("[")
            while True:
                g, gpos = self.take(kind="name")
                if g == "t":
                    self.error("'t' is reserved for the series variable", gpos)
                if g in (x for x, _ in gens):
                    self.error(f"duplicate generator {g!r}", gpos)
                self.take("^")
                _, epos = self.tok[1], self.tok[2]
                e = self.integer()
                if e < 1:
                    self.error("nilpotency order must be >= 1", epos)
                gens.append((g, e))
                if self.peek(","):
                    self.take(",")
                    continue
                self.take("]")
                break
        return NilAlgebra(gens)

    # -- expressions ------------------------------------------------------------

    def expr(self):
        value = self.term()
        while self.peek("+") or self.peek("-"):
            op, _ = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek("*") or self.peek("/"):
            op, pos = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                value = value * self._monomial_inverse(rhs, pos)
        return value

    def factor(self):
        if self.peek("-"):
            self.take("-")
            return -self.factor()
        if self.peek("+"):
            self.take("+")
            return self.factor()
        base = self.atom()
        if self.peek("^"):
            _, pos = self.take("^")
            k = self.integer(signed=True)
            if k < 0:
                base = self._monomial_inverse(base, pos)
                k = -k
            base = base ** k
        return base

    def atom(self):
        kind, v, pos = self.tok
        ring = self.ring
        if kind == "num":
            self.i += 1
            return LaurentSeries.constant(ring, int(v))
        if kind == "name":
            self.i += 1
            if v == "t":
                return LaurentSeries.t(ring)
            if v not in ring.names:
                self.error(f"unknown generator {v!r} for ring {ring}", pos)
            return LaurentSeries.constant(ring, ring.gen(v))
        if v == "(":
            self.i += 1
            value = self.expr()
            self.take(")")
            return value
        self.error("expected a number, generator, 't' or '('" if kind != "end" else "unexpected end of input")

    def _monomial_inverse(self, x, pos):
        items = list(x.coeffs.items())
        if x.is_exact and len(items) == 1:
            d, c = items[0]
            if c.is_constant() and c.is_unit():
                return LaurentSeries.monomial(x.ring, self.ring(1 / c.constant), -d)
        self.error("can only divide by (or invert) a monomial c*t^k", pos)

    def series(self):
        value = self.expr()
        if self.peek(":"):
            self.take(":")
            word, pos = self.take(kind="name")
            if word != "prec":
                self.error("expected 'prec'", pos)
            prec_pos = self.tok[2]
            p = self.integer(signed=True)
            if value.coeffs and max(value.coeffs) >= p:
                self.error(f"term of degree {max(value.coeffs)} at or beyond prec {p}", prec_pos)
            value = LaurentSeries(value.ring, value.coeffs, p)
        return value

    def matrix(self):
        rows = [[self.series()]]
        while True:
            if self.peek(","):
                self.take(",")
                rows[-1].append(self.series())
            elif self.peek(";"):
                self.take(";")
                rows.append([self.series()])
            else:
                break
        n = len(rows)
        for r, row in enumerate(rows):
            if len(row) != n:
                self.error(f"row {r + 1} has {len(row)} entries, expected {n} (square matrix)")
        return tuple(tuple(row) for row in rows)


def parse_ring(text: str) -> NilAlgebra:
    p = _Parser(text)
    ring = p.ring_spec()
    p.finish()
    return ring


def parse_series(text: str, ring: NilAlgebra) -> LaurentSeries:
    p = _Parser(text, ring)
    value = p.series()
    p.finish()
    return value


def parse_element(text: str, ring: NilAlgebra):
    p = _Parser(text, ring)
    value = p.expr()
    p.finish()
    if any(d != 0 for d in value.coeffs):
        for kind, v, pos in p.tokens:
            if v == "t":
                raise ParseError("'t' is not allowed in a ring element", text, pos)
    return value.coeff(0)


def parse_matrix(text: str, ring: NilAlgebra):
    p = _Parser(text, ring)
    value = p.matrix()
    p.finish()
    return value


def parse_rational(text: str):
    p = _Parser(text, NilAlgebra())
    value = p.expr()
    p.finish()
    if any(d != 0 for d in value.coeffs):
        raise ParseError("expected a rational number", text, 0)
    return mpq(value.coeff(0).constant)

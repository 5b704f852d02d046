"""Recursive-descent parser for equations F(y, y') and truncations in x.

Accepted syntax: numbers (integers, decimals, a/b via division), ``y``,
``y'`` or ``D(y)``, ``+ - * / ^`` (``**`` also works), parentheses,
implicit multiplication (``4y``), ``rootof(poly in z)`` for algebraic
constants and an optional ``lhs = rhs``.  Truncations additionally accept
``x`` with rational exponents, e.g. ``x^(2/3)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .numberfield import QQ, AlgElem, NumberField, adjoin_root
from .poly import BiPoly, UniPoly
from .series import INF, PuiseuxSeries


class ParseError(ValueError):
    def __init__(self, message, text, pos):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {message}")
        self.line, self.column = line, col


_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^(),'=]))")


@dataclass
class _Tok:
    kind: str      # num, id, op, end
    text: str
    pos: int


def _tokenize(text):
    toks, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            toks.append(_Tok("end", "", pos))
            return toks
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        kind = {1: "num", 2: "id", 3: "op"}[m.lastindex]
        tok = m.group(m.lastindex)
        toks.append(_Tok(kind, "^" if tok == "**" else tok, start))
        pos = m.end()


@dataclass
class InputEquation:
    source: str
    poly: BiPoly
    field: NumberField


class _Parser:
    """Evaluates while parsing.  ``mode`` is "equation", "series" or "z"."""

    def __init__(self, text, mode, field=QQ, roots=None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.mode = mode
        self.field = field
        self.roots = roots if roots is not None else {}

    # -- token helpers
    @property
    def tok(self):
        return self.toks[self.i]

    def take(self, text=None):
        t = self.tok
        if text is not None and t.text != text:
            self.fail(f"expected {text!r}" + (f" but found {t.text!r}" if t.text else " but reached the end"))
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        raise ParseError(msg, self.text, (tok or self.tok).pos)

    # -- values
    def const(self, c):
        if self.mode == "equation":
            return BiPoly.const(c, self.field, ("y", "p"))
        if self.mode == "series":
            return PuiseuxSeries.constant(c, self.field)
        return UniPoly([c], self.field, "z")

    def is_const(self, v):
        if isinstance(v, BiPoly):
            return v.is_constant()
        if isinstance(v, PuiseuxSeries):
            return all(e == 0 for e in v.terms)
        return v.degree <= 0

    def const_value(self, v):
        if isinstance(v, BiPoly):
            return v.terms.get((0, 0), v.field.zero())
        if isinstance(v, PuiseuxSeries):
            return v.terms.get(Fraction(0), v.field.zero())
        return v.coeff(0)

    # -- grammar
    def parse(self):
        left = self.expr()
        if self.tok.text == "=":
            self.take("=")
            right = self.expr()
            left = left - right
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.text!r}")
        return left

    def expr(self):
        v = self.term()
        while self.tok.text in ("+", "-"):
            op = self.take().text
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def _starts_atom(self):
        t = self.tok
        return t.kind in ("num", "id") or t.text == "("

    def term(self):
        v = self.unary()
        while True:
            if self.tok.text in ("*", "/"):
                op = self.take()
                w = self.unary()
                v = v * w if op.text == "*" else self.divide(v, w, op)
            elif self._starts_atom():
                v = v * self.unary()
            else:
                return v

    def divide(self, v, w, tok):
        if self.is_const(w):
            c = self.const_value(w)
            if c.is_zero():
                self.fail("division by zero", tok)
            return v * self.const(c.inverse())
        if isinstance(w, PuiseuxSeries) and len(w.terms) == 1:
            return v * w.inverse()
        what = {"equation": "not polynomial in y, y'", "series": "division by a non-monomial",
                "z": "not polynomial in z"}[self.mode]
        self.fail(what, tok)

    def unary(self):
        if self.tok.text == "-":
            self.take()
            return -self.unary()
        if self.tok.text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.text == "^":
            tok = self.take()
            e = self.exponent()
            return self.raise_to(base, e, tok)
        return base

    def exponent(self):
        sign = 1
        while self.tok.text in ("-", "+"):
            if self.take().text == "-":
                sign = -sign
        if self.tok.kind == "num":
            return sign * Fraction(self.take().text)
        if self.tok.text == "(":
            tok = self.take("(")
            sub = _Parser.__new__(_Parser)
            sub.__dict__.update(self.__dict__)
            sub.mode = "series"
            v = sub.expr()
            self.i = sub.i
            self.take(")")
            if not sub.is_const(v) or not sub.const_value(v).is_rational():
                self.fail("exponent must be a rational number", tok)
            return sign * sub.const_value(v).to_fraction()
        self.fail("expected an exponent")

    def raise_to(self, base, e, tok):
        if isinstance(base, PuiseuxSeries):
            if e.denominator == 1:
                if e >= 0:
                    return base.power(int(e))
                if len(base.terms) == 1:
                    return base.inverse().power(int(-e))
                self.fail("negative power of a non-monomial", tok)
            if len(base.terms) == 1:
                (ex, c), = base.terms.items()
                if c.is_rational() and c.to_fraction() == 1:
                    return PuiseuxSeries.monomial(c, ex * e, base.field)
            self.fail("fractional powers are only allowed for x", tok)
        if e.denominator != 1 or e < 0:
            self.fail("exponent must be a non-negative integer", tok)
        return base ** int(e)

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.take()
            return self.const(self.field(Fraction(t.text)))
        if t.text == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        if t.kind == "id":
            self.take()
            name = t.text
            if name == "rootof":
                return self.const(self.rootof(t))
            if name == "D" and self.tok.text == "(":
                self.take("(")
                inner = self.take()
                if inner.text != "y":
                    self.fail("D(...) only accepts y", inner)
                self.take(")")
                return self.var_p(t)
            if name == "y":
                if self.tok.text == "'":
                    self.take()
                    if self.tok.text == "'":
                        self.fail("only first-order equations are supported")
                    return self.var_p(t)
                return self.var_y(t)
            if name == "x" and self.mode == "series":
                return PuiseuxSeries.monomial(1, 1, self.field)
            if name == "z" and self.mode == "z":
                return UniPoly([0, 1], self.field, "z")
            for g_level, g in enumerate(self.field.gens):
                if g.name == name:
                    return self.const(self.field.gen(g_level))
            self.fail(f"unknown symbol {name!r}", t)
        if t.kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {t.text!r}")

    def var_y(self, tok):
        if self.mode != "equation":
            self.fail("y is not allowed here", tok)
        return BiPoly.var(0, self.field, ("y", "p"))

    def var_p(self, tok):
        if self.mode != "equation":
            self.fail("y' is not allowed here", tok)
        return BiPoly.var(1, self.field, ("y", "p"))

    def rootof(self, tok):
        self.take("(")
        start = self.tok.pos
        depth, j = 0, self.i
        while True:
            tt = self.toks[j]
            if tt.kind == "end":
                self.fail("unclosed rootof(", tok)
            if tt.text == "(":
                depth += 1
            elif tt.text == ")":
                if depth == 0:
                    break
                depth -= 1
            j += 1
        inner = self.text[start:self.toks[j].pos]
        key = re.sub(r"\s+", "", inner)
        if key not in self.roots:
            sub = _Parser(inner, "z", self.field, self.roots)
            try:
                poly = sub.parse()
            except ParseError as exc:
                raise ParseError(f"in rootof: {exc}", self.text, start) from None
            if poly.degree < 1:
                self.fail("rootof needs a non-constant polynomial in z", tok)
            try:
                fld, root = adjoin_root(poly.field, poly)
            except Exception as exc:   # reducible input or tower cap
                raise ParseError(f"rootof: {exc}", self.text, start) from None
            self.roots[key] = root
        root = self.roots[key]
        self.field = root.field if root.field.level >= self.field.level else self.field
        self.i = j
        self.take(")")
        return root


def parse_equation(text, field=QQ):
    """Parse F(y, y') into an :class:`InputEquation`."""
    p = _Parser(text, "equation", field)
    poly = p.parse()
    poly = poly.coerce_field(p.field)
    if poly.is_zero():
        raise ParseError("the equation is identically zero", text, 0)
    return InputEquation(text, poly, p.field)


def parse_series(text, field=QQ):
    """Parse a truncation such as ``1 + x`` or ``3/4*x^(2/3)`` into an exact series."""
    p = _Parser(text, "series", field)
    return p.parse()


def parse_value(text, field=QQ):
    """Parse a constant (used for initial values)."""
    p = _Parser(text, "series", field)
    v = p.parse()
    if not p.is_const(v):
        raise ParseError("expected a constant", text, 0)
    return p.const_value(v)


def render_equation(F):
    """Text form of F(y, y') that :func:`parse_equation` accepts."""
    return F.render(names=("y", "y'"))

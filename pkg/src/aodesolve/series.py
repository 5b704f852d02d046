"""Truncated Puiseux series with exact coefficients and tracked precision.

A :class:`PuiseuxSeries` stores its nonzero terms as a map from rational
exponents to :class:`~aodesolve.numberfield.AlgElem` coefficients and a
known order ``T``: every term with exponent below ``T`` is exact and
nothing is claimed beyond.  ``T = inf`` marks an exact (finite) series.
Every operation propagates ``T`` pessimistically, so a result never claims
a coefficient its inputs cannot determine.

Series at infinity are stored in the local variable ``z = 1/x``; the
``point`` tag only changes how they are rendered.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .numberfield import QQ, AlgElem, common_field

INF = math.inf


class OrderUnknownError(ValueError):
    """All known coefficients vanish but the series is only known to finite order."""


def _frac(e):
    return e if isinstance(e, Fraction) else Fraction(e)


def _min(*xs):
    return min(xs)


class PuiseuxSeries:
    __slots__ = ("terms", "T", "field", "point")

    def __init__(self, terms=None, T=INF, field=None, point="zero"):
        terms = terms or {}
        if field is None:
            fields = [c.field for c in terms.values() if isinstance(c, AlgElem)]
            field = common_field(*fields) if fields else QQ
        if T != INF:
            T = _frac(T)
        clean = {}
        for e, c in terms.items():
            e = _frac(e)
            if e >= T:
                continue
            c = AlgElem.coerce(c, field)
            if not c.is_zero():
                clean[e] = c
        self.terms = clean
        self.T = T
        self.field = field
        self.point = point

    # -- constructors
    @classmethod
    def constant(cls, c, field=QQ, T=INF, point="zero"):
        return cls({Fraction(0): c}, T, field, point)

    @classmethod
    def monomial(cls, c, e, field=QQ, T=INF, point="zero"):
        return cls({_frac(e): c}, T, field, point)

    @classmethod
    def zero(cls, field=QQ, T=INF, point="zero"):
        return cls({}, T, field, point)

    # -- inspection
    @property
    def ramification(self):
        return reduce(math.lcm, (e.denominator for e in self.terms), 1)

    def support(self):
        return sorted(self.terms)

    def coefficient(self, e):
        e = _frac(e)
        if e >= self.T:
            raise OrderUnknownError(f"coefficient of exponent {e} is beyond the known order {self.T}")
        return self.terms.get(e, self.field.zero())

    def is_zero_stub(self):
        return not self.terms

    def is_exact(self):
        return self.T == INF

    def order(self):
        if self.terms:
            return min(self.terms)
        if self.T == INF:
            return INF
        raise OrderUnknownError(f"order unknown: series vanishes up to x^{self.T}")

    def valuation_bound(self):
        """A lower bound for the true order (the order, or T for a zero stub)."""
        return min(self.terms) if self.terms else self.T

    def leading_coefficient(self):
        return self.terms[self.order()]

    def coerce_field(self, field):
        if field == self.field:
            return self
        return PuiseuxSeries(self.terms, self.T, field, self.point)

    def truncate(self, T):
        return PuiseuxSeries(self.terms, min(self.T, T), self.field, self.point)

    def with_point(self, point):
        return PuiseuxSeries(self.terms, self.T, self.field, point)

    def _pair(self, other):
        if not isinstance(other, PuiseuxSeries):
            other = PuiseuxSeries.constant(other, self.field, point=self.point)
        if other.point != self.point:
            raise ValueError("series expanded at different points")
        f = common_field(self.field, other.field)
        return self.coerce_field(f), other.coerce_field(f)

    # -- arithmetic
    def __add__(self, other):
        a, b = self._pair(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return PuiseuxSeries(terms, min(a.T, b.T), a.field, a.point)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries({e: -c for e, c in self.terms.items()}, self.T, self.field, self.point)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return PuiseuxSeries({e: v * c for e, v in self.terms.items()}, self.T,
                             common_field(self.field, c.field) if isinstance(c, AlgElem) else self.field,
                             self.point)

    def shift_exponents(self, m):
        """Multiply by x^m."""
        m = _frac(m)
        return PuiseuxSeries({e + m: c for e, c in self.terms.items()}, self.T + m,
                             self.field, self.point)

    def __mul__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return self.scale(AlgElem.coerce(other, self.field) if not isinstance(other, AlgElem)
                              else other)
        a, b = self._pair(other)
        va, vb = a.valuation_bound(), b.valuation_bound()
        T = min(a.T + vb, b.T + va)
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = e1 + e2
                if e >= T:
                    continue
                terms[e] = terms[e] + c1 * c2 if e in terms else c1 * c2
        return PuiseuxSeries(terms, T, a.field, a.point)

    __rmul__ = __mul__

    def mul_truncated(self, other, prec):
        """Product with the result cut at ``prec`` (avoids computing unused terms)."""
        a, b = self._pair(other)
        va, vb = a.valuation_bound(), b.valuation_bound()
        T = min(a.T + vb, b.T + va, prec)
        terms = {}
        for e1, c1 in a.terms.items():
            if e1 + vb >= T:
                continue
            for e2, c2 in b.terms.items():
                e = e1 + e2
                if e >= T:
                    continue
                terms[e] = terms[e] + c1 * c2 if e in terms else c1 * c2
        return PuiseuxSeries(terms, T, a.field, a.point)

    def power(self, k, prec=INF):
        if k < 0:
            v = self.valuation_bound()
            return self.inverse(prec - (-k - 1) * min(-v, 0) if prec != INF else INF).power(-k, prec)
        cap = prec
        if prec != INF and k > 1:
            cap = prec - (k - 1) * min(self.valuation_bound(), 0)
        result = PuiseuxSeries.constant(1, self.field, point=self.point)
        base = self
        while k:
            if k & 1:
                result = result.mul_truncated(base, cap)
            k >>= 1
            if k:
                base = base.mul_truncated(base, cap)
        return result.truncate(prec)

    __pow__ = power

    def inverse(self, prec=INF):
        """Multiplicative inverse; ``prec`` bounds the output when the input is exact."""
        v = self.order()
        c = self.terms[v]
        cinv = c.inverse()
        # w = self / (c x^v) = 1 + u
        u = PuiseuxSeries({e - v: coef * cinv for e, coef in self.terms.items() if e != v},
                          self.T - v, self.field, self.point)
        target = min(self.T - 2 * v, prec)
        if target == INF:
            if not u.terms:
                return PuiseuxSeries.monomial(cinv, -v, self.field, point=self.point)
            raise ValueError("inverse of an exact non-monomial series needs a precision")
        rel = target + v  # relative precision needed for 1/w
        acc = PuiseuxSeries.constant(1, self.field, point=self.point).truncate(rel)
        term = acc
        neg_u = (-u).truncate(rel)
        while True:
            term = term.mul_truncated(neg_u, rel)
            if not term.terms:
                break
            acc = acc + term
        acc = acc.truncate(rel) if u.T == INF else acc
        return acc.shift_exponents(-v).scale(cinv).truncate(target)

    def __truediv__(self, other):
        if isinstance(other, PuiseuxSeries):
            return self * other.inverse()
        return self.scale(1 / AlgElem.coerce(other, self.field) if not isinstance(other, AlgElem)
                          else other.inverse())

    def derivative(self):
        """Termwise d/dx (in the local variable); the known order drops by one."""
        terms = {e - 1: c * e for e, c in self.terms.items() if e != 0}
        return PuiseuxSeries(terms, self.T - 1, self.field, self.point)

    def substitute_power(self, q):
        """Replace the variable x by x^q (q > 0 rational)."""
        q = _frac(q)
        return PuiseuxSeries({e * q: c for e, c in self.terms.items()}, self.T * q,
                             self.field, self.point)

    def scale_variable(self, g):
        """Replace the variable t by g*t (integer exponents only)."""
        terms = {}
        for e, c in self.terms.items():
            if e.denominator != 1:
                raise ValueError("scale_variable needs integer exponents")
            terms[e] = c * g ** int(e)
        return PuiseuxSeries(terms, self.T, common_field(self.field, g.field), self.point)

    def map_coefficients(self, fn, field):
        return PuiseuxSeries({e: fn(c) for e, c in self.terms.items()}, self.T, field, self.point)

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self.T == other.T and self.point == other.point and \
            self.terms.keys() == other.terms.keys() and \
            all(self.terms[e] == other.terms[e] for e in self.terms)

    __hash__ = None

    def agrees_with(self, other, upto=None):
        """True if the two series have identical terms below ``upto``
        (default: the smaller known order)."""
        upto = min(self.T, other.T) if upto is None else upto
        keys = {e for e in self.terms if e < upto} | {e for e in other.terms if e < upto}
        return all(self.terms.get(e, 0) == other.terms.get(e, 0) for e in keys)

    # -- rendering
    def __repr__(self):
        return f"PuiseuxSeries({self})"

    def __str__(self):
        return self.render()

    def render(self, var="x"):
        from .numberfield import _is_atomic
        sign = -1 if self.point == "infinity" else 1
        parts = []
        for e in sorted(self.terms):
            c = str(self.terms[e])
            ex = e * sign
            if ex == 0:
                parts.append(c)
                continue
            mono = var if ex == 1 else (f"{var}^{ex}" if ex.denominator == 1 and ex > 0
                                        else f"{var}^({ex})")
            if c == "1":
                parts.append(mono)
            elif c == "-1":
                parts.append("-" + mono)
            elif _is_atomic(c):
                parts.append(f"{c}*{mono}")
            else:
                parts.append(f"({c})*{mono}")
        if self.T != INF:
            tx = self.T * sign
            parts.append(f"O({var}^{tx})" if tx.denominator == 1 and tx > 0 else f"O({var}^({tx}))")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def order(s):
    return s.order()


def series_arith(op, s1, s2):
    if op == "add":
        return s1 + s2
    if op == "sub":
        return s1 - s2
    if op == "mul":
        return s1 * s2
    raise ValueError(f"unknown series operation {op!r}")


def derivative(s):
    return s.derivative()


def substitute_poly(f, ys, ps, prec=INF):
    """Evaluate the BiPoly ``f`` at ``(ys, ps)``."""
    ys, ps = ys._pair(ps)
    field = common_field(ys.field, f.field)
    ys, ps = ys.coerce_field(field), ps.coerce_field(field)
    vy = min(ys.valuation_bound(), 0)
    vp = min(ps.valuation_bound(), 0)
    dy = max((i for i, _ in f.terms), default=0)
    dp = max((j for _, j in f.terms), default=0)
    ycap = prec - dp * vp if prec != INF else INF
    pcap = prec - dy * vy if prec != INF else INF
    ypow, ppow = {}, {}

    def pw(cache, s, k, cap):
        if k not in cache:
            cache[k] = s.power(k, cap)
        return cache[k]

    acc = PuiseuxSeries.zero(field, point=ys.point)
    for (i, j), c in f.terms.items():
        term = pw(ypow, ys, i, ycap).mul_truncated(pw(ppow, ps, j, pcap), prec).scale(c)
        acc = acc + term
    return acc.truncate(prec)


def compose(a, s, prec=INF):
    """Return a(s(t)) for a series ``a`` with integer exponents and ``s`` of positive order."""
    vs = s.order()
    if vs <= 0:
        raise ValueError("compose needs an inner series of positive order")
    if any(e.denominator != 1 for e in a.terms):
        raise ValueError("compose needs an outer series with integer exponents")
    a, s = a._pair(s) if a.point == s.point else (a, s.with_point(a.point))
    target = min(a.T * vs if a.T != INF else INF, prec)
    field = common_field(a.field, s.field)
    acc = PuiseuxSeries.zero(field, point=a.point)
    if not a.terms:
        return acc.truncate(target)
    kmin = int(min(a.terms))
    pos = PuiseuxSeries.constant(1, field, point=a.point)
    neg = None
    for k in sorted(a.terms):
        k = int(k)
        if k * vs >= target:
            break
        if k >= 0:
            continue
        if neg is None:
            inv = s.inverse(target - (kmin + 1) * vs if target != INF else INF)
            neg = {j: inv.power(j, target) for j in range(1, -kmin + 1)}
        acc = acc + neg[-k].scale(a.terms[Fraction(k)])
    kprev = 0
    for k in sorted(e for e in a.terms if e >= 0):
        k = int(k)
        if k * vs >= target:
            break
        for _ in range(k - kprev):
            pos = pos.mul_truncated(s, target)
        kprev = k
        acc = acc + pos.scale(a.terms[Fraction(k)])
    return acc.truncate(target)


@dataclass(frozen=True)
class ParamPair:
    """A truncated local parametrization (a(t), b(t)) of a plane curve."""

    a: PuiseuxSeries
    b: PuiseuxSeries
    center: object = None

    def lattice_gcd(self):
        exps = [e for s in (self.a, self.b) for e in s.terms if e != 0]
        g = 0
        for e in exps:
            if e.denominator != 1:
                return None
            g = math.gcd(g, int(e))
        return g

    def is_irreducible(self):
        return self.lattice_gcd() == 1

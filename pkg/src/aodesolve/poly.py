"""Univariate and bivariate polynomials over a :class:`NumberField`.

Bivariate operations (resultants, gcds, pseudo-division) work recursively:
a :class:`BiPoly` is viewed as a polynomial in a main variable whose
coefficients are :class:`UniPoly` objects in the other variable.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import sympy

from .numberfield import QQ, AlgElem, NumberField, adjoin_root, common_field


class ReducibleError(ValueError):
    """Raised by :func:`~aodesolve.numberfield.adjoin_root` on a reducible input."""

    def __init__(self, poly, factor):
        super().__init__(f"{poly} is reducible; it has the factor {factor}")
        self.poly = poly
        self.factor = factor


def _as_elem(c, field):
    return AlgElem.coerce(c, field)


class UniPoly:
    """Dense univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs", "field", "var")

    def __init__(self, coeffs, field=None, var="z"):
        coeffs = list(coeffs)
        if field is None:
            fields = [c.field for c in coeffs if isinstance(c, AlgElem)]
            field = common_field(*fields) if fields else QQ
        coeffs = [_as_elem(c, field) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = coeffs
        self.field = field
        self.var = var

    @classmethod
    def monomial(cls, c, k, field, var="z"):
        return cls([0] * k + [c], field, var)

    @classmethod
    def x(cls, field=QQ, var="z"):
        return cls([0, 1], field, var)

    # -- basic properties
    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero()

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero()

    def coerce_field(self, field):
        if field == self.field:
            return self
        return UniPoly(self.coeffs, field, self.var)

    def with_var(self, var):
        return UniPoly(self.coeffs, self.field, var)

    def _pair(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other], self.field, self.var)
        f = common_field(self.field, other.field)
        return self.coerce_field(f), other.coerce_field(f)

    # -- arithmetic
    def __add__(self, other):
        a, b = self._pair(other)
        n = max(len(a.coeffs), len(b.coeffs))
        return UniPoly([a.coeff(i) + b.coeff(i) for i in range(n)], a.field, a.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.field, self.var)

    def __sub__(self, other):
        return self + (-other if isinstance(other, UniPoly) else -_as_elem(other, self.field))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a.is_zero() or b.is_zero():
            return UniPoly([], a.field, a.var)
        out = [a.field.zero()] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(b.coeffs):
                out[i + j] = out[i + j] + x * y
        return UniPoly(out, a.field, a.var)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = UniPoly([1], self.field, self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        a, b = self._pair(other)
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(a.coeffs)
        inv = b.lc.inverse()
        db = b.degree
        quo = [a.field.zero()] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            c = rem[-1] * inv
            shift = len(rem) - 1 - db
            quo[shift] = c
            for i, y in enumerate(b.coeffs):
                rem[i + shift] = rem[i + shift] - c * y
            while rem and rem[-1].is_zero():
                rem.pop()
        return UniPoly(quo, a.field, a.var), UniPoly(rem, a.field, a.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            try:
                a, b = self._pair(other)
            except ValueError:
                return False
            return a.coeffs == b.coeffs
        if self.is_constant():
            return self.coeff(0) == other
        return False

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def monic(self):
        if self.is_zero():
            return self
        inv = self.lc.inverse()
        return UniPoly([c * inv for c in self.coeffs], self.field, self.var)

    def derivative(self):
        return UniPoly([c * i for i, c in enumerate(self.coeffs)][1:], self.field, self.var)

    def __call__(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return x * 0 if isinstance(x, UniPoly) else self.field.zero()
        return acc

    def compose(self, g):
        """Return self(g(z)) for a polynomial g."""
        acc = UniPoly([], common_field(self.field, g.field), g.var)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def shift(self, c):
        """Return self(z + c)."""
        return self.compose(UniPoly([c, 1], self.field, self.var))

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        return self.render()

    def render(self, var=None):
        from .numberfield import _join, _term
        var = var or self.var
        terms = [_term(str(c), var, i) for i, c in reversed(list(enumerate(self.coeffs)))
                 if not c.is_zero()]
        return _join(terms) if terms else "0"


def poly_gcd(a, b):
    """Monic gcd over the coefficient field."""
    a, b = a._pair(b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(f):
    """Yun's algorithm: list of (monic squarefree factor, multiplicity)."""
    f = f.monic()
    out = []
    if f.is_constant():
        return out
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f // a
    c = df // a
    i = 1
    while not b.is_constant():
        d = c - b.derivative()
        g = poly_gcd(b, d)
        if not g.is_constant():
            out.append((g, i))
        b = b // g
        c = d // g
        i += 1
    return out


def univariate_resultant(a, b):
    """Resultant of two univariate polynomials over a field (Euclid)."""
    a, b = a._pair(b)
    field = a.field
    if a.is_zero() or b.is_zero():
        return field.zero()
    res = field.one()
    while b.degree > 0:
        r = a % b
        if r.is_zero():
            return field.zero()
        if a.degree % 2 == 1 and b.degree % 2 == 1:
            res = -res
        res = res * b.lc ** (a.degree - r.degree)
        a, b = b, r
    return res * b.lc ** a.degree


def _interpolate(xs, ys, field, var):
    """Newton interpolation over ``field``."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly([coef[-1]], field, var)
    for i in range(n - 2, -1, -1):
        poly = poly * UniPoly([-xs[i], 1], field, var) + coef[i]
    return poly


def _norm(g):
    """Norm of g over the field one level below its top generator."""
    field = g.field
    base = field.base(field.level - 1)
    gen = field.gens[-1]
    m = UniPoly([AlgElem(base, c) for c in gen.minpoly], base)
    deg = g.degree * gen.degree
    xs, ys = [], []
    for k in range(deg + 1):
        val = g(field(k))
        h = UniPoly([AlgElem(base, c) for c in val.rep], base)
        xs.append(base(k))
        ys.append(univariate_resultant(m, h))
    return _interpolate(xs, ys, base, g.var)


def _factor_rational(f):
    z = sympy.Symbol("z")
    coeffs = [c.to_fraction() for c in f.coeffs]
    expr = sum(sympy.Rational(c.numerator, c.denominator) * z ** i for i, c in enumerate(coeffs))
    _, facs = sympy.factor_list(sympy.Poly(expr, z, domain="QQ"))
    out = []
    for p, e in facs:
        cs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
              for c in reversed(p.all_coeffs())]
        out.append((UniPoly(cs, f.field, f.var).monic(), e))
    return out


def _factor_squarefree(f):
    """Irreducible monic factors of a squarefree monic polynomial."""
    if f.degree <= 1:
        return [f.monic()]
    field = f.field
    if field.level == 0:
        return [p for p, _ in _factor_rational(f)]
    top = field.gens[-1]
    lvl = field.level
    if top.minpoly is None:
        if any(c.depends_on(lvl) for c in f.coeffs):
            raise NotImplementedError("factorization over a parameter ring is not supported")
        base = field.base(lvl - 1)
        sub = UniPoly([AlgElem(base, c.rep[0] if c.rep else ()) for c in f.coeffs], base, f.var)
        return [p.coerce_field(field) for p in _factor_squarefree(sub)]
    if all(c.is_rational() for c in f.coeffs):
        out = []
        for p in _factor_squarefree(f.coerce_field(QQ)):
            out.extend(_trager(p.coerce_field(field)))
        return out
    return _trager(f)


def _trager(f):
    """Trager's norm method over the top generator of ``f.field``."""
    if f.degree <= 1:
        return [f.monic()]
    field = f.field
    theta = field.gen()
    for s in _shifts():
        g = f.shift(-theta * s) if s else f
        n = _norm(g)
        if poly_gcd(n, n.derivative()).is_constant():
            break
    factors = []
    for ni in _factor_squarefree(n.monic()):
        h = poly_gcd(g, ni.coerce_field(field))
        if h.is_constant():
            continue
        factors.append(h.shift(theta * s).monic() if s else h)
    return factors


def _shifts():
    yield 0
    for k in itertools.count(1):
        yield k
        yield -k


def _sort_key(p):
    return (p.degree, str(p))


def factor_univariate(f):
    """Complete factorization over ``f.field``: list of (monic irreducible, multiplicity)."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    out = []
    for part, mult in squarefree_decomposition(f):
        for p in _factor_squarefree(part):
            out.append((p, mult))
    out.sort(key=lambda pm: (_sort_key(pm[0]), pm[1]))
    return out


class RootClass:
    """A root of an irreducible factor, standing for its whole conjugacy class."""

    __slots__ = ("root", "multiplicity", "field", "minpoly")

    def __init__(self, root, multiplicity, field, minpoly):
        self.root = root
        self.multiplicity = multiplicity
        self.field = field
        self.minpoly = minpoly

    @property
    def class_size(self):
        return self.minpoly.degree

    def __iter__(self):
        return iter((self.root, self.multiplicity, self.field))

    def __repr__(self):
        return f"RootClass({self.root}, mult={self.multiplicity}, minpoly={self.minpoly})"


def roots_in_closure(f):
    """One representative root per irreducible factor of ``f``.

    Rational (field) roots come from linear factors; every other factor is
    adjoined to the field and its generator returned as representative.
    """
    if f.is_constant():
        raise ValueError("roots_in_closure needs a non-constant polynomial")
    out = []
    for p, mult in factor_univariate(f):
        if p.degree == 1:
            out.append(RootClass(-p.coeffs[0], mult, f.field, p))
        else:
            field, root = adjoin_root(f.field, p, certified=True)
            out.append(RootClass(root, mult, field, p))
    return out


# ---------------------------------------------------------------------------
# bivariate polynomials

class BiPoly:
    """Sparse polynomial in two variables; keys are exponent pairs."""

    __slots__ = ("terms", "field", "vars")

    def __init__(self, terms, field=None, vars=("y", "p")):
        if field is None:
            fields = [c.field for c in terms.values() if isinstance(c, AlgElem)]
            field = common_field(*fields) if fields else QQ
        clean = {}
        for k, c in terms.items():
            c = _as_elem(c, field)
            if not c.is_zero():
                clean[(int(k[0]), int(k[1]))] = c
        self.terms = clean
        self.field = field
        self.vars = tuple(vars)

    @classmethod
    def var(cls, i, field=QQ, vars=("y", "p")):
        return cls({(1, 0) if i == 0 else (0, 1): 1}, field, vars)

    @classmethod
    def const(cls, c, field=QQ, vars=("y", "p")):
        return cls({(0, 0): c}, field, vars)

    def _index(self, var):
        if isinstance(var, int):
            return var
        return self.vars.index(var)

    def degree(self, var):
        i = self._index(var)
        return max((k[i] for k in self.terms), default=-1)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(k == (0, 0) for k in self.terms)

    def coerce_field(self, field):
        if field == self.field:
            return self
        return BiPoly(self.terms, field, self.vars)

    def with_vars(self, vars):
        return BiPoly(self.terms, self.field, vars)

    def _pair(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other, self.field, self.vars)
        f = common_field(self.field, other.field)
        return self.coerce_field(f), other.coerce_field(f)

    def __add__(self, other):
        a, b = self._pair(other)
        terms = dict(a.terms)
        for k, c in b.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return BiPoly(terms, a.field, a.vars)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()}, self.field, self.vars)

    def __sub__(self, other):
        return self + (-other if isinstance(other, BiPoly) else -_as_elem(other, self.field))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        terms = {}
        for (i1, j1), c1 in a.terms.items():
            for (i2, j2), c2 in b.terms.items():
                k = (i1 + i2, j1 + j2)
                terms[k] = terms[k] + c1 * c2 if k in terms else c1 * c2
        return BiPoly(terms, a.field, a.vars)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = BiPoly.const(1, self.field, self.vars)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other, self.field, self.vars)
        try:
            a, b = self._pair(other)
        except ValueError:
            return False
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def scale(self, c):
        return BiPoly({k: v * c for k, v in self.terms.items()}, self.field, self.vars)

    def diff(self, var):
        """Formal partial derivative."""
        i = self._index(var)
        terms = {}
        for k, c in self.terms.items():
            if k[i]:
                nk = (k[0] - 1, k[1]) if i == 0 else (k[0], k[1] - 1)
                terms[nk] = c * k[i]
        return BiPoly(terms, self.field, self.vars)

    def evaluate(self, var, value):
        """Substitute ``var = value``; returns a UniPoly in the other variable."""
        i = self._index(var)
        field = common_field(self.field, value.field) if isinstance(value, AlgElem) else self.field
        value = _as_elem(value, field)
        coeffs = {}
        for k, c in self.terms.items():
            e = k[1 - i]
            coeffs[e] = coeffs.get(e, field.zero()) + c * value ** k[i]
        n = max(coeffs, default=-1) + 1
        return UniPoly([coeffs.get(e, 0) for e in range(n)], field, self.vars[1 - i])

    def __call__(self, a, b):
        acc = None
        for (i, j), c in self.terms.items():
            t = c * a ** i * b ** j
            acc = t if acc is None else acc + t
        return acc if acc is not None else self.field.zero()

    def as_univariate(self, var):
        """Coefficient list (indexed by degree in ``var``) of UniPolys in the other variable."""
        i = self._index(var)
        other = self.vars[1 - i]
        d = self.degree(i)
        buckets = [dict() for _ in range(d + 1)]
        for k, c in self.terms.items():
            buckets[k[i]][k[1 - i]] = c
        return [UniPoly([b.get(e, 0) for e in range(max(b, default=-1) + 1)], self.field, other)
                for b in buckets]

    @classmethod
    def from_univariate(cls, coeffs, var_index, field, vars):
        terms = {}
        for e, u in enumerate(coeffs):
            for f, c in enumerate(u.coeffs):
                terms[(e, f) if var_index == 0 else (f, e)] = c
        return cls(terms, field, vars)

    def leading_coeff(self, var):
        return self.as_univariate(var)[-1]

    def swap(self):
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()}, self.field,
                      (self.vars[1], self.vars[0]))

    def compose_linear(self, var, shift):
        """Substitute ``var -> var + shift``."""
        i = self._index(var)
        lin = BiPoly({(1, 0) if i == 0 else (0, 1): 1, (0, 0): shift},
                     common_field(self.field, shift.field) if isinstance(shift, AlgElem)
                     else self.field, self.vars)
        other = BiPoly.var(1 - i, lin.field, self.vars)
        out = BiPoly({}, lin.field, self.vars)
        cache_a, cache_b = {}, {}
        for (p, q), c in self.terms.items():
            ep, eq_ = (p, q)
            x0 = lin if i == 0 else other
            x1 = other if i == 0 else lin
            if ep not in cache_a:
                cache_a[ep] = x0 ** ep
            if eq_ not in cache_b:
                cache_b[eq_] = x1 ** eq_
            out = out + cache_a[ep] * cache_b[eq_] * c
        return out

    def leading_term(self, main=0):
        """Coefficient of the lexicographically largest monomial, ``main`` var first."""
        k = max(self.terms, key=lambda k: (k[main], k[1 - main]))
        return self.terms[k]

    def normalized(self, main=0):
        if self.is_zero():
            return self
        return self.scale(self.leading_term(main).inverse())

    def __repr__(self):
        return f"BiPoly({self})"

    def __str__(self):
        return self.render()

    def render(self, names=None, main=None):
        """Text form; terms by total degree, or by degree in ``main`` (0 or 1) first."""
        from .numberfield import _is_atomic, _join
        names = names or self.vars
        if main is None:
            key = lambda k: (-(k[0] + k[1]), -k[0], -k[1])
        else:
            key = lambda k: (-k[main], -k[1 - main])
        terms = []
        for (i, j) in sorted(self.terms, key=key):
            c = self.terms[(i, j)]
            parts = []
            for name, e in ((names[0], i), (names[1], j)):
                if e == 1:
                    parts.append(name)
                elif e > 1:
                    parts.append(f"{name}^{e}")
            mono = "*".join(parts)
            cs = str(c)
            if not mono:
                terms.append(cs)
            elif cs == "1":
                terms.append(mono)
            elif cs == "-1":
                terms.append("-" + mono)
            elif _is_atomic(cs):
                terms.append(f"{cs}*{mono}")
            else:
                terms.append(f"({cs})*{mono}")
        return _join(terms) if terms else "0"


# -- recursive (main variable over K[other]) helpers

def _prem(a, b):
    """Pseudo-division of coefficient lists over K[t]: returns (q, r) with
    lc(b)^k a = q b + r, k = max(deg a - deg b + 1, 0)."""
    a = list(a)
    db = len(b) - 1
    lcb = b[-1]
    zero = b[-1] * 0
    k = max(len(a) - 1 - db + 1, 0)
    q = [zero] * max(len(a) - db, 0)
    e = k
    while len(a) - 1 >= db and a:
        lca = a[-1]
        shift = len(a) - 1 - db
        q = [c * lcb for c in q]
        q[shift] = q[shift] + lca
        a = [c * lcb for c in a]
        for i, bc in enumerate(b):
            a[i + shift] = a[i + shift] - bc * lca
        a.pop()
        while a and a[-1].is_zero():
            a.pop()
        e -= 1
    if e > 0:
        f = lcb ** e
        q = [c * f for c in q]
        a = [c * f for c in a]
    return q, a


def _strip_list(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def subresultant_resultant(a, b):
    """Resultant of coefficient lists over K[t] by the subresultant PRS."""
    a, b = _strip_list(a), _strip_list(b)
    if not a or not b:
        return None
    one = a[-1] * 0 + 1
    s = 1
    if len(a) < len(b):
        a, b = b, a
        if (len(a) - 1) % 2 == 1 and (len(b) - 1) % 2 == 1:
            s = -1
    g = one
    h = one
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            break
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        _, r = _prem(a, b)
        if not r:
            return one * 0
        div = g * h ** delta
        a, b = b, [c.exact_div(div) for c in r]
        g = a[-1]
        h = (g ** delta).exact_div(h ** (delta - 1)) if delta >= 1 else h
    da = len(a) - 1
    h = (b[-1] ** da).exact_div(h ** (da - 1)) if da >= 1 else h * 0 + 1
    return h * s


def resultant(f, g, var):
    """Resultant of two BiPolys with respect to ``var``; a UniPoly in the other variable."""
    f, g = f._pair(g)
    i = f._index(var)
    a, b = f.as_univariate(i), g.as_univariate(i)
    r = subresultant_resultant(a, b)
    if r is None:
        return UniPoly([], f.field, f.vars[1 - i])
    return r.coerce_field(f.field)


def _content(coeffs):
    g = UniPoly([], coeffs[0].field, coeffs[0].var) if coeffs else None
    for c in coeffs:
        g = c.monic() if g.is_zero() else poly_gcd(g, c)
        if g.degree == 0:
            break
    return g


def bivariate_gcd(f, g, var="p"):
    """Gcd of two BiPolys (primitive PRS in ``var``), normalized."""
    f, g = f._pair(g)
    i = f._index(var)
    if f.is_zero():
        return g.normalized(i)
    if g.is_zero():
        return f.normalized(i)
    a, b = f.as_univariate(i), g.as_univariate(i)
    ca, cb = _content(a), _content(b)
    c = poly_gcd(ca, cb)
    a = [x.exact_div(ca) for x in a]
    b = [x.exact_div(cb) for x in b]
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        _, r = _prem(a, b)
        if not r:
            break
        cr = _content(r)
        a, b = b, [x.exact_div(cr) for x in r]
    else:
        # b is a nonzero constant in var: gcd of primitive parts is trivial
        b = [UniPoly([1], f.field, f.vars[1 - i])]
    out = BiPoly.from_univariate([x * c for x in b], i, f.field, f.vars)
    return out.normalized(i)


def bivariate_divide(f, g, var="p"):
    """Exact quotient f / g; raises if g does not divide f."""
    f, g = f._pair(g)
    i = f._index(var)
    a, b = f.as_univariate(i), g.as_univariate(i)
    if len(b) == 1:
        q = [x.exact_div(b[0]) for x in a]
        return BiPoly.from_univariate(q, i, f.field, f.vars)
    q, r = _prem(a, b)
    if r:
        raise ArithmeticError(f"{g} does not divide {f}")
    k = max(len(a) - len(b) + 1, 0)
    lk = b[-1] ** k
    q = [x.exact_div(lk) for x in q]
    return BiPoly.from_univariate(q, i, f.field, f.vars)


def pseudo_remainder(f, g, var):
    """Pseudo-remainder of f by g with respect to ``var`` (a BiPoly)."""
    f, g = f._pair(g)
    i = f._index(var)
    a, b = f.as_univariate(i), g.as_univariate(i)
    if len(a) < len(b):
        return f
    _, r = _prem(a, b)
    return BiPoly.from_univariate(r, i, f.field, f.vars)


def partial_derivative(f, var):
    return f.diff(var)


def squarefree_normalize(f):
    """Squarefree part of ``f`` with factors in one variable removed.

    Returns ``(g, removed)``; ``removed`` lists the discarded factors so
    that constant solutions coming from factors in ``y`` are not lost.
    """
    if f.is_zero() or f.is_constant():
        raise ValueError("squarefree_normalize needs a non-constant polynomial")
    removed = []
    y, p = f.vars
    cy = _content(f.as_univariate(p))          # factor in y only
    if not cy.is_constant():
        fac = BiPoly.from_univariate([cy], 1, f.field, f.vars)
        removed.append(fac)
        f = bivariate_divide(f, fac, p)
    cp = _content(f.as_univariate(y))          # factor in p only
    if not cp.is_constant():
        fac = BiPoly.from_univariate([cp], 0, f.field, f.vars)
        removed.append(fac)
        f = bivariate_divide(f, fac, y)
    if f.is_constant():
        raise ValueError("polynomial has no factor involving both variables")
    g = bivariate_gcd(f, f.diff(p), p)
    if not g.is_constant():
        removed.append(g)
        f = bivariate_divide(f, g, p)
    return f, removed

"""Exact arithmetic in towers of simple extensions of Q.

An element of a tower ``Q(g1)(g2)...(gk)`` is stored recursively: at level
0 it is a :class:`fractions.Fraction`; at level ``k`` it is a tuple of
level ``k-1`` elements, the coefficients of a polynomial in ``gk`` (lowest
degree first, trailing zeros stripped, reduced modulo the minimal
polynomial of ``gk``).  This representation is canonical, so equality of
elements is equality of representations.

A generator may also be *transcendental* (no minimal polynomial).  Such a
level behaves as a polynomial ring; it is used for the free parameter of
solution families and for the shift symbol of algebraic solutions.  Only
elements that are constant in a transcendental generator can be inverted.
"""
from __future__ import annotations

import os
from fractions import Fraction
from numbers import Rational as _Rational

DEFAULT_MAX_TOWER_DEGREE = 64


class NotInvertibleError(ArithmeticError):
    """Raised when inverting an element that is not a unit."""


class FieldMismatchError(ValueError):
    """Raised when two elements live in unrelated towers."""


class TowerDegreeError(RuntimeError):
    """Raised when an adjunction would exceed the configured tower degree."""


def max_tower_degree() -> int:
    value = os.environ.get("AODE_SOLVE_MAX_TOWER")
    return int(value) if value else DEFAULT_MAX_TOWER_DEGREE


# ---------------------------------------------------------------------------
# raw representation helpers; ``lvl`` is the level of the representation

def _zero(lvl):
    return Fraction(0) if lvl == 0 else ()


def _is_zero(a, lvl):
    return a == 0 if lvl == 0 else len(a) == 0


def _lift(a, from_lvl, to_lvl):
    for lvl in range(from_lvl, to_lvl):
        a = () if _is_zero(a, lvl) else (a,)
    return a


def _const(q, lvl):
    return _lift(Fraction(q), 0, lvl)


def _strip(coeffs, lvl):
    coeffs = list(coeffs)
    while coeffs and _is_zero(coeffs[-1], lvl):
        coeffs.pop()
    return coeffs


class _Tower:
    """Raw arithmetic for a fixed tuple of generators."""

    def __init__(self, gens):
        self.gens = gens

    # -- polynomial helpers over level ``lvl`` (coefficients at that level)
    def padd(self, p, q, lvl):
        n = max(len(p), len(q))
        z = _zero(lvl)
        out = [self.add(p[i] if i < len(p) else z, q[i] if i < len(q) else z, lvl)
               for i in range(n)]
        return _strip(out, lvl)

    def pneg(self, p, lvl):
        return [self.neg(c, lvl) for c in p]

    def pmul(self, p, q, lvl):
        if not p or not q:
            return []
        out = [_zero(lvl)] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            if _is_zero(a, lvl):
                continue
            for j, b in enumerate(q):
                if _is_zero(b, lvl):
                    continue
                out[i + j] = self.add(out[i + j], self.mul(a, b, lvl), lvl)
        return _strip(out, lvl)

    def pscale(self, p, c, lvl):
        return _strip([self.mul(a, c, lvl) for a in p], lvl)

    def pdivmod(self, p, q, lvl):
        """Division with remainder; the leading coefficient of q must be a unit."""
        p = list(p)
        inv_lc = self.inv(q[-1], lvl)
        quo = [_zero(lvl)] * max(len(p) - len(q) + 1, 0)
        while len(p) >= len(q) and p:
            c = self.mul(p[-1], inv_lc, lvl)
            shift = len(p) - len(q)
            quo[shift] = c
            for i, b in enumerate(q):
                p[i + shift] = self.sub(p[i + shift], self.mul(c, b, lvl), lvl)
            p = _strip(p, lvl)
        return _strip(quo, lvl), p

    def reduce(self, p, lvl):
        """Reduce a polynomial in gen ``lvl`` (coefficients at lvl-1)."""
        m = self.gens[lvl - 1].minpoly
        p = _strip(p, lvl - 1)
        if m is None or len(p) < len(m):
            return tuple(p)
        # minpoly is monic
        p = list(p)
        d = len(m) - 1
        while len(p) > d:
            c = p.pop()
            if _is_zero(c, lvl - 1):
                continue
            shift = len(p) - d
            for i in range(d):
                p[shift + i] = self.sub(p[shift + i], self.mul(c, m[i], lvl - 1), lvl - 1)
            p = _strip(p, lvl - 1)
        return tuple(_strip(p, lvl - 1))

    # -- element arithmetic
    def add(self, a, b, lvl):
        if lvl == 0:
            return a + b
        return tuple(self.padd(a, b, lvl - 1))

    def neg(self, a, lvl):
        if lvl == 0:
            return -a
        return tuple(self.neg(c, lvl - 1) for c in a)

    def sub(self, a, b, lvl):
        if lvl == 0:
            return a - b
        return self.add(a, self.neg(b, lvl), lvl)

    def mul(self, a, b, lvl):
        if lvl == 0:
            return a * b
        if not a or not b:
            return ()
        return self.reduce(self.pmul(a, b, lvl - 1), lvl)

    def inv(self, a, lvl):
        if _is_zero(a, lvl):
            raise ZeroDivisionError("division by zero in number field")
        if lvl == 0:
            return 1 / a
        if len(a) == 1:
            return (self.inv(a[0], lvl - 1),)
        m = self.gens[lvl - 1].minpoly
        if m is None:
            raise NotInvertibleError(
                f"{self.render(a, lvl)} is not invertible: it depends on the "
                f"transcendental parameter {self.gens[lvl - 1].name}")
        # extended Euclid: find u with u*a = 1 mod m
        r0, r1 = list(m), list(a)
        u0, u1 = [], [_const(1, lvl - 1)]
        while len(r1) > 1:
            q, r = self.pdivmod(r0, r1, lvl - 1)
            r0, r1 = r1, r
            u0, u1 = u1, self.padd(u0, self.pneg(self.pmul(q, u1, lvl - 1), lvl - 1), lvl - 1)
            if not r1:
                raise NotInvertibleError("minimal polynomial is reducible")
        c = self.inv(r1[0], lvl - 1)
        return self.reduce(self.pscale(u1, c, lvl - 1), lvl)

    def render(self, a, lvl):
        if lvl == 0:
            return _render_rational(a)
        if not a:
            return "0"
        name = self.gens[lvl - 1].name
        terms = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if _is_zero(c, lvl - 1):
                continue
            cs = self.render(c, lvl - 1)
            mono = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
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
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out


def _render_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _is_atomic(s):
    body = s[1:] if s.startswith("-") else s
    return all(ch not in body for ch in "+- ")


# ---------------------------------------------------------------------------

class Generator:
    """A tower generator; compared by identity."""

    __slots__ = ("name", "minpoly", "__weakref__")

    def __init__(self, name, minpoly):
        self.name = name
        self.minpoly = minpoly  # tuple of reps one level down, monic; None if transcendental

    @property
    def degree(self):
        return None if self.minpoly is None else len(self.minpoly) - 1

    def __repr__(self):
        return f"Generator({self.name!r})"


class NumberField:
    """A tower of simple extensions of Q; the empty tower is Q itself."""

    __slots__ = ("gens", "_tower")

    def __init__(self, gens=()):
        self.gens = tuple(gens)
        self._tower = _Tower(self.gens)

    @property
    def level(self):
        return len(self.gens)

    @property
    def degree(self):
        d = 1
        for g in self.gens:
            if g.degree is not None:
                d *= g.degree
        return d

    @property
    def has_parameters(self):
        return any(g.minpoly is None for g in self.gens)

    def is_subfield_of(self, other):
        n = len(self.gens)
        return n <= len(other.gens) and all(a is b for a, b in zip(self.gens, other.gens[:n]))

    def base(self, level):
        return NumberField(self.gens[:level])

    def __eq__(self, other):
        return isinstance(other, NumberField) and len(self.gens) == len(other.gens) and \
            all(a is b for a, b in zip(self.gens, other.gens))

    def __hash__(self):
        return hash(tuple(id(g) for g in self.gens))

    def __repr__(self):
        return f"NumberField({self.describe()})"

    def describe(self):
        if not self.gens:
            return "Q"
        parts = []
        for i, g in enumerate(self.gens):
            if g.minpoly is None:
                parts.append(f"{g.name} transcendental")
            else:
                mp = AlgElemPolyView(self.base(i), g.minpoly)
                parts.append(f"{g.name}: {mp.render('_Z')} = 0")
        return "; ".join(parts)

    # element construction
    def __call__(self, value):
        return AlgElem.coerce(value, self)

    def zero(self):
        return AlgElem(self, _zero(self.level))

    def one(self):
        return AlgElem(self, _const(1, self.level))

    def gen(self, i=-1):
        lvl = self.level if i == -1 else i + 1
        rep = (_zero(lvl - 1), _const(1, lvl - 1))
        return AlgElem(self, _lift(rep, lvl, self.level))

    def with_parameter(self, name):
        """Extend by a transcendental generator ``name``."""
        return NumberField(self.gens + (Generator(name, None),))


class AlgElemPolyView:
    """Renders a raw univariate polynomial over a field (used for minpolys)."""

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def render(self, var):
        terms = []
        lvl = self.field.level
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if _is_zero(c, lvl):
                continue
            terms.append(_term(self.field._tower.render(c, lvl), var, i))
        return _join(terms) if terms else "0"


def _term(cs, var, i):
    mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
    if not mono:
        return cs
    if cs == "1":
        return mono
    if cs == "-1":
        return "-" + mono
    if _is_atomic(cs):
        return f"{cs}*{mono}"
    return f"({cs})*{mono}"


def _join(terms):
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def common_field(*fields):
    """Return the largest of a chain of nested towers."""
    best = fields[0]
    for f in fields[1:]:
        if best.is_subfield_of(f):
            best = f
        elif not f.is_subfield_of(best):
            raise FieldMismatchError(f"incompatible towers: {best} and {f}")
    return best


class AlgElem:
    """Immutable element of a :class:`NumberField`."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    @classmethod
    def coerce(cls, value, field):
        if isinstance(value, AlgElem):
            if value.field == field:
                return value
            if field.is_subfield_of(value.field):
                rep, lvl = value._lowered()
                if lvl <= field.level:
                    return cls(field, _lift(rep, lvl, field.level))
            if not value.field.is_subfield_of(field):
                raise FieldMismatchError(f"cannot coerce element of {value.field} into {field}")
            return cls(field, _lift(value.rep, value.field.level, field.level))
        if isinstance(value, (int, _Rational)):
            return cls(field, _const(Fraction(value), field.level))
        if isinstance(value, str):
            return cls(field, _const(Fraction(value), field.level))
        raise TypeError(f"cannot coerce {type(value).__name__} to AlgElem")

    def _pair(self, other):
        if isinstance(other, AlgElem):
            if other.field == self.field:
                return self, other
            f = common_field(self.field, other.field)
            return AlgElem.coerce(self, f), AlgElem.coerce(other, f)
        return self, AlgElem.coerce(other, self.field)

    def _lowered(self):
        rep, lvl = self.rep, self.field.level
        while lvl > 0 and len(rep) <= 1:
            rep = rep[0] if rep else _zero(lvl - 1)
            lvl -= 1
        return rep, lvl

    # arithmetic
    def __add__(self, other):
        a, b = self._pair(other)
        return AlgElem(a.field, a.field._tower.add(a.rep, b.rep, a.field.level))

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.field, self.field._tower.neg(self.rep, self.field.level))

    def __sub__(self, other):
        a, b = self._pair(other)
        return AlgElem(a.field, a.field._tower.sub(a.rep, b.rep, a.field.level))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        return AlgElem(a.field, a.field._tower.mul(a.rep, b.rep, a.field.level))

    __rmul__ = __mul__

    def inverse(self):
        return AlgElem(self.field, self.field._tower.inv(self.rep, self.field.level))

    def __truediv__(self, other):
        a, b = self._pair(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self):
        return _is_zero(self.rep, self.field.level)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self):
        rep, lvl = self._lowered()
        return lvl == 0

    def to_fraction(self):
        rep, lvl = self._lowered()
        if lvl != 0:
            raise ValueError(f"{self} is not rational")
        return rep

    def depends_on(self, level):
        """True if the element involves generator number ``level`` (1-based)."""
        return self._lowered()[1] >= level and self._has_gen(self.rep, self.field.level, level)

    def _has_gen(self, rep, lvl, target):
        if lvl == 0:
            return False
        if lvl == target:
            return len(rep) > 1
        return any(self._has_gen(c, lvl - 1, target) for c in rep)

    def __eq__(self, other):
        if isinstance(other, (AlgElem, int, _Rational)):
            try:
                a, b = self._pair(other)
            except FieldMismatchError:
                return False
            return a.rep == b.rep
        return NotImplemented

    def __hash__(self):
        return hash(self._lowered())

    def __repr__(self):
        return f"AlgElem({self})"

    def __str__(self):
        return self.field._tower.render(self.rep, self.field.level)

    def substitute_generator(self, root):
        """Replace the top generator by ``root`` (an element of a larger tower
        built over the base field below that generator)."""
        lvl = self.field.level
        if not self.field.base(lvl - 1).is_subfield_of(root.field):
            raise FieldMismatchError("root does not live over the base of the top generator")
        acc = root.field.zero()
        for c in reversed(self.rep):
            acc = acc * root + AlgElem(root.field, _lift(c, lvl - 1, root.field.level))
        return acc


def adjoin_root(field, minpoly, name=None, certified=False):
    """Adjoin a root of ``minpoly`` (a :class:`~aodesolve.poly.UniPoly` or a
    coefficient list, lowest degree first) to ``field``.

    Returns ``(new_field, root)``.  A linear polynomial yields the unchanged
    field and its root.  Unless ``certified`` is set, irreducibility is
    checked with :func:`aodesolve.poly.factor_univariate` and a reducible
    polynomial is rejected with the factor found.
    """
    from .poly import UniPoly, factor_univariate, ReducibleError

    if not isinstance(minpoly, UniPoly):
        minpoly = UniPoly([field(c) for c in minpoly], field=field)
    minpoly = minpoly.coerce_field(field).monic()
    d = minpoly.degree
    if d < 1:
        raise ValueError("cannot adjoin a root of a constant polynomial")
    if d == 1:
        return field, -minpoly.coeffs[0]
    if not certified:
        factors = factor_univariate(minpoly)
        if len(factors) != 1 or factors[0][1] != 1:
            raise ReducibleError(minpoly, factors[0][0])
    if field.degree * d > max_tower_degree():
        raise TowerDegreeError(
            f"adjoining a degree {d} root to a tower of degree {field.degree} exceeds "
            f"the cap {max_tower_degree()} (AODE_SOLVE_MAX_TOWER)")
    if field.has_parameters:
        raise NotInvertibleError("cannot adjoin algebraic roots above a transcendental parameter")
    name = name or f"_a{field.level + 1}"
    gen = Generator(name, tuple(c.rep for c in minpoly.coeffs))
    new = NumberField(field.gens + (gen,))
    return new, new.gen()


QQ = NumberField()

"""Places of the plane curve F(y, p) = 0 at finite and infinite points.

Branches are computed by the Newton polygon method in the orientation
"p as a Puiseux series in y - y0".  Each branch is returned in rational
form ``u = gamma * t^e, p = b(t)`` (so coefficients stay in the smallest
field; an extension is adjoined only when a characteristic polynomial has
no root in the current field).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .numberfield import QQ, AlgElem, NumberField
from .numberfield import adjoin_root
from .poly import BiPoly, UniPoly, factor_univariate, resultant
from .series import INF, ParamPair, PuiseuxSeries


@dataclass(frozen=True)
class CurvePoint:
    """A point of the closure of F = 0; coordinates are AlgElem or ``INF``."""

    y0: object
    p0: object

    @property
    def y_infinite(self):
        return self.y0 is INF

    @property
    def p_infinite(self):
        return self.p0 is INF

    def __str__(self):
        def fmt(v):
            return "infinity" if v is INF else str(v)
        return f"({fmt(self.y0)}, {fmt(self.p0)})"

    def same_as(self, other):
        def eq(a, b):
            if a is INF or b is INF:
                return a is b
            try:
                return a == b
            except ValueError:
                return False
        return eq(self.y0, other.y0) and eq(self.p0, other.p0)


@dataclass
class Place:
    """A truncated irreducible local parametrization (a(t), b(t)) of F = 0."""

    center: CurvePoint
    param: ParamPair
    e: int
    field: NumberField
    gamma: AlgElem = None
    conjugates: int = 1          # size of the conjugacy class this place represents
    y_class: UniPoly = None      # minimal polynomial of y0 when y0 is a conjugate representative

    @property
    def a(self):
        return self.param.a

    @property
    def b(self):
        return self.param.b

    def k(self):
        """ord_t(a - y0) (ord_t(a) when y0 is infinite)."""
        if self.center.y_infinite:
            return self.a.order()
        return (self.a - self.center.y0).order()

    def r(self):
        return self.b.order()


# ---------------------------------------------------------------------------
# Newton polygon machinery

def _lower_hull(points):
    hull = []
    for pt in sorted(points):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def _segments(Q, top):
    """Newton polygon segments ((j1, i1), (j2, i2)) of Q(t, P) in (P-degree, t-degree)."""
    imin = {}
    for (i, j) in Q.terms:
        imin[j] = min(imin.get(j, i), i)
    pts = sorted(imin.items())
    if not top:
        low = min(imin.values())
        jstar = min(j for j, i in pts if i == low)
        pts = [(j, i) for j, i in pts if j <= jstar]
    hull = _lower_hull(pts)
    return list(zip(hull[:-1], hull[1:]))


def _bezout(q, alpha):
    """Integers (w, v) with w*q - v*alpha = 1, smallest |w| then |v|."""
    best = None
    for w in range(-abs(alpha) - q, abs(alpha) + q + 1):
        num = w * q - 1
        if alpha == 0:
            continue
        if num % alpha == 0:
            v = num // alpha
            key = (abs(w), abs(v))
            if best is None or key < best[0]:
                best = (key, (w, v))
    return best[1]


def _binomial_powers(c, jmax, field, vars):
    """[(c + P)^j for j in 0..jmax] as BiPolys in (t, P)."""
    lin = BiPoly({(0, 0): c, (0, 1): 1}, field, vars)
    out = [BiPoly.const(1, field, vars)]
    for _ in range(jmax):
        out.append(out[-1] * lin)
    return out


def _substitute(Q, gamma, q, alpha, c, field):
    """Q(gamma tau^q, tau^alpha (c + P1)) / tau^L as a BiPoly in (tau, P1)."""
    Q = Q.coerce_field(field)
    L = min(q * i + alpha * j for (i, j) in Q.terms)
    jmax = max(j for (_, j) in Q.terms)
    pows = _binomial_powers(c, jmax, field, Q.vars)
    out = {}
    for (i, j), a in Q.terms.items():
        coef = a * gamma ** i
        shift = q * i + alpha * j - L
        for (_, jj), b in pows[j].terms.items():
            key = (shift, jj)
            out[key] = out[key] + coef * b if key in out else coef * b
    return BiPoly(out, field, Q.vars)


def _regular_root(Q, prec, field):
    """Power series root P(t) with P(0) = 0 of Q(t, P), assuming dQ/dP(0, 0) != 0."""
    dq = Q.diff(1).evaluate(0, field.zero()).coeff(0)
    dinv = dq.inverse()
    nterms = max(math.ceil(prec), 1)
    terms = {}
    for k in range(1, nterms):
        P = PuiseuxSeries(terms, INF, field)
        r = _eval_series(Q, P, Fraction(k + 1), field).coefficient(Fraction(k))
        if not r.is_zero():
            terms[Fraction(k)] = -r * dinv
    return PuiseuxSeries(terms, Fraction(nterms), field)


def _eval_series(Q, P, prec, field):
    """Q(t, P(t)) truncated at ``prec`` (P exact with positive order)."""
    acc = PuiseuxSeries.zero(field)
    pw = {0: PuiseuxSeries.constant(1, field)}
    jmax = max((j for (_, j) in Q.terms), default=0)
    for j in range(1, jmax + 1):
        pw[j] = pw[j - 1].mul_truncated(P, prec)
    for (i, j), a in Q.terms.items():
        if i >= prec:
            continue
        acc = acc + pw[j].shift_exponents(i).scale(a).truncate(prec)
    return acc.truncate(prec)


@dataclass
class Branch:
    gamma: AlgElem
    e: int
    series: PuiseuxSeries
    field: NumberField


def _newton_puiseux(Q, field, top, prec):
    """Roots of Q(t, P) as branches ``t = gamma s^e, P = series(s)``.

    ``top`` selects all roots (any order); otherwise only roots of positive
    order are returned.  ``prec`` is the requested precision in units of t.
    """
    branches = []
    if not top and not any(j == 0 for (_, j) in Q.terms):
        # P = 0 is an exact root
        branches.append(Branch(field.one(), 1, PuiseuxSeries.zero(field), field))
        Q = BiPoly({(i, j - 1): c for (i, j), c in Q.terms.items()}, field, Q.vars)
        if not any(j == 0 for (_, j) in Q.terms):
            raise ValueError("repeated root: polynomial is not squarefree")
    for (j1, i1), (j2, i2) in _segments(Q, top):
        mu = Fraction(i1 - i2, j2 - j1)
        alpha, q = mu.numerator, mu.denominator
        on_seg = {}
        for (i, j), a in Q.terms.items():
            if (j - j1) % q == 0 and Fraction(i) + mu * j == i1 + mu * j1:
                on_seg[(j - j1) // q] = a
        phi = UniPoly([on_seg.get(k, 0) for k in range(max(on_seg) + 1)], field)
        for g, mult in factor_univariate(phi):
            if g.degree == 1 and g.coeffs[0].is_zero():
                continue
            fld, xi = adjoin_root(field, g, certified=True)
            gamma, c = _choose_scaling(xi, q, alpha, fld)
            Q1 = _substitute(Q, gamma, q, alpha, c, fld)
            sub_prec = q * prec - alpha
            if mult == 1:
                subs = [Branch(fld.one(), 1, _regular_root(Q1, max(sub_prec, 1), fld), fld)]
            else:
                subs = _newton_puiseux(Q1, fld, False, max(sub_prec, 1))
            for sb in subs:
                f2 = sb.field
                g2 = sb.gamma
                S = (sb.series + AlgElem.coerce(c, f2)).shift_exponents(alpha * sb.e)
                S = S.scale(g2 ** alpha)
                branches.append(Branch(AlgElem.coerce(gamma, f2) * g2 ** q, q * sb.e, S, f2))
    return branches


def _root_preference(c):
    if c.is_rational():
        return (1, c.to_fraction())
    return (0, 0)


def _choose_scaling(xi, q, alpha, field):
    if q == 1:
        return field.one(), xi
    zq = UniPoly([-xi] + [0] * (q - 1) + [1], field)
    roots = [-g.coeffs[0] for g, _ in factor_univariate(zq) if g.degree == 1]
    if roots:
        return field.one(), max(roots, key=_root_preference)
    w, v = _bezout(q, alpha)
    return xi ** v, xi ** w


def newton_puiseux(P, prec, field=None):
    """All branches of P(u, p) = 0 above u = 0, ``p`` known to u-order ``prec``."""
    field = field or P.field
    return _newton_puiseux(P.coerce_field(field), field, True, prec)


# ---------------------------------------------------------------------------

def truncation_bound(F):
    """Number of terms after which places (and solution truncations) are determined."""
    dp, dy = F.degree("p"), F.degree("y")
    if F.leading_coeff("p").is_constant():
        return 2 * (dp - 1) * dy + 1
    return 2 * dp * dy + 1


def _at_infinity(F):
    """Numerator w^deg_y F(1/w, p) as a BiPoly in (y, p) with y standing for w."""
    dy = F.degree("y")
    return BiPoly({(dy - i, j): c for (i, j), c in F.terms.items()}, F.field, F.vars)


def _long_enough(br, terms, order_x):
    b = br.series
    if b.T == INF:
        return True
    if not b.terms:
        return False
    r = b.order()
    need = r + terms
    if order_x is not None:
        need = max(need, r + (br.e + abs(r)) * (math.ceil(order_x) + 2) + 2)
    return b.T >= need


def places_at(F, y0, terms, y_class=None, order_x=None):
    """All places of F = 0 with first coordinate ``y0`` (an AlgElem or INF).

    ``terms``: each b(t) is known to at least ``terms`` orders past its leading term.
    ``order_x``: additionally make b long enough for solution truncations of
    x-order ``order_x`` to be computed from the place.
    """
    if y0 is INF:
        P = _at_infinity(F)
        field = F.field
    else:
        field = y0.field if y0.field.level >= F.field.level else F.field
        P = F.coerce_field(field).compose_linear("y", y0)
    prec = max(Fraction(terms), Fraction(1))
    while True:
        branches = newton_puiseux(P, prec, field)
        ok = all(_long_enough(br, terms, order_x) for br in branches)
        if ok:
            break
        prec *= 2
    places = []
    if y0 is not INF and any(br.series.terms and br.series.order() < 0 for br in branches):
        branches = [br for br in branches if not (br.series.terms and br.series.order() < 0)]
        places.extend(_places_at_pole(P, y0, field, terms, order_x, y_class))
    for br in branches:
        f = br.field
        t_e = PuiseuxSeries.monomial(br.gamma, br.e, f)
        if y0 is INF:
            a = PuiseuxSeries.monomial(br.gamma.inverse(), -br.e, f)
        else:
            a = t_e + AlgElem.coerce(y0, f)
        b = br.series
        ob = b.order() if b.terms else INF
        if ob == INF or ob > 0:
            p0 = f.zero()
        elif ob < 0:
            p0 = INF
        else:
            p0 = b.terms[Fraction(0)]
        conj = f.degree // field.degree
        center = CurvePoint(y0 if y0 is INF else AlgElem.coerce(y0, f), p0)
        places.append(Place(center, ParamPair(a, b, center), br.e, f, br.gamma, conj, y_class))
    return places


def _swap_at_pole(P):
    """Numerator of P(u, 1/q) written as a polynomial in (q, u)."""
    d = P.degree(1)
    return BiPoly({(d - j, i): c for (i, j), c in P.terms.items()}, P.field, P.vars)


def _places_at_pole(P, y0, field, terms, order_x, y_class):
    """Places over (y0, infinity) expanded as u = y - y0 in powers of q = 1/p.

    With this orientation b = 1/q is a pure power of the parameter and the
    series sits in the first coordinate.
    """
    Q = _swap_at_pole(P)
    prec = max(Fraction(terms), Fraction(1))
    while True:
        branches = [br for br in newton_puiseux(Q, prec, field)
                    if br.series.terms and br.series.order() > 0]
        ok = True
        for br in branches:
            S = br.series
            if S.T == INF:
                continue
            k = S.order()
            need = k + terms
            if order_x is not None:
                need = max(need, (k + br.e) * (math.ceil(order_x) + 2) + 2)
            ok = ok and S.T >= need
        if ok:
            break
        prec *= 2
    out = []
    for br in branches:
        f = br.field
        a = br.series + AlgElem.coerce(y0, f)
        b = PuiseuxSeries.monomial(br.gamma.inverse(), -br.e, f)
        center = CurvePoint(AlgElem.coerce(y0, f), INF)
        out.append(Place(center, ParamPair(a, b, center), int(br.series.order()), f, br.gamma,
                         f.degree // field.degree, y_class))
    return out


def _finite_critical_y(F):
    """Root classes of y0 values where a critical point may lie."""
    y, p = F.vars
    candidates = []
    f0 = F.evaluate(p, F.field.zero())
    if not f0.is_constant():
        candidates.append(f0)
    disc = resultant(F, F.diff(p), p)
    if not disc.is_constant():
        candidates.append(disc)
    seen = []
    for poly in candidates:
        for g, _ in factor_univariate(poly.coerce_field(F.field)):
            if not any(g == h for h in seen):
                seen.append(g)
    seen.sort(key=lambda g: (g.degree, str(g)))
    out = []
    for g in seen:
        if g.degree == 1:
            out.append((-g.coeffs[0], None))
        else:
            _, root = adjoin_root(F.field, g, certified=True)
            out.append((root, g))
    return out


def is_critical(F, center):
    if center.y_infinite or center.p_infinite:
        return True
    if center.p0.is_zero():
        return True
    return F.diff("p")(center.y0, center.p0).is_zero()


def critical_places(F, terms, finite=True, infinite=True):
    """Places of F = 0 centred at critical points."""
    out = []
    if finite:
        for y0, g in _finite_critical_y(F):
            for pl in places_at(F, y0, terms, g):
                if is_critical(F, pl.center):
                    out.append(pl)
    if infinite:
        out.extend(places_at(F, INF, terms))
    return out


def critical_points(F):
    """The critical curve points of F = 0 (finite ones and those with y0 = infinity)."""
    pts = []
    for pl in critical_places(F, 1):
        if not any(pl.center.same_as(q) for q in pts):
            pts.append(pl.center)
    return pts


def local_parametrizations(F, center, terms):
    """Places of F = 0 centred at ``center``; ``terms`` >= truncation_bound(F)."""
    if not center.y_infinite:
        if not F(center.y0, center.p0).is_zero() if not center.p_infinite else False:
            raise ValueError(f"{center} is not on the curve")
    pls = [pl for pl in places_at(F, center.y0, terms) if pl.center.same_as(center)]
    if not pls:
        raise ValueError(f"{center} is not on the curve")
    return pls

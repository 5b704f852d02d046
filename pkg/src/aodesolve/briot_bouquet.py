"""Solution places, the associated reparametrization equation and prolongation.

A place (a(t), b(t)) of F = 0 gives solutions y(x) = a(s(x^(1/n))) of
F(y, (1-h) x^h y') = 0, where s(t) = sigma_1 t + sigma_2 t^2 + ... solves

    a'(s) s' = m t^(m-1) b(s),     m = n (1 - h).

The coefficients are found one at a time: sigma_i enters the coefficient of
t^(k+i-2) linearly, with factor L(i) = k alpha_k sigma_1^(k-1) (k - 1 + i - r).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .numberfield import AlgElem, NumberField, adjoin_root
from .poly import UniPoly, factor_univariate
from .series import INF, OrderUnknownError, PuiseuxSeries, compose, substitute_poly


class InsufficientTruncationError(OrderUnknownError):
    """A needed order or coefficient lies beyond the known part of a truncation."""


class InconsistentError(ValueError):
    """The coefficient recursion met an equation 0 = R with R != 0."""


@dataclass(frozen=True)
class SolutionPlaceCheck:
    place: object
    h: int
    verdict: str           # "solution-place" or "not-solution-place"
    n: int | None = None
    k: Fraction | None = None
    r: Fraction | None = None

    @property
    def is_solution_place(self):
        return self.verdict == "solution-place"


@dataclass
class ReparamSolution:
    """A solution s(t) of the associated equation for one conjugacy class of sigma_1."""

    s: PuiseuxSeries
    n: int
    field: NumberField
    free_parameter: tuple | None = None   # (name, index)
    sigma1_class: UniPoly | None = None   # irreducible factor of z^n - lambda (n > 1)

    @property
    def class_size(self):
        return self.sigma1_class.degree if self.sigma1_class is not None else 1


@dataclass
class CoreResult:
    coeffs: dict
    field: NumberField
    status: str = "ok"                     # "ok" or "inconsistent"
    free_index: int | None = None
    last_index: int = 0
    stopped_early: bool = False


def check_solution_place(place, h):
    """Test n (1 - h) = ord(a - y0) - ord(b) for a positive integer n."""
    if h not in (0, 2):
        raise ValueError("h must be 0 or 2")
    try:
        k = place.k()
        r = place.r()
    except OrderUnknownError as exc:
        raise InsufficientTruncationError(f"insufficient truncation: {exc}") from exc
    if k == INF or r == INF:
        return SolutionPlaceCheck(place, h, "not-solution-place", None, k, r)
    q = Fraction(k - r) / (1 - h)
    if q.denominator == 1 and q > 0:
        return SolutionPlaceCheck(place, h, "solution-place", int(q), k, r)
    return SolutionPlaceCheck(place, h, "not-solution-place", None, k, r)


def briot_bouquet_core(linear, residual, start, terms, field, param_name="_C"):
    """Solve ``L(i) sigma_i = R_i(sigma_1..sigma_{i-1})`` for i after ``start``.

    ``linear(i, field)`` returns L(i); ``residual(i, coeffs, field)`` returns R_i
    (it may raise :class:`OrderUnknownError` when the input data run out, in which
    case the recursion stops and ``stopped_early`` is set).  ``start`` maps the
    already fixed indices to their values.  When L(i) = 0 and R_i = 0, sigma_i
    becomes a fresh transcendental parameter named ``param_name``.
    """
    coeffs = dict(start)
    first = max(start) + 1 if start else 1
    res = CoreResult(coeffs, field, last_index=first - 1)
    for i in range(first, terms + 1):
        try:
            R = residual(i, coeffs, res.field)
        except OrderUnknownError:
            res.stopped_early = True
            break
        L = linear(i, res.field)
        if L.is_zero():
            if not R.is_zero():
                res.status = "inconsistent"
                res.last_index = i
                return res
            if res.free_index is not None:
                raise InconsistentError("more than one free coefficient")
            res.field = res.field.with_parameter(param_name)
            coeffs[i] = res.field.gen()
            res.free_index = i
        else:
            coeffs[i] = R / L
        res.last_index = i
    for i, c in list(coeffs.items()):
        coeffs[i] = AlgElem.coerce(c, res.field)
    return res


def _sigma_equation(place, n, h):
    """(k, r, alpha_k, beta_r, lambda) with sigma_1^n = lambda."""
    chk = check_solution_place(place, h)
    k, r = chk.k, chk.r
    a0 = place.a if place.center.y_infinite else place.a - place.center.y0
    alpha = a0.terms[k]
    beta = place.b.terms[r]
    m = n * (1 - h)
    if k - r != m:
        raise ValueError(f"the place does not satisfy n(1-h) = k - r for n = {n}")
    if h == 0:
        lam = beta * n / (alpha * k)
    else:
        lam = -(alpha * k) / (beta * n)
    return int(k), int(r), alpha, beta, lam


def solve_reparametrization(place, n, h, terms, param_name="_C"):
    """Solutions s(t) of a'(s) s' = n(1-h) t^(n(1-h)-1) b(s), one per sigma_1 class.

    Coefficients sigma_1..sigma_terms are computed when the truncation of the
    place allows it; the returned series carry their known order.
    """
    k, r, alpha, _, lam = _sigma_equation(place, n, h)
    m = n * (1 - h)
    base = place.field
    zpoly = UniPoly([-lam] + [0] * (n - 1) + [1], base)
    out = []
    for g, _ in factor_univariate(zpoly):
        fld, sigma1 = adjoin_root(base, g, certified=True)
        a = place.a.coerce_field(fld)
        b = place.b.coerce_field(fld)
        da = a.derivative()
        cache = {}

        def linear(i, f, sigma1=sigma1, alpha=alpha):
            return AlgElem.coerce(alpha * k * sigma1 ** (k - 1), f) * (k - 1 + i - r)

        def residual(i, coeffs, f, a=a, b=b, da=da):
            s = PuiseuxSeries({Fraction(j): c for j, c in coeffs.items()}, INF, f)
            e = Fraction(k + i - 2)
            prec = e + 1
            lhs = compose(da.coerce_field(f), s, prec)
            lhs = lhs.mul_truncated(s.derivative(), prec)
            rhs = compose(b.coerce_field(f), s, prec - m + 1).shift_exponents(m - 1).scale(m)
            G = (lhs - rhs).truncate(prec)
            return -G.coefficient(e)

        res = briot_bouquet_core(linear, residual, {1: sigma1}, terms, fld, param_name)
        if res.status == "inconsistent":
            continue
        known = res.last_index + 1
        s = PuiseuxSeries({Fraction(j): c for j, c in res.coeffs.items()}, Fraction(known), res.field)
        free = (param_name, res.free_index) if res.free_index is not None else None
        out.append(ReparamSolution(s, n, res.field, free, g if n > 1 else None))
    return out


# ---------------------------------------------------------------------------
# Prolongation

def _apply_D(s, h):
    """(1 - h) x^h ds/dx."""
    d = s.derivative()
    if h == 0:
        return d
    return d.shift_exponents(h).scale(AlgElem.coerce(1 - h, s.field))


def prolong_truncation(F, s, target, point="zero", guaranteed=True):
    """Extend the determined truncation ``s`` to all exponents <= ``target``.

    ``s`` is treated as exact data (a polynomial in x^(1/n)); each new
    coefficient solves a linear equation.  The returned series has known
    order ``target + 1/n``.
    """
    if not guaranteed:
        raise ValueError("prolongation needs a truncation whose extension is certified unique")
    h = 0 if point == "zero" else 2
    target = Fraction(target)
    field = s.field if s.field.level >= F.field.level else F.field
    y = PuiseuxSeries(s.terms, INF, field, point)
    n = y.ramification
    step = Fraction(1, n)
    Fy, Fp = F.diff("y"), F.diff("p")
    Dy = _apply_D(y, h)
    Ey = substitute_poly(Fy, y, Dy)
    Ep = substitute_poly(Fp, y, Dy)
    oy = Ey.order() if Ey.terms else INF
    op = Ep.order() + h - 1 if Ep.terms else INF
    kappa = min(oy, op)
    if kappa == INF:
        raise ValueError("F_y and F_p both vanish on the truncation")
    cy = Ey.terms.get(kappa, field.zero()) if oy == kappa else field.zero()
    cp = Ep.terms.get(kappa + 1 - h, field.zero()) if op == kappa else field.zero()
    start = (s.T if s.T != INF else (max(s.terms) + step if s.terms else step))
    mu = Fraction(math.ceil(start * n), n)
    terms = dict(y.terms)
    first = True
    while mu <= target:
        L = cy + cp * ((1 - h) * mu)
        cur = PuiseuxSeries(terms, INF, y.field, point)
        prec = mu + kappa + step
        val = substitute_poly(F, cur, _apply_D(cur, h), prec)
        if first:
            if any(e < mu + kappa and not c.is_zero() for e, c in val.terms.items()):
                raise InconsistentError("the truncation does not satisfy the equation to its own order")
            first = False
        R = val.coefficient(mu + kappa)
        if L.is_zero():
            if R.is_zero():
                raise InconsistentError(f"coefficient of x^{mu} is free: the truncation is not determined")
            raise InconsistentError(f"no extension exists at x^{mu}: the truncation is not valid")
        c = -R / L
        if not c.is_zero():
            terms[mu] = c
        mu += step
    return PuiseuxSeries(terms, target + step, y.field, point)

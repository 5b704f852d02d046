"""Formal Puiseux series solutions of F(y, y') = 0 (the PuiseuxSolve pipeline)."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import sympy

from .briot_bouquet import (InconsistentError, check_solution_place, prolong_truncation,
                            solve_reparametrization)
from .curve import CurvePoint, INF, _finite_critical_y, is_critical, places_at, truncation_bound
from .numberfield import QQ, AlgElem, adjoin_root, common_field
from .poly import BiPoly, UniPoly, bivariate_divide, bivariate_gcd, factor_univariate, poly_gcd, pseudo_remainder, squarefree_normalize
from .series import OrderUnknownError, PuiseuxSeries, compose, substitute_poly


class OracleError(RuntimeError):
    """A computed truncation failed the substitution check (an internal bug)."""


@dataclass
class SolutionTruncation:
    series: PuiseuxSeries
    initial: CurvePoint
    n: int
    point: str = "zero"
    guarantee: bool = True
    free_parameter: str | None = None
    sigma1_class: UniPoly | None = None
    order: Fraction | None = None          # exponents <= order are exact

    @property
    def field(self):
        return self.series.field


@dataclass
class GenericCoefficient:
    """Coefficient num / (m! * den) of x^m, with num, den polynomials in (_CC, _P)."""

    num: BiPoly
    den: BiPoly
    m: int


@dataclass
class GenericSolution:
    relation: BiPoly                      # F(_CC, _P) = 0
    coefficients: list
    exceptional: list
    component_id: int = 0
    order: int = 0

    def specialize(self, y0, p0):
        """The power series obtained by substituting a curve point for (_CC, _P)."""
        terms = {}
        field = common_field(*(v.field for v in (y0, p0) if isinstance(v, AlgElem)),
                             self.relation.field)
        for c in self.coefficients:
            val = c.num(y0, p0) / c.den(y0, p0) / math.factorial(c.m)
            val = AlgElem.coerce(val, field) if not isinstance(val, AlgElem) else val
            if not val.is_zero():
                terms[Fraction(c.m)] = val
        return PuiseuxSeries(terms, Fraction(self.order + 1), field)

    def render_terms(self):
        names = ("_CC", "_P")
        out = []
        for c in self.coefficients:
            if c.num.is_zero():
                continue
            num = c.num.scale(self.relation.field(Fraction(1, math.factorial(c.m))))
            text = num.render(names)
            if not c.den.is_constant():
                if len(num.terms) > 1:
                    text = f"({text})"
                text += f"/({c.den.render(names)})"
            if c.m:
                if len(num.terms) > 1 and c.den.is_constant():
                    text = f"({text})"
                text += "*x" if c.m == 1 else f"*x^{c.m}"
            out.append(text)
        return " + ".join(out).replace("+ -", "- ") if out else "0"


@dataclass
class SolveReport:
    equation: BiPoly
    bound: int
    order: Fraction
    generic: list = dc_field(default_factory=list)
    constants: list = dc_field(default_factory=list)        # (value, minpoly or None)
    at_zero: list = dc_field(default_factory=list)
    at_infinity: list = dc_field(default_factory=list)
    transforms: list = dc_field(default_factory=list)


# ---------------------------------------------------------------------------
# constants and generic solutions

def constant_solutions(F):
    """Roots of F(y, 0), one representative per conjugacy class."""
    f0 = F.evaluate("p", F.field.zero())
    if f0.is_zero():
        raise ValueError("F(y, 0) vanishes identically; apply squarefree_normalize to remove the factor p")
    if f0.is_constant():
        return []
    out = []
    for g, _ in factor_univariate(f0):
        if g.degree == 1:
            out.append((-g.coeffs[0], None))
        else:
            _, root = adjoin_root(F.field, g, certified=True)
            out.append((root, g))
    return out


def _to_sympy(F):
    y, p = sympy.symbols("y p")
    expr = 0
    for (i, j), c in F.terms.items():
        fr = c.to_fraction()
        expr += sympy.Rational(fr.numerator, fr.denominator) * y ** i * p ** j
    return expr, y, p


def _from_sympy(expr, y, p, field, vars):
    poly = sympy.Poly(expr, y, p)
    terms = {}
    for (i, j), c in poly.terms():
        c = sympy.Rational(c)
        terms[(i, j)] = Fraction(int(c.p), int(c.q))
    return BiPoly(terms, field, vars)


def components(F, irreducible=False):
    """Irreducible factors of F over its coefficient field (best effort).

    Factorisation is attempted over Q only; over an extension F is returned
    unfactored.
    """
    if irreducible or F.field.level > 0:
        return [F]
    expr, y, p = _to_sympy(F)
    _, facs = sympy.factor_list(expr, y, p)
    out = []
    for fac, _ in facs:
        g = _from_sympy(fac, y, p, F.field, F.vars)
        if g.degree("p") > 0:
            out.append(g.normalized(1))
    return out or [F]


def _reduce(N, F):
    """N modulo F in p, when F has constant leading coefficient in p."""
    if F.leading_coeff("p").is_constant() and N.degree("p") >= F.degree("p"):
        lc = F.leading_coeff("p").coeff(0)
        return pseudo_remainder(N, F, "p").scale(lc.inverse() ** (N.degree("p") - F.degree("p") + 1))
    return N


def _total_derivative(G, F, Fp):
    """F_p * D(G) for D = p d/dy + p' d/dp with p' = -F_y p / F_p."""
    p = BiPoly.var(1, F.field, F.vars)
    return p * G.diff(0) * Fp - p * F.diff(0) * G.diff(1)


def _cancel(num, den, F):
    num, den = _reduce(num, F), _reduce(den, F)
    if num.is_zero():
        return num, BiPoly.const(1, F.field, F.vars)
    if not den.is_constant():
        g = bivariate_gcd(num, den, "p")
        if not g.is_constant():
            num, den = bivariate_divide(num, g, "p"), bivariate_divide(den, g, "p")
    if den.degree("p") > 0 and F.leading_coeff("p").is_constant():
        num, den = _rationalize(num, den, F)
    if den.is_constant():
        c = den.terms[(0, 0)]
        return num.scale(c.inverse()), BiPoly.const(1, F.field, F.vars)
    lc = den.leading_term(1)
    return num.scale(lc.inverse()), den.scale(lc.inverse())


def _bareiss_det(M):
    """Determinant of a square matrix of UniPolys (fraction-free elimination)."""
    M = [row[:] for row in M]
    n = len(M)
    sign, prev = 1, None
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = v.exact_div(prev) if prev is not None else v
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def _rationalize(num, den, F):
    """Rewrite num/den modulo F so that the denominator lies in K[y]."""
    d = F.degree("p")
    p = BiPoly.var(1, F.field, F.vars)
    zero_y = UniPoly([], F.field, F.vars[0])

    def column(g):
        cs = g.as_univariate("p")
        return [cs[i] if i < len(cs) else zero_y for i in range(d)]

    cols = [column(_reduce(den * p ** i, F)) for i in range(d)]
    M = [[cols[j][i] for j in range(d)] for i in range(d)]
    D = _bareiss_det(M)
    if D.is_zero():
        return num, den
    e0 = [UniPoly([1], F.field, F.vars[0])] + [zero_y] * (d - 1)
    inv = []
    for j in range(d):
        Mj = [[e0[i] if jj == j else M[i][jj] for jj in range(d)] for i in range(d)]
        inv.append(_bareiss_det(Mj))
    cof = BiPoly.from_univariate(inv, 1, F.field, F.vars)
    new = _reduce(num * cof, F)
    g = D
    for c in new.as_univariate("p"):
        if not c.is_zero():
            g = poly_gcd(g, c)
    if g.degree > 0:
        D = D.exact_div(g)
        new = BiPoly.from_univariate([c.exact_div(g) for c in new.as_univariate("p")], 1,
                                     F.field, F.vars)
    return new, BiPoly.from_univariate([D], 1, F.field, F.vars)


def generic_solution_truncation(F, order, irreducible=False):
    """Generic power series solutions _CC + _P x + ... with F(_CC, _P) = 0.

    Higher derivatives come from differentiating F(y, y') = 0: each step applies
    D = p d/dy + p' d/dp with p' = -F_y p / F_p, working modulo F(_CC, _P).
    """
    order = int(math.floor(order))
    out = []
    for cid, G in enumerate(components(F, irreducible)):
        Gp = G.diff(1)
        one = BiPoly.const(1, G.field, G.vars)
        y = BiPoly.var(0, G.field, G.vars)
        p = BiPoly.var(1, G.field, G.vars)
        coeffs = [GenericCoefficient(y, one, 0)]
        if order >= 1:
            coeffs.append(GenericCoefficient(_reduce(p, G), one, 1))
        num, den = p, one
        for m in range(2, order + 1):
            if num.is_zero():
                coeffs.append(GenericCoefficient(num, one, m))
                continue
            # D(num/den) = (den D~num - num D~den) / (F_p den^2)
            nn = den * _total_derivative(num, G, Gp) - num * _total_derivative(den, G, Gp)
            num, den = _cancel(nn, Gp * den * den, G)
            coeffs.append(GenericCoefficient(num, den, m))
        exceptional = []
        lc = BiPoly.from_univariate([G.leading_coeff("p")], 1, G.field, G.vars)
        for c in (p, Gp, lc):
            c = _reduce(c, G)
            if c.is_constant():
                continue
            c = c.normalized(1)
            if not any(c == d for d in exceptional):
                exceptional.append(c)
        out.append(GenericSolution(G, coeffs, exceptional, cid, order))
    return out


# ---------------------------------------------------------------------------
# truncations at critical places

def _apply_D(s, h):
    d = s.derivative()
    if h == 0:
        return d
    return d.shift_exponents(h).scale(AlgElem.coerce(1 - h, s.field))


def check_truncation(F, y, h=0):
    """Substitution oracle: F(y, (1-h) x^h y') must vanish up to its known order."""
    val = substitute_poly(F, y, _apply_D(y, h))
    return not val.terms


def _place_truncations(F, place, h, order_x, bound):
    """Solution truncations (as series in x) coming from one place."""
    chk = check_solution_place(place, h)
    if not chk.is_solution_place:
        return []
    n = chk.n
    k = int(chk.k)
    terms = n * math.ceil(order_x) + 3 + abs(k) + n
    out = []
    for sol in solve_reparametrization(place, n, h, terms):
        a = place.a.coerce_field(sol.field)
        ys = compose(a, sol.s)
        ys = ys.substitute_power(Fraction(1, n))
        out.append((ys, n, sol))
    return out


def _solve_at_y0(F, y0, h, order_x, bound, inverted=False):
    """All truncations with initial value y0 (finite, or INF for h = 2)."""
    need = Fraction(order_x)
    terms = bound
    while True:
        results = []
        short = False
        for pl in places_at(F, y0, terms, order_x=need):
            if h == 0 and not inverted and not is_critical(F, pl.center):
                continue
            if h == 2 and not pl.center.y_infinite and not (
                    not pl.center.p_infinite and pl.center.p0.is_zero()):
                continue
            for ys, n, sol in _place_truncations(F, pl, h, need, bound):
                if ys.T <= need:
                    short = True
                results.append((pl, ys, n, sol))
        if not short or terms > 16 * (bound + order_x + 4):
            return results
        terms *= 2


def _inverted_equation(F):
    """Numerator of F(1/y, -p/y^2)."""
    D = max(i + 2 * j for (i, j) in F.terms)
    terms = {}
    for (i, j), c in F.terms.items():
        terms[(D - i - 2 * j, j)] = c * (-1) ** j
    return BiPoly(terms, F.field, F.vars)


def _has_inf_inf(F):
    """Whether (infinity, infinity) lies on the closure of F = 0."""
    # places at y = infinity with p of negative order
    for pl in places_at(F, INF, 1):
        if pl.center.p_infinite:
            return True
    return False


def _sort_key(tr):
    def coord(v):
        if v is INF:
            return (2, "")
        return (0 if v.is_rational() else 1, str(v))
    return (coord(tr.initial.y0), coord(tr.initial.p0), tr.n, str(tr.sigma1_class or ""), str(tr.series))


def puiseux_solve(F, order=None, generic=True, const=True, finite=True, infinity=True,
                  iv=None, irreducible=False, bound_override=None, jobs=1, verify=True):
    """Compute all solution truncations of F(y, y') = 0.

    ``order``: exponents up to and including ``order`` are reported exactly
    (default: the truncation bound).  ``iv`` keeps only truncations with
    y(0) = iv.  Returns a :class:`SolveReport`.
    """
    if F.is_zero() or F.is_constant():
        raise ValueError("the equation must be a non-constant polynomial")
    G, removed = squarefree_normalize(F)
    bound = bound_override if bound_override is not None else truncation_bound(G)
    order = Fraction(order) if order is not None else Fraction(bound)
    eff = max(order, Fraction(bound))
    report = SolveReport(G, bound, eff)
    if G != F:
        report.transforms.append(f"squarefree normalization: {F} -> {G}")
    extra_constants = []
    for fac in removed:
        if fac.degree("p") == 0:
            report.transforms.append(f"removed factor {fac} (constant solutions)")
            extra_constants.append(fac.evaluate("p", fac.field.zero()))
        elif fac.degree("y") == 0:
            report.transforms.append(f"removed factor {fac} (solutions y = c*x + d with {fac} = 0 at p = c)")
        else:
            report.transforms.append(f"removed repeated factor {fac}")
    iv = AlgElem.coerce(iv, G.field) if iv is not None and not isinstance(iv, AlgElem) else iv

    if generic:
        report.generic = generic_solution_truncation(G, eff, irreducible)
    if const:
        consts = constant_solutions(G)
        for f0 in extra_constants:
            for g, _ in factor_univariate(f0):
                if g.degree == 1:
                    consts.append((-g.coeffs[0], None))
                else:
                    consts.append((adjoin_root(G.field, g, certified=True)[1], g))
        uniq = []
        for c in consts:
            if not any(c[0].field == d[0].field and c[0] == d[0] for d in uniq):
                uniq.append(c)
        report.constants = uniq

    tasks = []
    if finite:
        for y0, g in _finite_critical_y(G):
            tasks.append(("finite", y0, g))
        if _has_inf_inf(G):
            report.transforms.append("inverted y -> 1/y for solutions of negative order")
            tasks.append(("inverted", None, None))
    if infinity:
        f0 = G.evaluate("p", G.field.zero())
        if not f0.is_constant():
            for g, _ in factor_univariate(f0):
                y0 = -g.coeffs[0] if g.degree == 1 else adjoin_root(G.field, g, certified=True)[1]
                tasks.append(("infinity", y0, g if g.degree > 1 else None))
        tasks.append(("infinity", INF, None))

    def run(task):
        kind, y0, _ = task
        found = []
        if kind == "finite":
            for pl, ys, n, sol in _solve_at_y0(G, y0, 0, eff, bound):
                found.append(("zero", SolutionTruncation(
                    ys.truncate(eff + Fraction(1, n)), pl.center, n, "zero",
                    ys.T > eff, None, sol.sigma1_class, eff)))
        elif kind == "inverted":
            found.extend(_inverted_solutions(G, eff, bound))
        else:
            for pl, ys, n, sol in _solve_at_y0(G, y0, 2, eff, bound):
                name = sol.free_parameter[0] if sol.free_parameter else None
                ys = ys.with_point("infinity")
                found.append(("infinity", SolutionTruncation(
                    ys.truncate(eff + Fraction(1, n)), pl.center, n, "infinity",
                    False, name, sol.sigma1_class, eff)))
        return found

    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(run, tasks))
    else:
        results = [run(t) for t in tasks]
    for found in results:
        for where, tr in found:
            if verify and not check_truncation(G, tr.series, 0 if where == "zero" else 2):
                raise OracleError(f"truncation {tr.series} does not satisfy {G}")
            (report.at_zero if where == "zero" else report.at_infinity).append(tr)

    if iv is not None:
        report.at_zero = [tr for tr in report.at_zero if _initial_value_matches(tr, iv)]
        report.constants = [c for c in report.constants if c[0].field == iv.field and c[0] == iv
                            or (c[0].is_rational() and iv.is_rational() and c[0].to_fraction() == iv.to_fraction())]
        report.transforms.append(f"kept only solutions with y(0) = {iv}")
    report.at_zero.sort(key=_sort_key)
    report.at_infinity.sort(key=_sort_key)
    return report


def _initial_value_matches(tr, iv):
    if tr.initial.y_infinite:
        return False
    y0 = tr.initial.y0
    try:
        return (y0 - AlgElem.coerce(iv, y0.field)).is_zero()
    except Exception:
        return False


def _inverted_solutions(G, eff, bound):
    """Negative-order solutions, via the positive-order solutions of the inverted equation."""
    H = _inverted_equation(G)
    out = []
    try:
        Hn, removed = squarefree_normalize(H)
    except ValueError:
        Hn, removed = None, [H]
    center = CurvePoint(INF, INF)
    for fac in removed:
        if fac.degree("y") == 0 and fac.degree("p") > 0:
            # factor in p only: y~ = c x, so y = 1 / (c x)
            for g, _ in factor_univariate(fac.evaluate("y", fac.field.zero())):
                fld, c = adjoin_root(G.field, g, certified=True)
                if c.is_zero():
                    continue
                ys = PuiseuxSeries.monomial(c.inverse(), -1, fld)
                out.append(("zero", SolutionTruncation(ys.truncate(eff + 1), center, 1, "zero", True,
                                                       None, g if g.degree > 1 else None, eff)))
    if Hn is None:
        return out
    need = eff + 2
    while True:
        res = _solve_at_y0(Hn, Hn.field.zero(), 0, need, truncation_bound(Hn), inverted=True)
        ok = True
        items = []
        for pl, ys, n, sol in res:
            v = ys.order()
            target = eff + Fraction(1, n)
            inv = ys.inverse(target)
            if inv.T < target:
                ok = False
                need = max(need, eff + 2 * v + 1)
            items.append((inv, n, sol))
        if ok:
            break
    for inv, n, sol in items:
        out.append(("zero", SolutionTruncation(inv.truncate(eff + Fraction(1, n)), center, n, "zero",
                                               True, None, sol.sigma1_class, eff)))
    return out


def prolong(F, truncation, target):
    """Prolong a :class:`SolutionTruncation` (or a raw determined series) to ``target``."""
    if isinstance(truncation, SolutionTruncation):
        return prolong_truncation(F, truncation.series, target, truncation.point, truncation.guarantee)
    return prolong_truncation(F, truncation, target)

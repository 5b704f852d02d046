"""Algebraic solutions: reconstruct the minimal polynomial G(x, y) of a solution.

A Puiseux solution ybar is prolonged far enough that any A(x, y) of bounded
degree with ord_x A(x, ybar) above a threshold must vanish on ybar.  The
smallest kernel element of the resulting linear system is the candidate,
which is certified by the differential pseudo-remainder of F with respect to it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math

from .briot_bouquet import InsufficientTruncationError, prolong_truncation
from .numberfield import QQ, AlgElem
from .poly import BiPoly, factor_univariate, pseudo_remainder, squarefree_normalize
from .series import INF, PuiseuxSeries
from .solver import components, puiseux_solve

XY = ("x", "y")


@dataclass
class MinimalPolynomialResult:
    G: BiPoly                 # in (x, y)
    family: BiPoly            # G(x + c, y) over Q(c)
    component_id: int
    seed: PuiseuxSeries

    def family_string(self):
        return render_family(self.G)


def _nullspace(rows, ncols, field):
    """Basis of the right kernel of a matrix given as a list of rows of AlgElem."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero() for _ in range(ncols)]
        v[fc] = field.one()
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def bounds(F, nu):
    """(d_x, d_y, nu', N0, B) for the reconstruction of a solution of order ``nu``."""
    dx = F.degree("p")
    dy = F.degree("y") + F.degree("p")
    nup = min(Fraction(nu), Fraction(0))
    N0 = 2 * dx * dy - 2 * nup * (dy - 1)
    B = 2 * dx * dy - nup * (dy - 1)
    return dx, dy, nup, N0, B


def reconstruct_candidate(ybar, d_x, d_y, nu_prime):
    """Smallest nonzero A(x, y), deg_x A <= d_x, deg_y A <= d_y, vanishing on ``ybar``.

    Every coefficient of A(x, ybar(x)) below its known order is required to
    vanish; the known order must exceed 2 d_x d_y - nu' (d_y - 1).  Boxes are
    tried in lexicographic order of (deg_y, deg_x).  Returns None when the
    kernel is trivial for every box.
    """
    B = 2 * d_x * d_y - Fraction(nu_prime) * (d_y - 1)
    field = ybar.field
    powers = [PuiseuxSeries.constant(1, field)]
    for _ in range(d_y):
        powers.append(powers[-1] * ybar)
    known = min(powers[j].T + i for j in range(d_y + 1) for i in range(d_x + 1))
    if known <= B:
        raise InsufficientTruncationError(
            f"insufficient truncation: A(x, ybar) is known below x^{known}, "
            f"but the reconstruction needs more than x^{B}")
    for dyp in range(1, d_y + 1):
        for dxp in range(0, d_x + 1):
            monos = [(i, j) for j in range(dyp + 1) for i in range(dxp + 1)]
            T = min(powers[j].T + i for (i, j) in monos)
            exps = sorted({e + i for (i, j) in monos for e in powers[j].terms if e + i < T})
            rows = [[powers[j].terms.get(e - i, field.zero()) for (i, j) in monos] for e in exps]
            basis = _nullspace(rows, len(monos), field) if rows else \
                [[field.one() if k == c else field.zero() for k in range(len(monos))]
                 for c in range(len(monos))]
            basis = [v for v in basis if any(not v[monos.index(m)].is_zero()
                                              for m in monos if m[1] > 0)]
            if basis:
                v = min(basis, key=lambda v: sum(1 for c in v if not c.is_zero()))
                return _normalize(BiPoly({m: c for m, c in zip(monos, v)}, field, XY))
    return None


def _normalize(A):
    """Scale so that the leading coefficient in y is 1 (then rational content cleared)."""
    A = A.scale(A.leading_term(1).inverse())
    if all(c.is_rational() for c in A.terms.values()):
        fr = [c.to_fraction() for c in A.terms.values()]
        den = math.lcm(*(f.denominator for f in fr))
        num = math.gcd(*(int(f * den) for f in fr))
        A = A.scale(A.field(Fraction(den, num)))
        A = A.coerce_field(QQ) if A.field.level > 0 and _all_rational(A) else A
    return A


def _all_rational(A):
    return all(c.is_rational() for c in A.terms.values())


def diff_pseudo_remainder(F, A):
    """Pseudo-remainder of F(y, -A_x/A_y) * A_y^(deg_p F) by A with respect to y."""
    A = A.with_vars(XY)
    if A.degree("y") < 1:
        raise ValueError("A must involve y")
    d = F.degree("p")
    Ax, Ay = A.diff("x"), A.diff("y")
    negAx = -Ax
    field = A.field
    y = BiPoly.var(1, field, XY)
    H = BiPoly({}, field, XY)
    powx = [BiPoly.const(1, field, XY)]
    powy = [BiPoly.const(1, field, XY)]
    for _ in range(d):
        powx.append(powx[-1] * negAx)
        powy.append(powy[-1] * Ay)
    for (i, j), c in F.terms.items():
        H = H + (y ** i) * powx[j] * powy[d - j] * c
    return pseudo_remainder(H, A, "y")


def shift_family(G, c="c"):
    """G(x + c, y) with ``c`` a transcendental parameter."""
    G = G.with_vars(XY)
    fld = G.field.with_parameter(c)
    return G.coerce_field(fld).compose_linear("x", fld.gen())


def render_family(G, c="c"):
    """G(x + c, y) written with x replaced by (x+c)."""
    return render_xy(G).replace("x", f"(x+{c})")


def render_xy(G):
    """G(x, y) with terms ordered by degree in y."""
    return G.with_vars(XY).render(main=1)


def _seed_key(tr):
    return (0 if tr.n == 1 and tr.field.level == 0 else 1, tr.field.degree, tr.n)


def _regular_seed(G, order):
    """A power series solution through a regular point with rational coordinates."""
    for y0 in _small_rationals():
        f = G.evaluate("y", G.field(y0))
        if f.degree < 1:
            continue
        for g, _ in factor_univariate(f):
            if g.degree != 1:
                continue
            p0 = -g.coeffs[0]
            if p0.is_zero() or G.diff("p")(G.field(y0), p0).is_zero():
                continue
            start = PuiseuxSeries({Fraction(0): G.field(y0), Fraction(1): p0}, INF, G.field) \
                if y0 != 0 else PuiseuxSeries({Fraction(1): p0}, INF, G.field)
            return prolong_truncation(G, start, order)
    return None


def _small_rationals():
    yield 0
    for k in range(1, 30):
        yield k
        yield -k
    for den in range(2, 6):
        for k in range(1, 10):
            if math.gcd(k, den) == 1:
                yield Fraction(k, den)
                yield Fraction(-k, den)


def _seeds(G):
    rep = puiseux_solve(G, None, generic=False, const=False, infinity=False)
    good = sorted((tr for tr in rep.at_zero if tr.guarantee and tr.free_parameter is None),
                  key=_seed_key)
    return good


def algebraic_solution(F, irreducible=False):
    """Minimal polynomials of the algebraic solutions of F(y, y') = 0.

    Returns a list with one :class:`MinimalPolynomialResult` per component that
    has algebraic solutions (empty when there are none).
    """
    F, _ = squarefree_normalize(F)
    out = []
    for cid, G in enumerate(components(F, irreducible)):
        res = _component_solution(G, cid)
        if res is not None:
            out.append(res)
    return out


def _component_solution(G, cid):
    seeds = _seeds(G)
    candidates = []
    for tr in seeds[:1]:
        candidates.append(tr.series)
    if not candidates:
        nu = Fraction(0)
        _, _, _, N0, _ = bounds(G, nu)
        seed = _regular_seed(G, N0)
        if seed is None:
            raise ValueError("no Puiseux solution is available to seed the reconstruction")
        candidates.append(seed)
    for ybar in candidates:
        nu = ybar.order()
        dx, dy, nup, N0, B = bounds(G, nu)
        n = ybar.ramification
        if ybar.T <= N0:
            ybar = prolong_truncation(G, ybar, N0)
        A = reconstruct_candidate(ybar, dx, dy, nup)
        if A is None:
            return None
        if not diff_pseudo_remainder(G, A).is_zero():
            return None
        if A.degree("x") != dx or A.degree("y") > dy:
            raise AssertionError(f"degree bounds violated by {A}: deg_x should be {dx}, deg_y <= {dy}")
        return MinimalPolynomialResult(A, shift_family(A), cid, ybar)
    return None

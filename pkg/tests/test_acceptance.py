"""Acceptance suite: one recorded PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (a summary section lists the
verdicts) or ``python tests/test_acceptance.py`` for the bare lines.
"""
from fractions import Fraction
import math
import random
import traceback

import pytest
import sympy as sp

from aodesolve.algebraic import algebraic_solution, diff_pseudo_remainder, render_family
from aodesolve.briot_bouquet import check_solution_place
from aodesolve.curve import INF, is_critical, places_at, truncation_bound, _finite_critical_y
from aodesolve.numberfield import QQ, AlgElem
from aodesolve.poly import BiPoly, resultant, squarefree_normalize
from aodesolve.report import expand_conjugates
from aodesolve.series import substitute_poly
from aodesolve.solver import check_truncation, prolong, puiseux_solve

import germ_oracle as oracle
from helpers import eq


def _run(check):
    try:
        check()
        return True, ""
    except Exception:
        return False, traceback.format_exc()


# ---------------------------------------------------------------------------
# 1. ramified worked example

def check_ramified():
    rep = puiseux_solve(eq("4y'^2 y - 1"), 2)
    (tr,) = [t for t in rep.at_zero if t.n == 3]
    assert str(tr.sigma1_class) == "z^3 - 6"
    assert tr.guarantee and tr.series.ramification == 3
    # every reported coefficient equals the closed form 6^(2/3)/4 x^(2/3)
    sigma = tr.field.gen()
    assert (sigma ** 3 - 6).is_zero()
    assert tr.series.terms == {Fraction(2, 3): sigma * sigma / 4}
    # y^3 = (9/16) x^2
    assert AlgElem.coerce(tr.series.terms[Fraction(2, 3)] ** 3, QQ) == QQ(Fraction(9, 16))
    # substitution oracle: residual vanishes below the claimed order
    val = substitute_poly(rep.equation, tr.series, tr.series.derivative())
    assert not val.terms and val.T >= tr.order - 1
    assert rep.constants == [] and rep.generic


def test_criterion_1(criterion):
    ok, detail = _run(check_ramified)
    criterion(1, "4y'^2y-1: class 6^(2/3)x^(2/3)/4, n=3, sigma1^3=6, y^3=(9/16)x^2", ok)
    assert ok, detail


# ---------------------------------------------------------------------------
# 2. trigonometric case

def check_trig():
    rep = puiseux_solve(eq("y'^2 + y^2 - 1"), 10)
    assert sorted(str(v) for v, _ in rep.constants) == ["-1", "1"]
    (tr,) = [t for t in rep.at_zero if str(t.initial) == "(1, 0)"]
    cos10 = {Fraction(2 * k): QQ(Fraction((-1) ** k, math.factorial(2 * k))) for k in range(6)}
    assert tr.series.truncate(11).terms == cos10
    assert tr.series.T > 10
    (g,) = rep.generic
    CC, PP = BiPoly.var(0), BiPoly.var(1)
    rel = g.relation.normalized(1)
    assert rel == PP * PP + CC * CC - 1          # _P^2 = 1 - _CC^2


def test_criterion_2(criterion):
    ok, detail = _run(check_trig)
    criterion(2, "y'^2+y^2-1, N=10: constants +-1, cos x to degree 10 at (1,0), _P^2=1-_CC^2", ok)
    assert ok, detail


# ---------------------------------------------------------------------------
# 3. family at infinity

def check_infinity_family():
    rep = puiseux_solve(eq("y'^2 - 4y^3"), 5)
    fams = [t for t in rep.at_infinity if t.free_parameter]
    assert fams
    for t in fams:
        K = t.field
        C = K.gen()
        s = t.series.truncate(6)
        assert s.terms[Fraction(2)] == K.one()
        c = -s.terms[Fraction(3)] / 2             # the shift c in terms of the free parameter
        assert not c.is_zero() and c.field.has_parameters
        # 1/(x+c)^2 = sum (k+1) (-c)^k z^(k+2),  z = 1/x
        expected = {Fraction(k + 2): (-c) ** k * (k + 1) for k in range(4)}
        assert s.terms == expected
        assert s.T >= 6
        assert check_truncation(rep.equation, t.series, 2)
        assert C.field == K


def test_criterion_3(criterion):
    ok, detail = _run(check_infinity_family)
    criterion(3, "y'^2-4y^3: at-infinity family equals 1/(x+c)^2 through z^5, identically in c", ok)
    assert ok, detail


# ---------------------------------------------------------------------------
# 4. algebraic decisions

def check_algebraic():
    expected = {"y'^2 - y": "4*y - (x+c)^2", "4y'^2 y - 1": "16*y^3 - 9*(x+c)^2", "y' - y": None}
    for text, fam in expected.items():
        F = eq(text)
        res = algebraic_solution(F)
        if fam is None:
            assert res == []
            continue
        (r,) = res
        assert render_family(r.G) == fam
        assert r.G.degree("x") == F.degree("p")
        assert r.G.degree("y") <= F.degree("y") + F.degree("p")
        assert diff_pseudo_remainder(F, r.G).is_zero()


def test_criterion_4(criterion):
    ok, detail = _run(check_algebraic)
    criterion(4, "algebraic: 4y-(x+c)^2, 16y^3-9(x+c)^2, none for y'-y; degree bounds hold", ok)
    assert ok, detail


# ---------------------------------------------------------------------------
# 5. solution-place filter against an independent oracle

BASES = ["y'^2 - y", "4y'^2 y - 1", "y'^2 + y^2 - 1", "y'^2 - 4y^3", "y' - y", "y' + y^2",
         "y'^3 - y^2"]


def seeded_curves(count=20, seed=20240611):
    """Products and perturbations of the worked examples, squarefree-normalized."""
    rng = random.Random(seed)
    y, p = BiPoly.var(0), BiPoly.var(1)
    bases = [eq(t) for t in BASES]
    curves = []
    while len(curves) < count:
        kind = rng.random()
        if kind < 0.4:
            F = rng.choice(bases) * rng.choice(bases)
        else:
            F = rng.choice(bases)
            for _ in range(rng.randint(1, 2)):
                i, j = rng.randint(0, 3), rng.randint(0, 2)
                F = F + (y ** i) * (p ** j) * rng.choice([-2, -1, 1, 2, 3])
        if F.degree("p") == 0 or F.degree("y") == 0:
            continue
        G, _ = squarefree_normalize(F)
        if G.degree("p") == 0 or G.degree("p") > 3 or G.degree("y") > 4:
            continue
        if any(G == c for c in curves):
            continue
        curves.append(G)
    return curves


def _library_counts(F, y0):
    """Solutions per center class at y0 implied by the solution-place test."""
    counts = {"0": 0, "inf": 0, "crit": 0}
    verdicts = []
    for pl in places_at(F, QQ(y0), truncation_bound(F)):
        if not is_critical(F, pl.center):
            continue
        key = "inf" if pl.center.p_infinite else ("0" if pl.center.p0.is_zero() else "crit")
        chk = check_solution_place(pl, 0)
        verdicts.append((key, chk.is_solution_place))
        if chk.is_solution_place:
            counts[key] += chk.n * pl.conjugates
    return counts, verdicts


def check_place_filter(report):
    curves = seeded_curves()
    assert len(curves) == 20
    for F in curves:
        Fs = oracle.to_sympy(F)
        for y0 in oracle.rational_critical_y(Fs):
            ours, verdicts = _library_counts(F, Fraction(int(y0.p), int(y0.q)))
            theirs = {"0": 0, "inf": 0, "crit": 0}
            for leaf in oracle.grow(Fs, y0):
                key = oracle.classify(Fs, y0, leaf)
                if key is not None:
                    theirs[key] += 1
            report.append((str(F), str(y0), ours, theirs))
            assert ours == theirs, f"{F} at y0={y0}: places say {ours}, oracle finds {theirs}"
            for key, passing in verdicts:
                if not passing and not any(k == key and ok for k, ok in verdicts):
                    assert theirs[key] == 0


def test_criterion_5(criterion):
    report = []
    ok, detail = _run(lambda: check_place_filter(report))
    criterion(5, f"solution-place filter vs brute-force oracle on 20 seeded curves "
                 f"({len(report)} centers)", ok)
    assert ok, detail


# ---------------------------------------------------------------------------
# 6. Newton-Puiseux oracle

def _is_regular_value(F, y0):
    y0 = QQ(y0)
    if F.evaluate("p", F.field.zero())(y0).is_zero():
        return False
    if F.leading_coeff("p")(y0).is_zero():
        return False
    return not resultant(F, F.diff("p"), "p")(y0).is_zero()


def check_newton_puiseux():
    curves = [eq(t) for t in BASES] + seeded_curves()
    rng = random.Random(99)
    for F in curves:
        terms = truncation_bound(F)
        pls = [pl for y0, _ in _finite_critical_y(F) for pl in places_at(F, y0, terms)]
        pls += places_at(F, INF, terms)
        for pl in pls:
            val = substitute_poly(F, pl.a, pl.b)
            assert not val.terms, f"{F}: F(a, b) = {val}"
            assert val.T - min(pl.a.order(), pl.b.order(), 0) * F.degree("y") * F.degree("p") >= 0
            assert pl.b.T == INF or pl.b.T - pl.b.order() >= terms or pl.a.T - pl.k() >= terms
        checked = 0
        while checked < 5:
            y0 = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
            if not _is_regular_value(F, y0):
                continue
            count = sum(pl.conjugates for pl in places_at(F, QQ(y0), 2))
            assert count == F.degree("p"), f"{F} at y0={y0}: {count} branches"
            checked += 1


def test_criterion_6(criterion):
    ok, detail = _run(check_newton_puiseux)
    criterion(6, "every place satisfies F(a,b)=0 to its truncation; deg_p F branches at regular y0",
              ok)
    assert ok, detail


# ---------------------------------------------------------------------------
# 7. prolongation determinism

SUITES = ["4y'^2 y - 1", "y'^2 + y^2 - 1", "y'^2 - y", "y'^2 - 4y^3", "y' + y^2", "y' - y",
          "y'^3 - y^2"]


def check_prolongation():
    seen = 0
    for text in SUITES:
        F = eq(text)
        rep = puiseux_solve(F)
        for tr in rep.at_zero:
            if not tr.guarantee:
                continue
            two_step = prolong(rep.equation, prolong(rep.equation, tr, 8), 16)
            direct = prolong(rep.equation, tr, 16)
            assert two_step.truncate(16 + Fraction(1, tr.n)) == direct.truncate(16 + Fraction(1, tr.n))
            assert check_truncation(rep.equation, direct)
            seen += 1
    assert seen >= 6


def test_criterion_7(criterion):
    ok, detail = _run(check_prolongation)
    criterion(7, "prolong 8 then 16 equals prolong directly to 16 for every guaranteed truncation", ok)
    assert ok, detail


# ---------------------------------------------------------------------------
# 8. distinct initial segments

def check_distinct():
    for text, N in (("4y'^2 y - 1", 2), ("y'^2 + y^2 - 1", 10)):
        rep = puiseux_solve(eq(text), N)
        sols = []
        for tr in rep.at_zero:
            if tr.guarantee:
                sols.extend((tr, s.series) for s in expand_conjugates(tr))
        assert sols
        for i in range(len(sols)):
            for j in range(i + 1, len(sols)):
                (t1, s1), (t2, s2) = sols[i], sols[j]
                if not t1.initial.same_as(t2.initial) or s1.field != s2.field:
                    # different centers, or coefficients generating different fields
                    assert str(s1) != str(s2) or not t1.initial.same_as(t2.initial)
                    continue
                T = min(s1.T, s2.T)
                assert s1.truncate(T) != s2.truncate(T)


def test_criterion_8(criterion):
    ok, detail = _run(check_distinct)
    criterion(8, "guaranteed at-zero truncations have pairwise distinct initial segments", ok)
    assert ok, detail


if __name__ == "__main__":
    import sys
    checks = [check_ramified, check_trig, check_infinity_family, check_algebraic,
              lambda: check_place_filter([]), check_newton_puiseux, check_prolongation,
              check_distinct]
    failed = 0
    for k, chk in enumerate(checks, 1):
        ok, detail = _run(chk)
        print(f"{'PASS' if ok else 'FAIL'} criterion {k}")
        if not ok:
            failed += 1
            print(detail, file=sys.stderr)
    sys.exit(1 if failed else 0)

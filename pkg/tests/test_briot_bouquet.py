from fractions import Fraction
import math

import pytest

from aodesolve.briot_bouquet import (InconsistentError, briot_bouquet_core, check_solution_place,
                                     prolong_truncation, solve_reparametrization)
from aodesolve.curve import CurvePoint, Place, places_at
from aodesolve.numberfield import QQ, AlgElem
from aodesolve.poly import UniPoly
from aodesolve.series import INF, ParamPair, PuiseuxSeries, compose, substitute_poly
from aodesolve.solver import check_truncation

from helpers import eq, x_series


def mono(c, e, field=QQ):
    return PuiseuxSeries.monomial(c, e, field)


def make_place(a, b, y0=QQ(0), p0=QQ(0)):
    center = CurvePoint(y0, p0)
    return Place(center, ParamPair(a, b, center), 1, a.field)


def test_solution_place_checks():
    chk = check_solution_place(make_place(mono(1, 2), mono(1, 1)), 0)
    assert chk.is_solution_place and chk.n == 1
    pl = make_place(mono(1, 2), mono(2, 3))
    assert not check_solution_place(pl, 0).is_solution_place
    chk2 = check_solution_place(pl, 2)
    assert chk2.is_solution_place and chk2.n == 1


def test_check_needs_known_orders():
    stub = PuiseuxSeries.zero(QQ, 3)
    with pytest.raises(Exception, match="insufficient truncation"):
        check_solution_place(make_place(mono(1, 2), stub), 0)


def test_reparametrization_parabola():
    (sol,) = solve_reparametrization(make_place(mono(1, 2), mono(1, 1)), 1, 0, 6)
    assert sol.s.terms == {Fraction(1): QQ(Fraction(1, 2))}
    assert compose(mono(1, 2), sol.s).terms == {Fraction(2): QQ(Fraction(1, 4))}


def test_reparametrization_ramified_representative():
    """The representative (t^2/4, 1/t) gives sigma_1^3 = 6 and s = sigma_1 t exactly."""
    pl = make_place(mono(Fraction(1, 4), 2), mono(1, -1), QQ(0), INF)
    (sol,) = solve_reparametrization(pl, 3, 0, 8)
    assert str(sol.sigma1_class) == "z^3 - 6"
    assert sol.class_size == 3
    (e, c), = sol.s.terms.items()
    assert e == 1 and (c ** 3 - 6).is_zero()
    # a(s) = sigma_1^2 t^2 / 4, and (sigma_1^2 / 4)^3 = 36 / 64 = 9 / 16
    y = compose(pl.a, sol.s)
    assert y.terms[Fraction(2)] == c * c / 4


def test_reparametrization_ramified_invariant():
    # whatever sigma_1 is, the resulting a(s(t)) has leading coefficient with cube 9/16
    pl = make_place(mono(Fraction(1, 4), 2), mono(1, -1), QQ(0), INF)
    (sol,) = solve_reparametrization(pl, 3, 0, 8)
    y = compose(pl.a, sol.s)
    assert AlgElem.coerce(y.terms[Fraction(2)] ** 3, QQ) == QQ(Fraction(9, 16))


def test_h2_family_free_index_two():
    pl = make_place(mono(1, 2), mono(2, 3), INF, INF)
    sols = solve_reparametrization(pl, 1, 2, 6)
    assert sols
    for sol in sols:
        assert sol.free_parameter is not None
        assert sol.free_parameter[1] == 2
        assert sol.s.terms[Fraction(1)] in (QQ(1), QQ(-1))


def test_core_constrained_exponential():
    # i sigma_i = sigma_{i-1}, sigma_1 = 1: the coefficients of e^t - 1
    res = briot_bouquet_core(lambda i, f: f(i), lambda i, cs, f: cs[i - 1], {1: QQ(1)}, 6, QQ)
    assert res.status == "ok"
    assert [res.coeffs[i] for i in range(1, 7)] == [QQ(Fraction(1, math.factorial(i))) for i in range(1, 7)]


def test_core_free_and_inconsistent():
    lin = lambda i, f: f(0) if i == 2 else f(1)
    free = briot_bouquet_core(lin, lambda i, cs, f: f.zero(), {1: QQ(1)}, 4, QQ)
    assert free.free_index == 2 and free.field.has_parameters
    bad = briot_bouquet_core(lin, lambda i, cs, f: f.one() if i == 2 else f.zero(), {1: QQ(1)}, 4, QQ)
    assert bad.status == "inconsistent"


def test_prolong_examples():
    F = eq("y'^2 - y")
    s = prolong_truncation(F, x_series({2: Fraction(1, 4)}, INF), 10)
    assert s.terms == {Fraction(2): QQ(Fraction(1, 4))}
    assert s.T > 10
    s = prolong_truncation(eq("y' - y"), x_series({0: 1, 1: 1}, INF), 4)
    assert s.terms == {Fraction(k): QQ(Fraction(1, [1, 1, 2, 6, 24][k])) for k in range(5)}
    s = prolong_truncation(eq("y'^2 + y^2 - 1"), x_series({0: 1, 2: Fraction(-1, 2)}, INF), 6)
    assert s.terms == {Fraction(0): QQ(1), Fraction(2): QQ(Fraction(-1, 2)),
                       Fraction(4): QQ(Fraction(1, 24)), Fraction(6): QQ(Fraction(-1, 720))}


def test_prolong_idempotent():
    F = eq("y' - y")
    s = x_series({0: 1, 1: 1}, INF)
    assert prolong_truncation(F, prolong_truncation(F, s, 5), 9) == prolong_truncation(F, s, 9)


def test_prolong_rejects_non_solution():
    with pytest.raises(InconsistentError):
        prolong_truncation(eq("y' - y"), x_series({0: 1, 1: 2}, INF), 4)


def test_prolong_requires_guarantee():
    with pytest.raises(ValueError):
        prolong_truncation(eq("y' - y"), x_series({0: 1, 1: 1}, INF), 4, guaranteed=False)


def test_h2_free_parameter_soundness():
    """Two rational values of the family parameter both give solutions at infinity."""
    pl = make_place(mono(1, 2), mono(2, 3), INF, INF)
    (sol, *_) = solve_reparametrization(pl, 1, 2, 7)
    F = eq("y'^2 - 4y^3")
    for value in (Fraction(1), Fraction(-3, 2)):
        terms = {e: QQ(c.substitute_generator(QQ(value)).to_fraction()) if c.field.has_parameters
                 else c for e, c in sol.s.terms.items()}
        s = PuiseuxSeries(terms, sol.s.T, QQ)
        y = compose(pl.a, s)
        assert check_truncation(F, y, 2)

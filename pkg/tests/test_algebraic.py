from fractions import Fraction
import math

import pytest

from aodesolve.algebraic import (algebraic_solution, bounds, diff_pseudo_remainder,
                                 reconstruct_candidate, render_family, render_xy, shift_family)
from aodesolve.briot_bouquet import InsufficientTruncationError
from aodesolve.numberfield import QQ
from aodesolve.poly import BiPoly
from aodesolve.series import INF

from helpers import eq, x_series

X, Y = BiPoly.var(0, QQ, ("x", "y")), BiPoly.var(1, QQ, ("x", "y"))


def test_algebraic_examples():
    (r,) = algebraic_solution(eq("y'^2 - y"))
    assert render_xy(r.G) == "4*y - x^2"
    assert r.family_string() == "4*y - (x+c)^2"
    (r,) = algebraic_solution(eq("4y'^2 y - 1"))
    assert r.family_string() == "16*y^3 - 9*(x+c)^2"
    assert algebraic_solution(eq("y' - y")) == []
    assert algebraic_solution(eq("y'^2 + y^2 - 1")) == []


@pytest.mark.parametrize("text", ["y'^2 - y", "4y'^2 y - 1", "y'^2 - 4y^3", "y' + y^2",
                                  "y'^3 - y^2"])
def test_degree_bounds_and_certificate(text):
    F = eq(text)
    for r in algebraic_solution(F):
        assert r.G.degree("x") == F.degree("p")
        assert r.G.degree("y") <= F.degree("y") + F.degree("p")
        assert diff_pseudo_remainder(F, r.G).is_zero()
        # shift closure, identically in c
        assert diff_pseudo_remainder(F, shift_family(r.G)).is_zero()


def test_reconstruct_examples():
    A = reconstruct_candidate(x_series({2: Fraction(1, 4)}, INF), 2, 3, 0)
    assert A == 4 * Y - X * X
    exp = x_series({k: Fraction(1, math.factorial(k)) for k in range(14)}, 14)
    assert reconstruct_candidate(exp, 1, 2, 0) is None


def test_reconstruct_needs_enough_terms():
    with pytest.raises(InsufficientTruncationError, match="insufficient truncation"):
        reconstruct_candidate(x_series({0: 1, 1: 1}, 3), 1, 2, 0)


def test_reconstruct_ramified_seed():
    from aodesolve.solver import puiseux_solve
    from aodesolve.briot_bouquet import prolong_truncation
    F = eq("4y'^2 y - 1")
    (tr,) = [t for t in puiseux_solve(F, 2).at_zero if t.n == 3]
    dx, dy, nup, N0, _ = bounds(F, tr.series.order())
    ybar = prolong_truncation(F, tr.series, N0)
    A = reconstruct_candidate(ybar, dx, dy, nup)
    assert render_xy(A) == "16*y^3 - 9*x^2"


def test_diff_pseudo_remainder_examples():
    assert diff_pseudo_remainder(eq("y'^2 - y"), 4 * Y - X * X).is_zero()
    assert not diff_pseudo_remainder(eq("y' - y"), 4 * Y - X * X).is_zero()
    assert not diff_pseudo_remainder(eq("y'^2 + y^2 - 2"), Y - 5).is_zero()


def test_shift_family_examples():
    assert render_family(4 * Y - X * X) == "4*y - (x+c)^2"
    assert render_family(16 * Y ** 3 - 9 * X * X) == "16*y^3 - 9*(x+c)^2"
    fam = shift_family(Y - X)
    c = fam.field.gen()
    assert fam == (Y - X).coerce_field(fam.field) - BiPoly.const(c, fam.field, ("x", "y"))


def test_reducible_equation_unions_components():
    res = algebraic_solution(eq("(y'^2 - y)*(y' + y^2)"))
    assert sorted(render_xy(r.G) for r in res) == sorted(["4*y - x^2", "x*y - 1"])

from fractions import Fraction
import random

import pytest

from aodesolve.curve import (CurvePoint, critical_points, local_parametrizations, places_at,
                             truncation_bound)
from aodesolve.numberfield import QQ
from aodesolve.poly import factor_univariate
from aodesolve.series import INF, PuiseuxSeries, substitute_poly

from helpers import eq, lattice_gcd


def _points(F):
    return sorted(str(c) for c in critical_points(F))


def test_critical_points_examples():
    assert _points(eq("y'^2 - y")) == ["(0, 0)", "(infinity, infinity)"]
    assert _points(eq("4y'^2 y - 1")) == ["(0, infinity)", "(infinity, 0)"]
    finite = [c for c in critical_points(eq("y'^2 + y^2 - 1")) if not c.y_infinite]
    assert sorted(str(c) for c in finite) == ["(-1, 0)", "(1, 0)"]


def test_truncation_bound_examples():
    assert truncation_bound(eq("y'^2 - y")) == 3
    assert truncation_bound(eq("y'^2 + y^2 - 1")) == 5
    assert truncation_bound(eq("y' - y")) == 1
    # non-monic in p: general bound 2 deg_p deg_y + 1
    assert truncation_bound(eq("4y'^2 y - 1")) == 5


def test_parabola_place_is_exact():
    F = eq("y'^2 - y")
    (pl,) = local_parametrizations(F, CurvePoint(QQ(0), QQ(0)), 3)
    assert pl.a == PuiseuxSeries.monomial(1, 2)
    assert pl.b.terms == {Fraction(1): QQ(1)}
    assert not substitute_poly(F, pl.a, pl.b).terms


def test_circle_place_matches_expansion():
    F = eq("y'^2 + y^2 - 1")
    (pl,) = local_parametrizations(F, CurvePoint(QQ(1), QQ(0)), 5)
    assert pl.k() == 2 and pl.r() == 1
    # a = 1 + gamma t^2 with b^2 = 1 - a^2; normalise to b = t for comparison
    a, b = pl.a, pl.b
    assert not substitute_poly(F, a, b).terms
    if b.terms == {Fraction(1): QQ(1)} or (len(b.terms) == 1):
        pass
    u = a - PuiseuxSeries.constant(1)
    # u^2 + 2u + b^2 = 0 determines u from b
    assert not (u * u + u.scale(QQ(2)) + b * b).terms


def test_place_at_pole_of_derivative():
    F = eq("4y'^2 y - 1")
    (pl,) = local_parametrizations(F, CurvePoint(QQ(0), INF), 5)
    assert pl.k() == 2 and pl.r() == -1
    # expanded in q = 1/p: the representative (t^2/4, 1/t)
    assert pl.a.terms == {Fraction(2): QQ(Fraction(1, 4))}
    assert pl.b == PuiseuxSeries.monomial(1, -1)
    assert not substitute_poly(F, pl.a, pl.b).terms


def test_off_curve_center_rejected():
    with pytest.raises(ValueError):
        local_parametrizations(eq("y'^2 - y"), CurvePoint(QQ(1), QQ(0)), 3)


@pytest.mark.parametrize("text", ["y'^2 - y", "4y'^2 y - 1", "y'^2 + y^2 - 1", "y'^2 - 4y^3",
                                  "y'^3 - y^2", "y'^2 - y^3 - y^2"])
def test_places_pass_substitution_oracle(text):
    F = eq(text)
    for pl in places_at(F, QQ(0), 6) + places_at(F, INF, 6):
        val = substitute_poly(F, pl.a, pl.b)
        assert not val.terms
        assert val.T > 0
        assert lattice_gcd(pl.a, pl.b) == 1


@pytest.mark.parametrize("text", ["y'^2 - y", "y'^3 - y^2 + y'", "y'^2 + y^2 - 1", "4y'^2 y - 1"])
def test_branch_count_at_regular_values(text):
    F = eq(text)
    rng = random.Random(7)
    for _ in range(3):
        y0 = QQ(Fraction(rng.randint(2, 40), rng.randint(1, 7)))
        pls = places_at(F, y0, 3)
        assert sum(pl.conjugates for pl in pls) == F.degree("p")

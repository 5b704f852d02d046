from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from aodesolve.numberfield import QQ, adjoin_root
from aodesolve.poly import (BiPoly, UniPoly, bivariate_gcd, factor_univariate, resultant,
                            roots_in_closure, squarefree_normalize)


def test_partial_derivatives(yp):
    y, p = yp
    assert (p * p - y).diff("p") == 2 * p
    assert (p * p - y).diff("y") == BiPoly.const(-1)
    assert (4 * p * p * y - 1).diff("p") == 8 * p * y


def test_squarefree_normalize_examples(yp):
    y, p = yp
    g, removed = squarefree_normalize((p * p - y) ** 2)
    assert g.normalized(1) == p * p - y
    assert len(removed) == 1
    g, removed = squarefree_normalize(y * (p * p - y))
    assert g.normalized(1) == p * p - y
    assert [r.normalized(0) for r in removed] == [y]
    F = p * p + y * y - 1
    assert squarefree_normalize(F) == (F, [])


def test_resultant_examples(yp):
    y, p = yp
    assert resultant(p * p - y, 2 * p, "p") == UniPoly([0, -4], QQ, "y")
    assert resultant(p * p + y * y - 1, 2 * p, "p") == UniPoly([-4, 0, 4], QQ, "y")
    assert resultant(p - y, BiPoly.const(1), "p") == UniPoly([1], QQ, "y")


def test_resultant_detects_common_factor(yp):
    y, p = yp
    common = p - y * y + 1
    assert resultant(common * (p + 3), common * (p * y - 2), "p").is_zero()
    assert not resultant(p + 3, p * y - 2, "p").is_zero()


def test_factor_univariate_examples():
    fs = factor_univariate(UniPoly([-1, 0, 1]))
    assert sorted(str(f) for f, _ in fs) == ["z + 1", "z - 1"]
    fs = factor_univariate(UniPoly([-2, 0, 1]))
    assert len(fs) == 1 and fs[0][0].degree == 2
    K, a = adjoin_root(QQ, [-2, 0, 1])
    fs = factor_univariate(UniPoly([-2, 0, 1], K))
    roots = sorted(str(-f.coeffs[0]) for f, _ in fs)
    assert roots == sorted([str(a), str(-a)])


def test_factor_over_tower():
    K, a = adjoin_root(QQ, [-2, 0, 1])
    L, b = adjoin_root(K, [-3, 0, 1])
    fs = factor_univariate(UniPoly([-6, 0, 1], L))
    assert [f.degree for f, _ in fs] == [1, 1]


def test_roots_in_closure():
    roots = roots_in_closure(UniPoly([-1, 0, 1], QQ, "y"))
    assert sorted(str(r.root) for r in roots) == ["-1", "1"]
    (cls,) = roots_in_closure(UniPoly([-2, 0, 1], QQ, "y"))
    assert cls.class_size == 2
    assert (cls.root ** 2 - 2).is_zero()
    with pytest.raises(ValueError):
        roots_in_closure(UniPoly([1]))


def test_bivariate_gcd(yp):
    y, p = yp
    g = bivariate_gcd((p * p - y) * (p + y), (p * p - y) * (p - 1), "p")
    assert g.normalized(1) == p * p - y


coef = st.integers(-4, 4)


@settings(max_examples=40, deadline=None)
@given(st.lists(coef, min_size=2, max_size=5), st.lists(coef, min_size=2, max_size=4))
def test_factorization_reproduces_input(a, b):
    f = UniPoly(a) * UniPoly(b)
    if f.degree < 1:
        return
    prod = UniPoly([f.lc])
    for g, m in factor_univariate(f):
        prod = prod * g ** m
    assert prod == f


@settings(max_examples=25, deadline=None)
@given(st.lists(coef, min_size=4, max_size=4))
def test_squarefree_output_has_no_repeated_factor(c):
    y, p = BiPoly.var(0), BiPoly.var(1)
    base = p * p + c[0] * y * p + c[1] * y + c[2] + (c[3] or 1) * y * y
    f = base * base * (p - y)
    g, _ = squarefree_normalize(f)
    assert bivariate_gcd(g, g.diff("p"), "p").is_constant()
    assert bivariate_gcd(g, g.diff("y"), "p").is_constant()

"""Small shared builders for the test suite."""
from fractions import Fraction

from aodesolve.parser import parse_equation
from aodesolve.series import PuiseuxSeries


def eq(text):
    return parse_equation(text).poly


def x_series(coeffs, T, field=None):
    """Series sum c_k x^k from a {k: c} mapping of rationals."""
    from aodesolve.numberfield import QQ
    field = field or QQ
    from aodesolve.series import INF
    return PuiseuxSeries({Fraction(k): field(Fraction(c)) for k, c in coeffs.items()},
                         T if T is INF else Fraction(T), field)


def lattice_gcd(*series):
    from math import gcd
    g = 0
    for s in series:
        for e in s.terms:
            if e != 0:
                g = gcd(g, abs(int(e)))
    return g

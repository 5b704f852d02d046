"""A solution that needs fractional powers: 4 y'^2 y = 1.

The curve 4 p^2 y - 1 = 0 has a pole of p over y = 0.  The place there gives
three conjugate solutions y = sigma^2 x^(2/3) / 4 with sigma^3 = 6, and all of
them satisfy 16 y^3 = 9 x^2.
"""
from fractions import Fraction

from aodesolve import algebraic_solution, parse_equation, puiseux_solve
from aodesolve.algebraic import render_family
from aodesolve.report import expand_conjugates

F = parse_equation("4*y'^2*y - 1").poly
report = puiseux_solve(F, order=4)

for tr in report.at_zero:
    print("initial point", tr.initial, "ramification", tr.n)
    print("  class representative:", tr.series.render("x"))
    print("  sigma is a root of", tr.sigma1_class)
    for conj in expand_conjugates(tr):
        print("    conjugate:", conj.series.render("x"))
    coeff = tr.series.terms[Fraction(2, 3)]
    print("  cube of the leading coefficient:", coeff ** 3)

(result,) = algebraic_solution(F)
print("every solution lies on", render_family(result.G), "= 0")

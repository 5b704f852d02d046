"""Solutions of y'^2 + y^2 = 1 around x = 0.

Constant solutions are y = 1 and y = -1.  Starting at y = 1 with y' = 0 the
unique solution is cos x; a generic starting point (_CC, _P) on the circle
gives the family printed at the end.  The equation has no algebraic solution.
"""
from fractions import Fraction

from aodesolve import QQ, algebraic_solution, parse_equation, puiseux_solve
from aodesolve.solver import prolong

F = parse_equation("y'^2 + y^2 = 1").poly
report = puiseux_solve(F, order=10)

print("constants:", [str(v) for v, _ in report.constants])
for tr in report.at_zero:
    print(tr.initial, tr.series.render("x"))

cos_x = next(t for t in report.at_zero if str(t.initial) == "(1, 0)")
print("extended to order 16:", prolong(report.equation, cos_x, 16).render("x"))

(family,) = report.generic
print("generic:", family.render_terms())
print("  specialised at (3/5, 4/5):",
      family.specialize(QQ(Fraction(3, 5)), QQ(Fraction(4, 5))).render("x"))
print("algebraic solutions:", algebraic_solution(F) or "none")

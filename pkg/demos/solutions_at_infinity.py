"""Expansions around x = infinity for y'^2 = 4 y^3.

Around infinity the solutions form one family with a free parameter _C;
in z = 1/x it matches 1/(x + c)^2 = z^2 - 2c z^3 + 3c^2 z^4 - ...  Around
zero there is the pole solution 1/x^2.
"""
from aodesolve import parse_equation, puiseux_solve
from aodesolve.algebraic import algebraic_solution, render_family

F = parse_equation("y'^2 - 4*y^3").poly
report = puiseux_solve(F, order=6)

print("around zero:")
for tr in report.at_zero:
    print(" ", tr.series.render("x"), " from", tr.initial)
print("around infinity:")
for tr in report.at_infinity:
    print(" ", tr.series.render("x"), " free parameter:", tr.free_parameter)

for r in algebraic_solution(F):
    print("minimal polynomial family:", render_family(r.G))

"""Command line front end: ``aode-solve {solve,generic,prolong,algebraic} EQUATION``."""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .algebraic import algebraic_solution, render_family, render_xy
from .briot_bouquet import InconsistentError
from .numberfield import TowerDegreeError
from .parser import ParseError, parse_equation, parse_series, parse_value, render_equation
from .report import (dumps, generic_to_json, report_to_json, report_to_text, series_to_json,
                     field_to_json)
from .solver import OracleError, generic_solution_truncation, prolong_truncation, puiseux_solve
from .poly import squarefree_normalize


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser():
    ap = argparse.ArgumentParser(prog="aode-solve",
                                 description="Formal Puiseux series and algebraic solutions of F(y, y') = 0.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("equation", help="polynomial in y and y', e.g. \"y'^2 - y\"")
        p.add_argument("--json", action="store_true", help="emit JSON")

    s = sub.add_parser("solve", help="all solution truncations")
    common(s)
    s.add_argument("-N", type=_rational, default=None, help="truncation order (exponents <= N)")
    s.add_argument("--iv", default=None, help="keep solutions with y(0) = IV")
    s.add_argument("--no-generic", action="store_true")
    s.add_argument("--no-const", action="store_true")
    s.add_argument("--no-finite", action="store_true")
    s.add_argument("--no-infinity", action="store_true")
    s.add_argument("--irreducible", action="store_true", help="treat F as irreducible")
    s.add_argument("--expand-conjugates", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--bound-override", type=int, default=None)

    g = sub.add_parser("generic", help="generic solution truncation")
    common(g)
    g.add_argument("-N", type=_rational, default=None)
    g.add_argument("--irreducible", action="store_true")

    p = sub.add_parser("prolong", help="extend a determined truncation")
    common(p)
    p.add_argument("--trunc", required=True, help="truncation in x, e.g. \"1+x\"")
    p.add_argument("-N", type=_rational, required=True, help="target order")
    p.add_argument("--point", choices=("zero", "infinity"), default="zero")

    a = sub.add_parser("algebraic", help="minimal polynomial of algebraic solutions")
    common(a)
    a.add_argument("--irreducible", action="store_true")
    return ap


def _equation(text):
    return parse_equation(text)


def cmd_solve(args, out):
    eq = _equation(args.equation)
    iv = parse_value(args.iv, eq.field) if args.iv is not None else None
    rep = puiseux_solve(eq.poly, args.N, generic=not args.no_generic, const=not args.no_const,
                        finite=not args.no_finite, infinity=not args.no_infinity, iv=iv,
                        irreducible=args.irreducible, bound_override=args.bound_override,
                        jobs=args.jobs)
    if args.json:
        data = report_to_json(rep, args.equation)
        for key, flag in (("generic", args.no_generic), ("constants", args.no_const),
                          ("at_zero", args.no_finite), ("at_infinity", args.no_infinity)):
            if flag:
                data.pop(key)
        out.write(dumps(data) + "\n")
    else:
        out.write(report_to_text(rep, expand=args.expand_conjugates) + "\n")


def cmd_generic(args, out):
    eq = _equation(args.equation)
    F, _ = squarefree_normalize(eq.poly)
    from .curve import truncation_bound
    order = args.N if args.N is not None else truncation_bound(F)
    gens = generic_solution_truncation(F, order, args.irreducible)
    if args.json:
        out.write(dumps({"equation": render_equation(F), "generic": [generic_to_json(g) for g in gens]}) + "\n")
        return
    names = ("_CC", "_P")
    for g in gens:
        out.write(f"y = {g.render_terms()} + O(x^{g.order + 1})\n")
        out.write(f"  where {g.relation.render(names)} = 0\n")
        if g.exceptional:
            out.write("  except " + ", ".join(e.render(names) + " = 0" for e in g.exceptional) + "\n")


def cmd_prolong(args, out):
    eq = _equation(args.equation)
    s = parse_series(args.trunc, eq.field)
    if args.point == "infinity":
        # the truncation is written in x; the expansion variable is z = 1/x
        s = _invert_variable(s)
    F, _ = squarefree_normalize(eq.poly)
    res = prolong_truncation(F, s, args.N, args.point)
    if args.json:
        out.write(dumps({"equation": render_equation(F), "field": field_to_json(res.field),
                         "series": series_to_json(res)}) + "\n")
    else:
        out.write(res.render("x") + "\n")


def _invert_variable(s):
    from .series import PuiseuxSeries
    return PuiseuxSeries({-e: c for e, c in s.terms.items()}, s.T, s.field, "infinity")


def cmd_algebraic(args, out):
    eq = _equation(args.equation)
    results = algebraic_solution(eq.poly, args.irreducible)
    if args.json:
        data = {"equation": render_equation(eq.poly),
                "algebraic": [{"G": render_xy(r.G), "family": render_family(r.G),
                               "component": r.component_id} for r in results] or "none"}
        out.write(dumps(data) + "\n")
        return
    if not results:
        out.write("none\n")
    for r in results:
        out.write(f"{render_family(r.G)}\n")


COMMANDS = {"solve": cmd_solve, "generic": cmd_generic, "prolong": cmd_prolong,
            "algebraic": cmd_algebraic}


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        COMMANDS[args.command](args, out)
    except (OracleError, AssertionError) as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        return 2
    except (ParseError, InconsistentError, TowerDegreeError, ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

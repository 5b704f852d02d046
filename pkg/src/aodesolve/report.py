"""Text and JSON rendering of solver results, and conjugate expansion."""
from __future__ import annotations

import json
from fractions import Fraction

from .numberfield import QQ, AlgElem, Generator, NumberField
from .parser import parse_value
from .poly import UniPoly, factor_univariate
from .series import INF, PuiseuxSeries
from .numberfield import adjoin_root


# ---------------------------------------------------------------------------
# fields and series

def field_to_json(field):
    gens = []
    for lvl, g in enumerate(field.gens):
        if g.minpoly is None:
            gens.append({"name": g.name, "minpoly": None})
        else:
            base = field.base(lvl)
            coeffs = [str(AlgElem(base, c)) for c in g.minpoly]
            gens.append({"name": g.name, "minpoly": coeffs})
    return gens


def field_from_json(data):
    field = QQ
    for g in data:
        if g["minpoly"] is None:
            field = field.with_parameter(g["name"])
        else:
            coeffs = [parse_value(c, field) for c in g["minpoly"]]
            field = NumberField(field.gens + (Generator(g["name"], tuple(c.rep for c in coeffs)),))
    return field


def _frac_str(q):
    return "inf" if q == INF else str(Fraction(q))


def series_to_json(s):
    n = s.ramification
    terms = [{"num": int(e * n), "den_exp": n, "coeff": str(s.terms[e])} for e in sorted(s.terms)]
    return {"ramification": n, "terms": terms, "order_known": _frac_str(s.T),
            "point": s.point}


def series_from_json(data, field):
    terms = {Fraction(t["num"], t["den_exp"]): parse_value(t["coeff"], field) for t in data["terms"]}
    T = INF if data["order_known"] == "inf" else Fraction(data["order_known"])
    return PuiseuxSeries(terms, T, field, data.get("point", "zero"))


def _coord(v):
    return "infinity" if v is INF else str(v)


def truncation_to_json(tr):
    return {
        "initial": [_coord(tr.initial.y0), _coord(tr.initial.p0)],
        "ramification": tr.n,
        "point": tr.point,
        "guarantee": tr.guarantee,
        "free_parameter": tr.free_parameter,
        "sigma1_class": str(tr.sigma1_class) if tr.sigma1_class is not None else None,
        "field": field_to_json(tr.field),
        "series": series_to_json(tr.series),
        "rendered": render_series(tr),
    }


def render_series(tr):
    return tr.series.render("x")


def generic_to_json(g):
    names = ("_CC", "_P")
    return {
        "component": g.component_id,
        "relation": g.relation.render(names) + " = 0",
        "terms": [{"power": c.m, "num": c.num.render(names), "den": c.den.render(names),
                   "factorial": True} for c in g.coefficients],
        "exceptional": [e.render(names) + " = 0" for e in g.exceptional],
        "rendered": g.render_terms(),
    }


def constant_to_json(c):
    value, minpoly = c
    return {"value": str(value), "minpoly": str(minpoly) if minpoly is not None else None,
            "field": field_to_json(value.field)}


def report_to_json(report, equation_text, algebraic=None):
    from .parser import render_equation
    out = {
        "equation": render_equation(report.equation),
        "input": equation_text,
        "field": field_to_json(report.equation.field),
        "bound": report.bound,
        "order": _frac_str(report.order),
        "generic": [generic_to_json(g) for g in report.generic],
        "constants": [constant_to_json(c) for c in report.constants],
        "at_zero": [truncation_to_json(t) for t in report.at_zero],
        "at_infinity": [truncation_to_json(t) for t in report.at_infinity],
        "transforms": list(report.transforms),
    }
    if algebraic is not None:
        out["algebraic"] = algebraic
    return out


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=False)


# ---------------------------------------------------------------------------
# conjugates

def split_roots(g):
    """All roots of the monic irreducible ``g`` in one extension of its field."""
    field = g.field
    pending = [g]
    roots = []
    while pending:
        h = pending.pop()
        for fac, _ in factor_univariate(h.coerce_field(field)):
            if fac.degree == 1:
                roots.append(-fac.coeffs[0])
            else:
                field, r = adjoin_root(field, fac, certified=True)
                roots.append(r)
                z = UniPoly([-r, 1], field, fac.var)
                rest = fac.coerce_field(field).exact_div(z)
                if rest.degree >= 1:
                    pending.append(rest)
        roots = [AlgElem.coerce(r, field) if r.field != field else r for r in roots]
    return field, [AlgElem.coerce(r, field) for r in roots]


def expand_conjugates(tr):
    """The conjugates of a truncation whose top generator is algebraic.

    Only the top generator of the coefficient field is conjugated; other
    truncations are returned unchanged.
    """
    from dataclasses import replace
    fld = tr.series.field
    if fld.level == 0 or fld.gens[-1].minpoly is None:
        return [tr]
    base = fld.base(fld.level - 1)
    g = UniPoly([AlgElem(base, c) for c in fld.gens[-1].minpoly], base, "z")
    big, roots = split_roots(g)
    out = []
    for r in roots:
        terms = {e: c.substitute_generator(r) for e, c in tr.series.terms.items()}
        s = PuiseuxSeries(terms, tr.series.T, big, tr.series.point)
        out.append(replace(tr, series=s))
    return out


def expand_constant(c):
    value, minpoly = c
    if minpoly is None:
        return [c]
    _, roots = split_roots(minpoly)
    return [(r, None) for r in roots]


# ---------------------------------------------------------------------------
# text

def report_to_text(report, expand=False):
    from .parser import render_equation
    lines = [f"equation: {render_equation(report.equation)} = 0",
             f"field: {report.equation.field.describe()}",
             f"truncation bound: {report.bound}, order: {report.order}"]
    for t in report.transforms:
        lines.append(f"note: {t}")
    if report.generic:
        lines.append("generic solutions:")
        for g in report.generic:
            names = ("_CC", "_P")
            lines.append(f"  y = {g.render_terms()} + O(x^{g.order + 1})")
            lines.append(f"    where {g.relation.render(names)} = 0")
            if g.exceptional:
                lines.append("    except " + ", ".join(e.render(names) + " = 0" for e in g.exceptional))
    if report.constants is not None:
        consts = [c for k in report.constants for c in (expand_constant(k) if expand else [k])]
        if consts:
            lines.append("constant solutions:")
            for value, minpoly in consts:
                extra = f"  ({value.field.describe()})" if value.field.level else ""
                lines.append(f"  y = {value}{extra}")
    for title, items in (("solutions at x = 0:", report.at_zero),
                         ("solutions at x = infinity:", report.at_infinity)):
        if not items:
            continue
        lines.append(title)
        for tr in items:
            group = expand_conjugates(tr) if expand else [tr]
            for t in group:
                lines.append(f"  y = {render_series(t)}")
                info = [f"initial {t.initial}", f"ramification {t.n}"]
                if t.free_parameter:
                    info.append(f"free parameter {t.free_parameter}")
                if t.sigma1_class is not None and not expand:
                    info.append(f"sigma1 root of {t.sigma1_class}, {t.sigma1_class.degree} conjugates")
                info.append("guaranteed" if t.guarantee else "not certified unique")
                lines.append("    " + "; ".join(info))
                if t.field.level:
                    lines.append(f"    over {t.field.describe()}")
    return "\n".join(lines)

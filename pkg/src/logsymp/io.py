"""JSON readers and writers for charts, Poisson structures and diamonds."""

from __future__ import annotations

import json

from .algebra.chart import Chart
from .algebra.forms import LogMultiVec
from .algebra.parser import format_ratfunc, parse_multivec, parse_poly
from .algebra.ratfunc import RatFunc
from .errors import ParseError


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def parse_chart(text: str) -> Chart:
    obj = _load_json(text)
    if isinstance(obj, dict) and "chart" in obj:
        obj = obj["chart"]
    try:
        return Chart.from_json(obj)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad chart: {e}") from None


def bivector_terms(P: LogMultiVec) -> list[tuple[RatFunc, int, int]]:
    """(coefficient, i, j) with 1-based log-basis indices, i < j."""
    out = []
    for mask, c in P.comps.items():
        i, j = [k + 1 for k in range(P.chart.dim) if mask >> k & 1]
        out.append((c, i, j))
    return sorted(out, key=lambda t: (t[1], t[2]))


def _bivector_from_terms(chart: Chart, terms) -> LogMultiVec:
    acc = LogMultiVec.zero(chart, 2)
    for t, term in enumerate(terms):
        try:
            expr, i, j = term["coeff"], int(term["i"]), int(term["j"])
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"term {t}: needs coeff, i and j") from None
        if not (1 <= i <= chart.dim and 1 <= j <= chart.dim) or i == j:
            raise ParseError(f"term {t}: indices {i}, {j} out of range")
        try:
            f = parse_poly(str(expr), chart)
        except ParseError as e:
            raise ParseError(f"term {t} coefficient: {e.message}", e.line, e.column) from None
        mask = (1 << (i - 1)) | (1 << (j - 1))
        sign = 1 if i < j else -1
        acc = acc + LogMultiVec(chart, 2, {mask: f if sign > 0 else -f})
    return acc


def parse_structure(text: str) -> tuple[Chart, LogMultiVec]:
    """Read ``{"chart": ..., "terms": [...]}`` or ``{"chart": ..., "bivector": "<expr>"}``."""
    obj = _load_json(text)
    if not isinstance(obj, dict) or "chart" not in obj:
        raise ParseError("structure file needs a 'chart' object")
    chart = parse_chart(json.dumps(obj["chart"]))
    if "bivector" in obj:
        P = parse_multivec(str(obj["bivector"]), chart)
        if P.degree != 2 and P.comps:
            raise ParseError("bivector expression has the wrong degree")
        return chart, LogMultiVec(chart, 2, P.comps)
    return chart, _bivector_from_terms(chart, obj.get("terms", []))


def format_structure(chart: Chart, P: LogMultiVec) -> str:
    names = chart.var_names
    terms = [
        {"coeff": format_ratfunc(c, names), "i": i, "j": j} for c, i, j in bivector_terms(P)
    ]
    return dumps({"chart": chart.to_json(), "terms": terms})


def parse_diamond(text: str):
    from .hodge import HodgeDiamond

    obj = _load_json(text)
    try:
        return HodgeDiamond(int(obj["n"]), obj["h"])
    except (KeyError, TypeError) as e:
        raise ParseError(f"bad diamond: {e}") from None

"""Expression grammar for polynomials, log forms and polyvector fields.

::

    expr   := ['+' | '-'] term (('+' | '-') term)*
    term   := unary (('*' | '/' | '/\\' | '∧') unary)*
    unary  := '-' unary | power
    power  := atom ['^' unary]
    atom   := NUMBER | IDENT | 'd(' IDENT ')' | 'dlog(' IDENT ')'
            | 'D(' IDENT ')' | '(' expr ')'

``d(x)`` is dx, ``dlog(x)`` is dx/x and ``D(x)`` is the coordinate vector
field d/dx.  ``^`` is a power when both sides are scalars and the exponent
is an integer; otherwise it is the wedge product, as are ``/\\`` and ``∧``.
``*`` between two graded operands is also the wedge product.

Values are converted to the log basis of the chart, so ``x1*D(x1)`` with
``x1`` divisorial is the basis vector v_1 with coefficient 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from gmpy2 import mpq

from ..errors import ParseError
from .chart import Chart, bits
from .forms import LogForm, LogMultiVec, wedge_sign
from .ratfunc import RatFunc

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>/\\|∧|[-+*/^()]))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", 1, pos + 1)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), start + 1))
        pos = m.end()
    toks.append(_Tok("end", "", n + 1))
    return toks


class _Val:
    """Intermediate value: kind in {'scalar', 'form', 'vector'}."""

    __slots__ = ("kind", "degree", "comps")

    def __init__(self, kind, degree, comps):
        self.kind, self.degree, self.comps = kind, degree, comps


class _Parser:
    def __init__(self, text: str, chart: Chart):
        self.chart = chart
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.take()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", 1, t.col)
        return t

    def fail(self, tok, what="expression"):
        found = tok.text or "end of input"
        raise ParseError(f"expected {what}, found {found!r}", 1, tok.col)

    # grammar --------------------------------------------------------------
    def parse(self):
        v = self.expr()
        t = self.peek()
        if t.kind != "end":
            self.fail(t, "operator or end of input")
        return v

    def expr(self):
        t = self.peek()
        neg = False
        if t.text in "+-" and t.kind == "op":
            self.take()
            neg = t.text == "-"
        v = self.term()
        if neg:
            v = self.neg(v)
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            op = self.take()
            w = self.term()
            v = self.add(v, w if op.text == "+" else self.neg(w), op)
        return v

    def term(self):
        v = self.unary()
        while self.peek().kind == "op" and self.peek().text in ("*", "/", "/\\", "∧"):
            op = self.take()
            w = self.unary()
            if op.text == "/":
                v = self.div(v, w, op)
            elif op.text == "*" and (v.kind == "scalar" or w.kind == "scalar"):
                v = self.mul(v, w, op)
            else:
                v = self.wedge(v, w, op)
        return v

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.text == "-":
            self.take()
            return self.neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t.kind == "op" and t.text == "^":
            self.take()
            start = self.peek()
            expo = self.unary()
            if base.kind == "scalar" and expo.kind == "scalar":
                k = self.int_value(expo)
                if k is None:
                    raise ParseError("exponent must be an integer", 1, start.col)
                return self.pow(base, k, start)
            return self.wedge(base, expo, t)
        return base

    def atom(self):
        t = self.take()
        ring = self.chart.ring
        if t.kind == "num":
            return _Val("scalar", 0, {0: RatFunc(ring(mpq(int(t.text))))})
        if t.kind == "ident":
            if t.text in ("d", "dlog", "D") and self.peek().text == "(":
                self.expect("(")
                name_tok = self.take()
                if name_tok.kind != "ident":
                    self.fail(name_tok, "variable name")
                self.expect(")")
                return self.basis(t.text, name_tok)
            i = self.var(t)
            return _Val("scalar", 0, {0: RatFunc(ring.gens[i])})
        if t.kind == "op" and t.text == "(":
            v = self.expr()
            self.expect(")")
            return v
        self.fail(t, "number, variable, d(), dlog(), D() or '('")

    # semantics ------------------------------------------------------------
    def var(self, tok):
        try:
            return self.chart.index(tok.text)
        except KeyError:
            raise ParseError(f"unknown variable {tok.text!r}", 1, tok.col) from None

    def basis(self, fn, tok):
        i = self.var(tok)
        ring = self.chart.ring
        x = RatFunc(ring.gens[i])
        one = RatFunc(ring.one)
        div = self.chart.is_divisorial(i)
        if fn == "d":
            return _Val("form", 1, {1 << i: x if div else one})
        if fn == "dlog":
            return _Val("form", 1, {1 << i: one if div else one / x})
        return _Val("vector", 1, {1 << i: one / x if div else one})

    @staticmethod
    def int_value(v):
        c = v.comps.get(0)
        if c is None:
            return 0 if not v.comps else None
        if not c.is_poly():
            return None
        p = c.as_poly()
        if not p.is_ground:
            return None
        q = mpq(p.LC) if p else mpq(0)
        return int(q) if q.denominator == 1 else None

    def neg(self, v):
        return _Val(v.kind, v.degree, {k: -c for k, c in v.comps.items()})

    def add(self, a, b, op):
        if not a.comps:
            return b
        if not b.comps:
            return a
        if a.kind != b.kind or a.degree != b.degree:
            raise ParseError("cannot add terms of different type or degree", 1, op.col)
        out = dict(a.comps)
        for k, c in b.comps.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return _Val(a.kind, a.degree, out)

    def mul(self, a, b, op):
        if a.kind != "scalar":
            a, b = b, a
        f = a.comps.get(0)
        if f is None:
            return _Val(b.kind, b.degree, {})
        return _Val(b.kind, b.degree, {k: c * f for k, c in b.comps.items() if c * f})

    def div(self, a, b, op):
        if b.kind != "scalar":
            raise ParseError("can only divide by a scalar", 1, op.col)
        f = b.comps.get(0)
        if f is None:
            raise ParseError("division by zero", 1, op.col)
        return _Val(a.kind, a.degree, {k: c / f for k, c in a.comps.items()})

    def pow(self, a, k, tok):
        f = a.comps.get(0)
        if f is None:
            if k <= 0:
                raise ParseError("zero to a non-positive power", 1, tok.col)
            return a
        try:
            return _Val("scalar", 0, {0: f**k})
        except ZeroDivisionError:
            raise ParseError("division by zero", 1, tok.col) from None

    def wedge(self, a, b, op):
        if a.kind == "scalar" or b.kind == "scalar":
            return self.mul(a, b, op)
        if a.kind != b.kind:
            raise ParseError("cannot wedge a form with a vector field", 1, op.col)
        out = {}
        for ma, ca in a.comps.items():
            for mb, cb in b.comps.items():
                s = wedge_sign(ma, mb)
                if not s:
                    continue
                t = ca * cb
                if s < 0:
                    t = -t
                prev = out.get(ma | mb)
                out[ma | mb] = t if prev is None else prev + t
        return _Val(a.kind, a.degree + b.degree, {k: c for k, c in out.items() if c})


def parse_expr(text: str, chart: Chart):
    """Parse to a ``RatFunc`` (scalar), ``LogForm`` or ``LogMultiVec``."""
    v = _Parser(text, chart).parse()
    if v.kind == "scalar":
        return v.comps.get(0, RatFunc(chart.ring.zero))
    cls = LogForm if v.kind == "form" else LogMultiVec
    return cls(chart, v.degree, v.comps)


def parse_form(text: str, chart: Chart) -> LogForm:
    v = parse_expr(text, chart)
    if isinstance(v, RatFunc):
        return LogForm(chart, 0, {0: v})
    if not isinstance(v, LogForm):
        raise ParseError("expected a differential form", 1, 1)
    return v


def parse_multivec(text: str, chart: Chart) -> LogMultiVec:
    v = parse_expr(text, chart)
    if isinstance(v, RatFunc):
        return LogMultiVec(chart, 0, {0: v})
    if not isinstance(v, LogMultiVec):
        raise ParseError("expected a polyvector field", 1, 1)
    return v


def parse_poly(text: str, chart: Chart) -> RatFunc:
    v = parse_expr(text, chart)
    if not isinstance(v, RatFunc):
        raise ParseError("expected a scalar expression", 1, 1)
    return v


# -------------------------------------------------------------------------
# printing

def _format_rational(q) -> str:
    q = mpq(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_poly(p, names) -> str:
    if not p:
        return "0"
    parts = []
    for exp, c in p.terms():
        mono = "*".join(
            names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exp) if e
        )
        c = mpq(c)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{_format_rational(a)}*{mono}"
        else:
            body = _format_rational(a)
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_ratfunc(f: RatFunc, names) -> str:
    num = format_poly(f.num, names)
    if f.den == 1:
        return num
    return f"({num})/({format_poly(f.den, names)})"


def _basis_token(chart: Chart, i: int, kind: str) -> str:
    v = chart.var_names[i]
    if kind == "form":
        return f"dlog({v})" if i < chart.m else f"d({v})"
    return f"{v}*D({v})" if i < chart.m else f"D({v})"


def format_graded(g) -> str:
    """Canonical text; ``parse_expr(format_graded(g), g.chart) == g``."""
    if isinstance(g, RatFunc):
        raise TypeError("use format_ratfunc for scalars")
    chart = g.chart
    names = chart.var_names
    if not g.comps:
        return "0"
    terms = []
    for mask in sorted(g.comps):
        c = g.comps[mask]
        basis = " /\\ ".join(_basis_token(chart, i, g.kind) for i in bits(mask))
        coeff = format_ratfunc(c, names)
        if not basis:
            terms.append(f"({coeff})" if c.den != 1 or " " in coeff else coeff)
            continue
        if coeff == "1":
            terms.append(basis)
        elif coeff == "-1":
            terms.append(f"-{basis}" if " /\\ " not in basis and "*" not in basis else f"-1*{basis}")
        else:
            terms.append(f"({coeff})*{basis}")
    out = terms[0]
    for t in terms[1:]:
        out += f" + {t}"
    return out

"""Log forms and log polyvector fields on a chart, with d, contraction and
the Schouten bracket.

Elements store ``{mask: RatFunc}`` over the log basis of the chart.  The
contraction convention is fixed once here:

    <v_P, e_Q> = s * e_{Q \\ P}   where   e_Q = s * e_P ^ e_{Q \\ P},

i.e. vectors are removed from the left.  With it,
``contract(u ^ v, w) == contract(v, contract(u, w))``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

from ..errors import (
    ChartMismatch,
    DegreeError,
    InvalidCenter,
    NonPolynomialCoefficients,
)
from .chart import Chart, bits, popcount
from .ratfunc import RatFunc


@lru_cache(maxsize=None)
def wedge_sign(a: int, b: int) -> int:
    """Sign s with e_a ^ e_b = s e_{a|b}; 0 when the masks overlap."""
    if a & b:
        return 0
    inversions = 0
    for j in bits(b):
        inversions += popcount(a >> (j + 1))
    return -1 if inversions & 1 else 1


def _permute_sign(positions: list[int]) -> int:
    inv = 0
    for i in range(len(positions)):
        for j in range(i + 1, len(positions)):
            if positions[i] > positions[j]:
                inv += 1
    return -1 if inv & 1 else 1


class Graded:
    """Homogeneous element of an exterior algebra over ``RatFunc``."""

    __slots__ = ("chart", "degree", "comps")
    kind = "graded"

    def __init__(self, chart: Chart, degree: int, comps=None):
        self.chart = chart
        self.degree = degree
        clean = {}
        if comps:
            for mask, c in comps.items():
                if popcount(mask) != degree:
                    raise DegreeError(f"mask {mask:b} has wrong degree for {degree}")
                if not isinstance(c, RatFunc):
                    c = _to_ratfunc(chart, c)
                if c:
                    clean[mask] = c
        self.comps: dict[int, RatFunc] = clean

    # construction helpers -------------------------------------------------
    @classmethod
    def zero(cls, chart, degree):
        return cls(chart, degree, {})

    @classmethod
    def basis(cls, chart, mask, coeff=1):
        return cls(chart, popcount(mask), {mask: coeff})

    @classmethod
    def scalar(cls, chart, f):
        return cls(chart, 0, {0: f})

    def _new(self, degree, comps):
        out = object.__new__(type(self))
        out.chart = self.chart
        out.degree = degree
        out.comps = comps
        return out

    # vector space ---------------------------------------------------------
    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} and {type(other).__name__}")
        if other.chart != self.chart:
            raise ChartMismatch(f"{self.chart!r} vs {other.chart!r}")
        if other.degree != self.degree and self.comps and other.comps:
            raise DegreeError(f"degrees {self.degree} and {other.degree} differ")

    def __add__(self, other):
        self._check(other)
        out = dict(self.comps)
        for mask, c in other.comps.items():
            s = out.get(mask)
            s = c if s is None else s + c
            if s:
                out[mask] = s
            else:
                out.pop(mask, None)
        degree = self.degree if self.comps else other.degree
        return self._new(degree, out)

    def __neg__(self):
        return self._new(self.degree, {k: -v for k, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f):
        """Multiply by a scalar: number or ``RatFunc``."""
        if isinstance(f, RatFunc):
            out = {k: v * f for k, v in self.comps.items()}
        else:
            out = {k: v.scale(f) for k, v in self.comps.items()}
        return self._new(self.degree, {k: v for k, v in out.items() if v})

    def __mul__(self, f):
        return self.scale(f)

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self) or other.chart != self.chart:
            return NotImplemented
        return self.comps == other.comps and (self.degree == other.degree or not self.comps)

    def __hash__(self):
        return hash((self.chart, self.degree, frozenset(self.comps.items())))

    def is_zero(self) -> bool:
        return not self.comps

    def __bool__(self):
        return bool(self.comps)

    def is_polynomial(self) -> bool:
        return all(c.is_poly() for c in self.comps.values())

    def require_polynomial(self, what="coefficients"):
        if not self.is_polynomial():
            raise NonPolynomialCoefficients(f"{what} must be polynomial in the log basis")

    def __repr__(self):
        from .parser import format_graded

        return f"{type(self).__name__}({format_graded(self)})"


class LogForm(Graded):
    """Log differential form; basis covector i is dlog x_i (i < m) or dx_i."""

    __slots__ = ()
    kind = "form"


class LogMultiVec(Graded):
    """Log polyvector field; basis vector i is x_i d_i (i < m) or d_i."""

    __slots__ = ()
    kind = "multivector"


def _to_ratfunc(chart, c):
    if isinstance(c, RatFunc):
        return c
    if isinstance(c, (int, mpq, Fraction)):
        return RatFunc(chart.ring(mpq(c)))
    return RatFunc(c)


# -------------------------------------------------------------------------
# exterior product and contraction

def wedge(a: Graded, b: Graded) -> Graded:
    """Exterior product; forms with forms or polyvectors with polyvectors."""
    if type(a) is not type(b):
        raise TypeError("wedge needs two forms or two polyvectors")
    if a.chart != b.chart:
        raise ChartMismatch(f"{a.chart!r} vs {b.chart!r}")
    out: dict[int, RatFunc] = {}
    for ma, ca in a.comps.items():
        for mb, cb in b.comps.items():
            s = wedge_sign(ma, mb)
            if not s:
                continue
            term = ca * cb
            if s < 0:
                term = -term
            key = ma | mb
            prev = out.get(key)
            out[key] = term if prev is None else prev + term
    return a._new(a.degree + b.degree, {k: v for k, v in out.items() if v})


def wedge_power(a: Graded, k: int) -> Graded:
    """Ordinary (not divided) exterior power a^k."""
    out = type(a).scalar(a.chart, 1)
    for _ in range(k):
        out = wedge(out, a)
    return out


def contract(P: LogMultiVec, w: LogForm, strict: bool = True) -> LogForm:
    """Interior product of a polyvector into a form.

    Raises ``DegreeError`` when ``deg P > deg w`` unless ``strict`` is false,
    in which case the result is the zero form.
    """
    if not isinstance(P, LogMultiVec) or not isinstance(w, LogForm):
        raise TypeError("contract(polyvector, form)")
    if P.chart != w.chart:
        raise ChartMismatch(f"{P.chart!r} vs {w.chart!r}")
    if P.degree > w.degree:
        if strict:
            raise DegreeError(f"cannot contract degree {P.degree} into degree {w.degree}")
        return LogForm(w.chart, max(w.degree - P.degree, 0), {})
    out: dict[int, RatFunc] = {}
    for mp, cp in P.comps.items():
        for mq, cq in w.comps.items():
            if mp & ~mq:
                continue
            rest = mq & ~mp
            s = wedge_sign(mp, rest)
            term = cp * cq
            if s < 0:
                term = -term
            prev = out.get(rest)
            out[rest] = term if prev is None else prev + term
    return LogForm(w.chart, w.degree - P.degree, {k: v for k, v in out.items() if v})


def contract_form(w: LogForm, P: LogMultiVec) -> LogMultiVec:
    """Interior product of a form into a polyvector, same sign convention."""
    if w.chart != P.chart:
        raise ChartMismatch(f"{w.chart!r} vs {P.chart!r}")
    if w.degree > P.degree:
        raise DegreeError(f"cannot contract degree {w.degree} into degree {P.degree}")
    out: dict[int, RatFunc] = {}
    for mq, cq in w.comps.items():
        for mp, cp in P.comps.items():
            if mq & ~mp:
                continue
            rest = mp & ~mq
            s = wedge_sign(mq, rest)
            term = cp * cq
            if s < 0:
                term = -term
            prev = out.get(rest)
            out[rest] = term if prev is None else prev + term
    return LogMultiVec(P.chart, P.degree - w.degree, {k: v for k, v in out.items() if v})


def iota(P: LogMultiVec, w: LogForm) -> LogForm:
    """Operator-layer contraction: zero when the degree is too small."""
    return contract(P, w, strict=False)


# -------------------------------------------------------------------------
# exterior derivative

def differential_of_function(chart: Chart, f: RatFunc) -> LogForm:
    """df = sum_{i<m} x_i f_i dlog x_i + sum_{i>=m} f_i dx_i."""
    comps = {}
    gens = chart.ring.gens
    for i in range(chart.dim):
        g = f.diff(i)
        if not g:
            continue
        if i < chart.m:
            g = g * RatFunc(gens[i])
        comps[1 << i] = g
    return LogForm(chart, 1, comps)


def ext_derivative(w: LogForm) -> LogForm:
    chart = w.chart
    gens = chart.ring.gens
    out: dict[int, RatFunc] = {}
    for mask, f in w.comps.items():
        for i in range(chart.dim):
            if mask >> i & 1:
                continue
            g = f.diff(i)
            if not g:
                continue
            if i < chart.m:
                g = g * RatFunc(gens[i])
            s = wedge_sign(1 << i, mask)
            if s < 0:
                g = -g
            key = mask | (1 << i)
            prev = out.get(key)
            out[key] = g if prev is None else prev + g
    return LogForm(chart, w.degree + 1, {k: v for k, v in out.items() if v})


def lie_poisson_operator(Pi: LogMultiVec, w: LogForm) -> LogForm:
    """Brylinski operator d i_Pi - i_Pi d (degree -1)."""
    if Pi.chart != w.chart:
        raise ChartMismatch(f"{Pi.chart!r} vs {w.chart!r}")
    deg = max(w.degree - 1, 0)
    a = ext_derivative(iota(Pi, w)) if w.degree >= 2 else LogForm.zero(w.chart, deg)
    b = iota(Pi, ext_derivative(w)) if w.degree >= 1 else LogForm.zero(w.chart, deg)
    return a - b


# -------------------------------------------------------------------------
# plain-basis conversion

def x_monomial(chart: Chart, mask: int) -> RatFunc:
    """Product of the divisorial x_i with i in ``mask``."""
    p = chart.ring.one
    for i in bits(mask & ((1 << chart.m) - 1)):
        p = p * chart.ring.gens[i]
    return RatFunc(p)


def to_plain(g: Graded) -> dict[int, RatFunc]:
    """Coefficients in the dx / d_x basis."""
    out = {}
    for mask, c in g.comps.items():
        xm = x_monomial(g.chart, mask)
        out[mask] = c / xm if isinstance(g, LogForm) else c * xm
    return out


def from_plain(cls, chart: Chart, degree: int, comps: dict) -> Graded:
    out = {}
    for mask, c in comps.items():
        c = _to_ratfunc(chart, c)
        xm = x_monomial(chart, mask)
        out[mask] = c * xm if cls is LogForm else c / xm
    return cls(chart, degree, out)


# -------------------------------------------------------------------------
# Schouten bracket

def _xi_mul(a: dict, b: dict, ring) -> dict:
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            s = wedge_sign(ma, mb)
            if not s:
                continue
            t = ca * cb
            if s < 0:
                t = -t
            k = ma | mb
            out[k] = out.get(k, ring.zero) + t
    return out


def _xi_right_derivative(a: dict, i: int) -> dict:
    out = {}
    for m, c in a.items():
        if not m >> i & 1:
            continue
        s = popcount(m >> (i + 1))
        out[m & ~(1 << i)] = -c if s & 1 else c
    return out


def schouten(P: LogMultiVec, Q: LogMultiVec) -> LogMultiVec:
    """Schouten-Nijenhuis bracket, computed on superfunctions of (x, xi).

    [P, Q] = sum_i dP/dxi_i dQ/dx_i - (-1)^{(p-1)(q-1)} dQ/dxi_i dP/dx_i
    with right xi-derivatives.
    """
    if P.chart != Q.chart:
        raise ChartMismatch(f"{P.chart!r} vs {Q.chart!r}")
    P.require_polynomial("Schouten bracket arguments")
    Q.require_polynomial("Schouten bracket arguments")
    chart = P.chart
    ring = chart.ring
    p, q = P.degree, Q.degree
    a = {m: c.as_poly() for m, c in to_plain(P).items()}
    b = {m: c.as_poly() for m, c in to_plain(Q).items()}
    sign = -1 if ((p - 1) * (q - 1)) & 1 else 1
    total: dict[int, object] = {}
    for i in range(chart.dim):
        x = ring.gens[i]
        da = _xi_right_derivative(a, i)
        db = _xi_right_derivative(b, i)
        if da:
            bx = {m: c.diff(x) for m, c in b.items()}
            for k, v in _xi_mul(da, bx, ring).items():
                total[k] = total.get(k, ring.zero) + v
        if db:
            ax = {m: c.diff(x) for m, c in a.items()}
            for k, v in _xi_mul(db, ax, ring).items():
                total[k] = total.get(k, ring.zero) - sign * v
    total = {k: RatFunc(v) for k, v in total.items() if v}
    return from_plain(LogMultiVec, chart, p + q - 1, total)


# -------------------------------------------------------------------------
# weights

def key_weight(chart: Chart, exp, mask: int) -> tuple:
    """Multidegree of x^exp e_mask: x_i and dx_i weigh e_i, dlog x_i weighs 0."""
    w = list(exp)
    for i in bits(mask):
        if i >= chart.m:
            w[i] += 1
    return tuple(w)


def multidegree_decompose(w: LogForm) -> list[tuple[tuple, LogForm]]:
    w.require_polynomial()
    chart = w.chart
    buckets: dict[tuple, dict] = {}
    for mask, c in w.comps.items():
        for exp, coeff in c.as_poly().items():
            wt = key_weight(chart, exp, mask)
            comps = buckets.setdefault(wt, {})
            comps.setdefault(mask, {})[exp] = coeff
    out = []
    for wt in sorted(buckets):
        comps = {
            mask: RatFunc(chart.ring.from_dict(terms))
            for mask, terms in buckets[wt].items()
        }
        out.append((wt, LogForm(chart, w.degree, comps)))
    return out


# -------------------------------------------------------------------------
# recentering and chart reordering

def reorder(g: Graded, chart: Chart) -> Graded:
    """Express ``g`` on ``chart`` (same variables, same divisor, new order)."""
    if set(chart.var_names) != set(g.chart.var_names) or chart.m != g.chart.m:
        raise ChartMismatch("reorder needs the same variables and divisor")
    pos = [chart.index(v) for v in g.chart.var_names]
    ring = chart.ring
    out = {}
    for mask, c in g.comps.items():
        targets = [pos[i] for i in bits(mask)]
        s = _permute_sign(targets)
        newmask = sum(1 << t for t in targets)
        c2 = c.remap(ring, pos)
        out[newmask] = -c2 if s < 0 else c2
    return type(g)(chart, g.degree, out)


def translate_chart(g: Graded, center) -> Graded:
    """Substitute x_i -> x_i + c_i.

    ``center`` is a mapping name -> rational or a sequence in canonical
    order.  Divisorial variables with c_i != 0 are demoted to plain ones:
    dlog x_i becomes dx_i / (x_i + c_i) and x_i d_i becomes (x_i + c_i) d_i.
    """
    chart = g.chart
    if isinstance(center, dict):
        c = [mpq(Fraction(str(center.get(v, 0)))) for v in chart.var_names]
    else:
        c = [mpq(Fraction(str(v))) for v in center]
    if len(c) != chart.dim:
        raise InvalidCenter(f"center has {len(c)} entries for a {chart.dim}-dimensional chart")
    if not any(c):
        return g
    demoted = {i for i in range(chart.m) if c[i] != 0}
    new_chart = Chart(chart.var_names, [v for i, v in enumerate(chart.divisor_vars) if i not in demoted])
    ring = new_chart.ring
    pos = [new_chart.index(v) for v in chart.var_names]
    images = [ring.gens[pos[i]] + ring(c[i]) for i in range(chart.dim)]
    out = {}
    for mask, coeff in g.comps.items():
        f = coeff.compose(ring, images)
        if not f.is_holomorphic_at_origin():
            raise InvalidCenter("translation puts a pole at the new origin")
        for i in bits(mask):
            if i in demoted:
                factor = RatFunc(images[i])
                f = f / factor if isinstance(g, LogForm) else f * factor
        targets = [pos[i] for i in bits(mask)]
        s = _permute_sign(targets)
        newmask = sum(1 << t for t in targets)
        out[newmask] = -f if s < 0 else f
    return type(g)(new_chart, g.degree, out)

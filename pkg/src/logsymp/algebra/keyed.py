"""Sparse monomial-level representation of forms and polyvectors.

A key is ``(exp, mask)``: the monomial x^exp times the basis element with
the given mask.  Two bases are used.  In the ``log`` basis the covectors
are dlog x_i (divisorial) and dx_j; in the ``plain`` basis every covector
is dx_i.  Holomorphic forms are most naturally written in the plain basis,
log forms in the log basis.  Vectors over keys are dicts ``key -> mpq``.
"""

from __future__ import annotations

from itertools import combinations

from gmpy2 import mpq

from .chart import Chart, bits
from .forms import Graded, LogForm, LogMultiVec, to_plain, wedge_sign
from .ratfunc import RatFunc

LOG = "log"
PLAIN = "plain"


def poly_terms(g: Graded, basis: str = LOG) -> dict:
    """``{mask: {exp: coeff}}`` for a polynomial element, in either basis."""
    comps = g.comps if basis == LOG else to_plain(g)
    out = {}
    for mask, c in comps.items():
        if not c.is_poly():
            g.require_polynomial()
            raise ValueError("coefficient not polynomial in the requested basis")
        p = c.as_poly()
        out[mask] = {exp: mpq(v) for exp, v in p.items()}
    return out


def to_vector(g: Graded, basis: str = LOG) -> dict:
    return {
        (exp, mask): c
        for mask, terms in poly_terms(g, basis).items()
        for exp, c in terms.items()
    }


def from_vector(vec: dict, chart: Chart, degree: int, cls=LogForm, basis: str = LOG) -> Graded:
    ring = chart.ring
    by_mask: dict = {}
    for (exp, mask), c in vec.items():
        by_mask.setdefault(mask, {})[exp] = c
    comps = {m: RatFunc(ring.from_dict(t)) for m, t in by_mask.items()}
    if basis == PLAIN:
        from .forms import from_plain

        return from_plain(cls, chart, degree, comps)
    return cls(chart, degree, comps)


def add_into(acc: dict, key, c) -> None:
    s = acc.get(key, 0) + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def add_scaled(acc: dict, vec: dict, c) -> None:
    for k, v in vec.items():
        add_into(acc, k, c * v)


def _bump(exp, i, by):
    e = list(exp)
    e[i] += by
    return tuple(e)


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


# -------------------------------------------------------------------------
# operators on single keys

def d_key(chart: Chart, exp, mask, basis: str = LOG) -> dict:
    out = {}
    for i in range(chart.dim):
        if mask >> i & 1 or not exp[i]:
            continue
        s = wedge_sign(1 << i, mask)
        if basis == LOG and i < chart.m:
            add_into(out, (exp, mask | 1 << i), s * exp[i])
        else:
            add_into(out, (_bump(exp, i, -1), mask | 1 << i), s * exp[i])
    return out


def contract_key(P: dict, exp, mask) -> dict:
    """Contract the polyvector ``P = {mask: {exp: c}}`` into one key."""
    out = {}
    for pm, terms in P.items():
        if pm & ~mask:
            continue
        rest = mask & ~pm
        s = wedge_sign(pm, rest)
        for e, c in terms.items():
            add_into(out, (_add_exp(exp, e), rest), s * c)
    return out


def wedge_key(w: dict, exp, mask) -> dict:
    """Left wedge by the form ``w = {mask: {exp: c}}``."""
    out = {}
    for wm, terms in w.items():
        s = wedge_sign(wm, mask)
        if not s:
            continue
        for e, c in terms.items():
            add_into(out, (_add_exp(exp, e), wm | mask), s * c)
    return out


def apply(op, vec: dict) -> dict:
    out = {}
    for (exp, mask), c in vec.items():
        add_scaled(out, op(exp, mask), c)
    return out


# -------------------------------------------------------------------------
# weights and enumeration

def key_weight(chart: Chart, exp, mask, basis: str = LOG) -> tuple:
    """Multidegree: x_i and dx_i weigh e_i, dlog x_i weighs 0."""
    w = list(exp)
    for i in bits(mask):
        if basis == PLAIN or i >= chart.m:
            w[i] += 1
    return tuple(w)


def exps_bounded(g, budget, lower=None):
    """All exponent vectors e >= lower with sum g_i e_i <= budget."""
    d = len(g)
    lower = lower or (0,) * d
    base = sum(gi * li for gi, li in zip(g, lower))
    if base > budget:
        return
    cur = list(lower)

    def rec(i, left):
        if i == d:
            yield tuple(cur)
            return
        k = 0
        while k * g[i] <= left:
            cur[i] = lower[i] + k
            yield from rec(i + 1, left - k * g[i])
            k += 1
        cur[i] = lower[i]

    yield from rec(0, budget - base)


def masks(dim: int, degree: int):
    for c in combinations(range(dim), degree):
        yield sum(1 << i for i in c)


def keys_bounded(chart: Chart, degree: int, g, budget, basis=LOG, lower=None):
    """Keys of the given form degree with g-weight at most ``budget``.

    ``lower(mask)`` gives the minimal exponent vector for that mask (used
    for holomorphic forms in the log basis and for twisted subspaces).
    """
    out = []
    for mask in masks(chart.dim, degree):
        shift = key_weight(chart, (0,) * chart.dim, mask, basis)
        lo = lower(mask) if lower else None
        b = budget - sum(a * s for a, s in zip(g, shift))
        for e in exps_bounded(g, b, lo):
            out.append((e, mask))
    return out


def multivec_terms(P: LogMultiVec, basis: str = LOG) -> dict:
    return poly_terms(P, basis)

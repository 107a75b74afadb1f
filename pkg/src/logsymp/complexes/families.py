"""Definitions of the complexes as operators on monomial keys.

A key is ``(tag, exp, mask)``.  Each family fixes, per complex degree, the
pieces (form degree, basis, optional membership test), the differential,
and the multidegree shifts that the differential can produce.  Families
built as images of a chain map also carry ``realize`` (source key to
ambient vector) and the differential of the ambient complex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from gmpy2 import mpq

from ..algebra.chart import Chart, bits
from ..algebra.forms import LogForm, LogMultiVec, ext_derivative, wedge_power
from ..algebra.keyed import LOG, PLAIN, add_scaled, contract_key, d_key, poly_terms, wedge_key
from ..errors import DegreeError, NotClosed, NotPoisson


@dataclass
class Piece:
    tag: object
    form_degree: int
    basis: str
    keep: Callable | None = None  # (exp, mask) -> bool
    lower: Callable | None = None  # mask -> minimal exponent vector


@dataclass
class FamilySpec:
    name: str
    chart: Chart
    degrees: list
    pieces: dict
    diff: Callable  # (p, key) -> {key: coeff}
    shifts: dict
    realize: Callable | None = None
    ambient_diff: Callable | None = None
    extra_shifts: list = field(default_factory=list)
    jet_ok: bool = True


ALIASES = {
    "derham": "de-rham",
    "log": "log",
    "minorlog": "minor-log",
    "minorlogtwisted": "minor-log-twisted",
    "augmentedminorlog": "augmented-minor-log",
    "foliated": "foliated",
    "foliatedpsi": "foliated",
    "simplicial": "simplicial",
    "simplicialderham": "simplicial",
    "brylinski": "brylinski",
    "mdp": "mdp",
    "thetaupper": "theta-upper",
    "theta": "theta",
    "thetalog": "theta-log",
    "ed": "ed",
    "ehybrid": "ed",
    "de": "de",
    "dhybrid": "de",
    "imagepi": "image-pi",
}


def canonical_name(name: str) -> str:
    key = name.replace("-", "").replace("_", "").lower()
    try:
        return ALIASES[key]
    except KeyError:
        raise ValueError(f"unknown complex family {name!r}") from None


def indicator(chart: Chart, mask: int, basis: str) -> tuple:
    return tuple(
        1 if (mask >> i & 1) and (basis == PLAIN or i >= chart.m) else 0 for i in range(chart.dim)
    )


def contraction_shifts(chart: Chart, terms: dict, basis: str) -> set:
    out = set()
    for mask, mons in terms.items():
        ind = indicator(chart, mask, basis)
        for e in mons:
            out.add(tuple(a - b for a, b in zip(e, ind)))
    return out


def wedge_shifts(chart: Chart, terms: dict, basis: str) -> set:
    out = set()
    for mask, mons in terms.items():
        ind = indicator(chart, mask, basis)
        for e in mons:
            out.add(tuple(a + b for a, b in zip(e, ind)))
    return out


def _tagged(tag, vec):
    return {(tag, e, m): c for (e, m), c in vec.items()}


def all_divisors_present(chart: Chart):
    """Plain-basis membership test for the minor log complex."""
    def keep(exp, mask):
        return all(exp[i] or mask >> i & 1 for i in range(chart.m))

    return keep


def minor_log_lower(chart: Chart):
    low = tuple(1 if i < chart.m else 0 for i in range(chart.dim))
    return lambda mask: low


# -------------------------------------------------------------------------
# plain differential complexes

def _d_family(name, chart, basis, keep=None, lower=None, twisted=False):
    zero = (0,) * chart.dim
    dlogF = {1 << i: {zero: mpq(1)} for i in range(chart.m)}

    def diff(p, key):
        tag, e, m = key
        out = _tagged(tag, d_key(chart, e, m, basis))
        if twisted:
            add_scaled(out, _tagged(tag, wedge_key(dlogF, e, m)), 1)
        return out

    degrees = list(range(chart.dim + 1))
    pieces = {p: [Piece(None, p, basis, keep, lower)] for p in degrees}
    shifts = {p: {zero} for p in degrees[:-1]}
    return FamilySpec(name, chart, degrees, pieces, diff, shifts)


def de_rham(chart):
    return _d_family("de-rham", chart, PLAIN)


def log_complex(chart):
    return _d_family("log", chart, LOG)


def minor_log(chart):
    return _d_family("minor-log", chart, PLAIN, keep=all_divisors_present(chart))


def minor_log_twisted(chart):
    return _d_family("minor-log-twisted", chart, LOG, twisted=True)


def _augmented_keep(chart: Chart, p: int, level: int):
    """Membership in K_level: at most min(p, level) divisorial variables
    absent from the key (absent means no x_i factor and no dx_i)."""
    allowed = min(p, level)

    def keep(exp, mask):
        missing = sum(1 for i in range(chart.m) if not exp[i] and not mask >> i & 1)
        return missing <= allowed

    return keep


def augmented_minor_log(chart, level=None):
    level = max(chart.m - 1, 0) if level is None else level
    fam = _d_family("augmented-minor-log", chart, PLAIN)
    fam.pieces = {p: [Piece(None, p, PLAIN, _augmented_keep(chart, p, level))] for p in fam.degrees}
    return fam


# -------------------------------------------------------------------------
# Poisson families

def _pi_terms(bivector: LogMultiVec, basis: str, power: int = 1) -> dict:
    P = wedge_power(bivector, power) if power != 1 else bivector
    return poly_terms(P, basis)


def _delta_op(chart, basis, Pt, lam, j):
    """(j+lam) d iota - (j+lam-1) iota d on keys of a j-form."""
    lam = mpq(lam)
    a, b = j + lam, j + lam - 1

    def op(e, m):
        out = {}
        if a:
            for (e1, m1), c1 in contract_key(Pt, e, m).items():
                add_scaled(out, d_key(chart, e1, m1, basis), a * c1)
        if b:
            for (e1, m1), c1 in d_key(chart, e, m, basis).items():
                add_scaled(out, contract_key(Pt, e1, m1), -b * c1)
        return out

    return op


def _brylinski_op(chart, basis, Pt):
    def op(e, m):
        out = {}
        for (e1, m1), c1 in contract_key(Pt, e, m).items():
            add_scaled(out, d_key(chart, e1, m1, basis), c1)
        for (e1, m1), c1 in d_key(chart, e, m, basis).items():
            add_scaled(out, contract_key(Pt, e1, m1), -c1)
        return out

    return op


def _reverse_family(name, chart, bivector, basis, op_for_form_degree, top=None):
    """Complex with degree p living on forms of degree 2n - p."""
    if chart.dim % 2:
        raise DegreeError(f"{name} needs an even-dimensional chart")
    n2 = chart.dim
    Pt = _pi_terms(bivector, basis)
    sh = contraction_shifts(chart, Pt, basis)
    last = n2 if top is None else top
    degrees = list(range(last + 1))
    ops = {p: op_for_form_degree(Pt, n2 - p) for p in degrees}

    def diff(p, key):
        tag, e, m = key
        if p == last:
            return {}
        return _tagged(tag, ops[p](e, m))

    pieces = {p: [Piece(None, n2 - p, basis)] for p in degrees}
    shifts = {p: sh for p in degrees[:-1]}
    return FamilySpec(name, chart, degrees, pieces, diff, shifts)


def _check_poisson(bivector):
    from ..algebra.forms import schouten

    if schouten(bivector, bivector):
        raise NotPoisson("[P, P] is not zero")


def brylinski(chart, bivector):
    _check_poisson(bivector)
    return _reverse_family(
        "brylinski", chart, bivector, PLAIN, lambda Pt, j: _brylinski_op(chart, PLAIN, Pt)
    )


def mdp(chart, bivector, lam=None, basis=PLAIN, name="mdp", top=None):
    _check_poisson(bivector)
    n = chart.dim // 2
    lam = -n if lam is None else lam
    return _reverse_family(
        name, chart, bivector, basis, lambda Pt, j: _delta_op(chart, basis, Pt, lam, j), top
    )


def theta(chart, bivector):
    return mdp(chart, bivector, None, PLAIN, "theta")


def theta_upper(chart, bivector):
    return mdp(chart, bivector, None, PLAIN, "theta-upper", top=chart.dim // 2)


def theta_log(chart, bivector):
    return mdp(chart, bivector, None, LOG, "theta-log")


def _hybrid(name, chart, bivector, form_degree, uses_delta):
    _check_poisson(bivector)
    if chart.dim % 2:
        raise DegreeError(f"{name} needs an even-dimensional chart")
    n = chart.dim // 2
    Pt = _pi_terms(bivector, PLAIN)
    zero = (0,) * chart.dim
    sh = contraction_shifts(chart, Pt, PLAIN)
    degrees = list(range(-n, n + 1))
    ops = {}
    shifts = {}
    for i in degrees[:-1]:
        k = form_degree(n, i)
        if uses_delta(i):
            ops[i] = _delta_op(chart, PLAIN, Pt, -n, k)
            shifts[i] = sh
        else:
            ops[i] = lambda e, m: d_key(chart, e, m, PLAIN)
            shifts[i] = {zero}

    def diff(p, key):
        tag, e, m = key
        if p == n:
            return {}
        return _tagged(tag, ops[p](e, m))

    pieces = {i: [Piece(None, form_degree(n, i), PLAIN)] for i in degrees}
    return FamilySpec(name, chart, degrees, pieces, diff, shifts)


def ed(chart, bivector):
    from ..poisson.operators import ed_form_degree

    return _hybrid("ed", chart, bivector, ed_form_degree, lambda i: i < 0)


def de(chart, bivector):
    from ..poisson.operators import de_form_degree

    return _hybrid("de", chart, bivector, de_form_degree, lambda i: i >= 0)


def image_pi(chart, bivector):
    """Image of pi: Theta^p -> Omega^p for p <= n, with the de Rham differential."""
    _check_poisson(bivector)
    n = chart.dim // 2
    src = mdp(chart, bivector, None, PLAIN, "image-pi", top=n)
    powers = {p: _pi_terms(bivector, PLAIN, n - p) if n - p else None for p in src.degrees}
    zero = (0,) * chart.dim

    def realize(p, key):
        tag, e, m = key
        if powers[p] is None:
            return {key: mpq(1)}
        return _tagged(tag, contract_key(powers[p], e, m))

    def ambient_diff(p, key):
        tag, e, m = key
        return _tagged(tag, d_key(chart, e, m, PLAIN))

    src.realize = realize
    src.ambient_diff = ambient_diff
    src.extra_shifts = [
        contraction_shifts(chart, t, PLAIN) for t in powers.values() if t is not None
    ]
    src.jet_ok = False
    _ = zero
    return src


def foliated(chart, psi: LogForm):
    """psi wedge the minor log complex, indexed so psi ^ F is degree 0."""
    if psi.degree != 1:
        raise DegreeError("psi must be a 1-form")
    if ext_derivative(psi):
        raise NotClosed("psi is not closed")
    psi_t = poly_terms(psi, LOG)
    src = _d_family("foliated", chart, LOG, lower=minor_log_lower(chart))
    src.degrees = src.degrees[:-1]
    src.pieces = {p: src.pieces[p] for p in src.degrees}
    src.shifts = {p: s for p, s in src.shifts.items() if p in src.degrees[:-1]}

    def realize(p, key):
        tag, e, m = key
        return _tagged(tag, wedge_key(psi_t, e, m))

    def ambient_diff(p, key):
        tag, e, m = key
        return _tagged(tag, d_key(chart, e, m, LOG))

    src.realize = realize
    src.ambient_diff = ambient_diff
    src.extra_shifts = [wedge_shifts(chart, psi_t, LOG)]
    src.jet_ok = False
    return src


def family_spec(name: str, chart: Chart, bivector=None, psi=None, lam=None) -> FamilySpec:
    name = canonical_name(name)
    simple = {
        "de-rham": de_rham,
        "log": log_complex,
        "minor-log": minor_log,
        "minor-log-twisted": minor_log_twisted,
        "augmented-minor-log": augmented_minor_log,
    }
    if name in simple:
        return simple[name](chart)
    if name == "foliated":
        if psi is None:
            raise ValueError("the foliated complex needs psi")
        return foliated(chart, psi)
    if name == "simplicial":
        from .special import simplicial_family

        return simplicial_family(chart)
    if bivector is None:
        raise ValueError(f"family {name} needs a Poisson structure")
    if name == "mdp":
        return mdp(chart, bivector, lam)
    table = {
        "brylinski": brylinski,
        "theta": theta,
        "theta-upper": theta_upper,
        "theta-log": theta_log,
        "ed": ed,
        "de": de,
        "image-pi": image_pi,
    }
    return table[name](chart, bivector)


__all__ = ["FamilySpec", "Piece", "family_spec", "canonical_name", "bits"]

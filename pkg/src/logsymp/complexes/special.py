"""Checks tied to particular complexes: the minor log homotopy, the
simplicial resolution of forms on the divisor, the augmented minor log
filtration, the foliated complex and the theta-log generators."""

from __future__ import annotations

from itertools import combinations

from gmpy2 import mpq

from ..algebra.chart import Chart
from ..algebra.forms import LogForm
from ..algebra.keyed import LOG, PLAIN, add_scaled, contract_key, d_key, key_weight, keys_bounded, wedge_key
from ..errors import DegreeError, NotIdentityMultiple, StarHypothesisFails
from ..linalg import Echelon
from .engine import CohomologyReport, build_complex, slice_cohomology
from .families import FamilySpec, Piece, _augmented_keep, canonical_name


# -------------------------------------------------------------------------
# minor log homotopy

def _euler_field(chart: Chart) -> dict:
    """sum x_i d_i in log-basis multivector terms."""
    zero = (0,) * chart.dim
    out = {}
    for i in range(chart.dim):
        e = zero if i < chart.m else tuple(1 if j == i else 0 for j in range(chart.dim))
        out[1 << i] = {e: mpq(1)}
    return out


def _twisted_d(chart: Chart, e, m) -> dict:
    zero = (0,) * chart.dim
    dlogF = {1 << i: {zero: mpq(1)} for i in range(chart.m)}
    out = d_key(chart, e, m, LOG)
    add_scaled(out, wedge_key(dlogF, e, m), 1)
    return out


def minor_log_homotopy_check(chart: Chart, multidegree, degree: int | None = None):
    """Return c with [iota_v, d + dlog F ^] = c id on the log-form slice of the
    given multidegree (and form degree, if given); None for an empty slice."""
    w = tuple(multidegree)
    if len(w) != chart.dim or min(w, default=0) < 0:
        raise DegreeError("multidegree must have one non-negative entry per variable")
    v = _euler_field(chart)
    degrees = range(chart.dim + 1) if degree is None else [degree]
    c = None
    for q in degrees:
        for e, m in keys_bounded(chart, q, (1,) * chart.dim, sum(w), LOG):
            if key_weight(chart, e, m, LOG) != w:
                continue
            out = {}
            for (e1, m1), a in _twisted_d(chart, e, m).items():
                add_scaled(out, contract_key(v, e1, m1), a)
            for (e1, m1), a in contract_key(v, e, m).items():
                add_scaled(out, _twisted_d(chart, e1, m1), a)
            out = {k: x for k, x in out.items() if x}
            if set(out) - {(e, m)}:
                raise NotIdentityMultiple(f"commutator is not diagonal on {(e, m)}")
            val = out.get((e, m), mpq(0))
            if c is None:
                c = val
            elif val != c:
                raise NotIdentityMultiple(f"commutator takes values {c} and {val} on one slice")
    if c == 0:
        raise NotIdentityMultiple("commutator vanishes on a nonempty slice")
    return c


# -------------------------------------------------------------------------
# simplicial resolution

def _restrict_key(I, e, m):
    return all(not e[i] and not (m >> i & 1) for i in I)


def simplicial_family(chart: Chart) -> FamilySpec:
    """C^0 = forms on X, C^k = forms on the k-fold branch intersections,
    all form degrees at once; keys are tagged by the branch set."""
    div = list(range(chart.m))
    degrees = list(range(chart.m + 1))
    pieces = {}
    for k in degrees:
        pieces[k] = [
            Piece(I, q, PLAIN, (lambda I: lambda e, m: _restrict_key(I, e, m))(I))
            for I in combinations(div, k)
            for q in range(chart.dim + 1)
        ]

    def diff(k, key):
        return simplicial_rho(chart, {key: mpq(1)})

    zero = (0,) * chart.dim
    return FamilySpec("simplicial", chart, degrees, pieces, diff, {k: {zero} for k in degrees[:-1]})


def simplicial_rho(chart: Chart, vec: dict) -> dict:
    """rho(w)_J = sum_j (-1)^j w_{J - j_j} restricted to X_J, on keyed vectors."""
    out = {}
    for (I, e, m), c in vec.items():
        for j in range(chart.m):
            if j in I or e[j] or m >> j & 1:
                continue
            J = tuple(sorted(I + (j,)))
            sign = -1 if J.index(j) % 2 else 1
            key = (J, e, m)
            out[key] = out.get(key, 0) + sign * c
    return {k: x for k, x in out.items() if x}


def restrict_to_branches(chart: Chart, vec: dict, k: int) -> dict:
    """Place a plain keyed vector on X into C^k by restricting it to each X_I."""
    out = {}
    for I in combinations(range(chart.m), k):
        for (e, m), c in vec.items():
            if _restrict_key(I, e, m):
                out[(I, e, m)] = c
    return out


def simplicial_homotopy_check(chart: Chart, cutoff: int = 3) -> bool:
    """Exactness of C^0 -> C^1 -> ... -> C^m at every C^k with k >= 1."""
    rep = slice_cohomology(build_complex("simplicial", chart, cutoff, mode="exact"))
    return all(s.dim == 0 for s in rep.slices if s.degree >= 1)


# -------------------------------------------------------------------------
# augmented minor log

def augmented_level(chart: Chart, level: int, cutoff: int):
    from .families import augmented_minor_log

    spec = augmented_minor_log(chart, level)
    return build_complex_from_spec(spec, cutoff)


def build_complex_from_spec(spec: FamilySpec, cutoff: int):
    from .engine import _exact
    from .grading import plan_grading

    plan = plan_grading(spec.chart.dim, spec.degrees, spec.shifts, spec.extra_shifts)
    cx = _exact(spec, plan, cutoff)
    for label in cx.slices:
        cx.check_closed(label)
    return cx


def _count_keys(chart: Chart, keep, cutoff: int) -> dict:
    out = {}
    for q in range(chart.dim + 1):
        for e, m in keys_bounded(chart, q, (1,) * chart.dim, cutoff, PLAIN):
            if keep(q, e, m):
                k = (q, key_weight(chart, e, m, PLAIN))
                out[k] = out.get(k, 0) + 1
    return out


def augmented_graded_dims(chart: Chart, level: int, cutoff: int) -> dict:
    """(form degree, multidegree) -> dim of K_level / K_{level-1}."""
    def keep(q, e, m):
        inside = _augmented_keep(chart, q, level)(e, m)
        below = level > 0 and _augmented_keep(chart, q, level - 1)(e, m)
        return inside and not below

    return _count_keys(chart, keep, cutoff)


def stratum_minor_log_dims(chart: Chart, level: int, cutoff: int) -> dict:
    """Sum over |J| = level of the minor log complex on X_J in degrees >= level,
    computed on the smaller chart and re-embedded."""
    from .families import all_divisors_present

    out = {}
    for J in combinations(range(chart.m), level):
        sub = chart.drop([chart.var_names[j] for j in J])
        keep_sub = all_divisors_present(sub)
        pos = [sub.index(v) if i not in J else None for i, v in enumerate(chart.var_names)]
        for (q, w), n in _count_keys(sub, lambda q, e, m: q >= level and keep_sub(e, m), cutoff).items():
            full = tuple(0 if p is None else w[p] for p in pos)
            out[(q, full)] = out.get((q, full), 0) + n
    return out


def augmented_minor_log_build(chart: Chart, cutoff: int = 3) -> dict:
    """Build every level K_0 ⊂ ... ⊂ K_{m-1} (each checked to be a
    subcomplex of the forms on X) and compare graded pieces."""
    top = max(chart.m - 1, 0)
    levels = [augmented_level(chart, i, cutoff) for i in range(top + 1)]
    graded = {}
    for i in range(top + 1):
        a = augmented_graded_dims(chart, i, cutoff)
        b = stratum_minor_log_dims(chart, i, cutoff) if chart.m else dict(a)
        graded[i] = a == b
    return {"complex": levels[-1], "levels": levels, "graded_match": graded}


# -------------------------------------------------------------------------
# foliated complex

def foliated_complex_cohomology(chart: Chart, psi: LogForm, cutoff: int) -> CohomologyReport:
    from ..poisson.structure import hypothesis_star_check

    if chart.m >= 2:
        ok, witness = hypothesis_star_check(chart, psi, cutoff)
        if not ok:
            raise StarHypothesisFails(f"hypothesis fails at {witness}")
    return slice_cohomology(build_complex("foliated", chart, cutoff, psi=psi, mode="exact"))


# -------------------------------------------------------------------------
# theta-log generators

def _normal_pairs(chart: Chart):
    n = chart.dim // 2
    try:
        return [(chart.index(f"x{i}"), chart.index(f"y{i}")) for i in range(1, n + 1)]
    except (KeyError, ValueError):
        raise DegreeError("theta-log generators need normal coordinates x1, y1, ...") from None


def theta_log_generators(chart: Chart) -> list:
    """(I, J, key) for d_I dlog(x)_J d_{k+1..n}, with I, J splitting the
    divisorial pairs; key is a log-basis (exp, mask) with coefficient one."""
    pairs = _normal_pairs(chart)
    k = chart.m
    zero = (0,) * chart.dim
    rest = 0
    for a, b in pairs[k:]:
        rest |= (1 << a) | (1 << b)
    out = []
    for r in range(k + 1):
        for J in combinations(range(k), r):
            I = tuple(i for i in range(k) if i not in J)
            mask = rest
            for i in I:
                mask |= (1 << pairs[i][0]) | (1 << pairs[i][1])
            for j in J:
                mask |= 1 << pairs[j][0]
            out.append((I, J, (zero, mask)))
    return out


def theta_log_generator_check(chart: Chart, bivector, cutoff: int | None = None) -> list:
    """For each generator: (I, J, closed, non_exact)."""
    cutoff = chart.dim if cutoff is None else cutoff
    cx = build_complex("theta-log", chart, cutoff, bivector, mode="exact")
    n2 = chart.dim
    res = []
    for I, J, (e, mask) in theta_log_generators(chart):
        q = bin(mask).count("1")
        p = n2 - q
        key = (None, e, mask)
        closed = not cx.spec.diff(p, key) if p < cx.degrees[-1] else True
        label = next((l for l, s in cx.slices.items() if key in s.get(p, [])), None)
        if label is None:
            raise DegreeError("generator lies outside the computed slices")
        ech = Echelon()
        if p > 0:
            for v in cx.differential(label, p - 1):
                if v:
                    ech.insert(v)
        res.append((I, J, closed, not ech.contains({key: mpq(1)})))
    return res


__all__ = [
    "augmented_minor_log_build",
    "foliated_complex_cohomology",
    "minor_log_homotopy_check",
    "restrict_to_branches",
    "simplicial_homotopy_check",
    "simplicial_rho",
    "theta_log_generator_check",
    "theta_log_generators",
    "canonical_name",
]

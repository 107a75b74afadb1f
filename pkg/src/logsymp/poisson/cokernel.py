"""Cokernels of contraction maps, image-of-pi generators and branch spans.

Holomorphic forms are handled in the plain dx basis, sliced by multidegree.
The images considered here are O-submodules generated by the images of
the basis forms; each generator must be multidegree-homogeneous, which
holds for every structure whose plain coefficients are monomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from gmpy2 import mpq

from ..algebra.chart import Chart, bits
from ..algebra.forms import LogForm, LogMultiVec, contract, from_plain, to_plain
from ..algebra.keyed import PLAIN, contract_key, exps_bounded, key_weight, keys_bounded, poly_terms, to_vector
from ..algebra.ratfunc import RatFunc
from ..errors import DegreeError, LogSymplecticViolation, PoleOnStratum, UnsupportedGrading
from ..linalg import Echelon
from .structure import PoissonStructure, divided_power, require_log_symplectic


@dataclass(frozen=True)
class CokernelSlice:
    degree: int
    weight: tuple
    ambient_dim: int
    image_rank: int

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.image_rank


def _homogeneous_weight(chart: Chart, vec: dict):
    ws = {key_weight(chart, e, m, PLAIN) for e, m in vec}
    if len(ws) > 1:
        raise UnsupportedGrading("generator is not multidegree-homogeneous")
    return ws.pop() if ws else None


def module_slices(chart: Chart, gens: list[dict], cutoff: int) -> dict:
    """Echelon forms of O-span(gens) in each multidegree of total <= cutoff."""
    ones = (1,) * chart.dim
    out: dict = {}
    for g in gens:
        if not g:
            continue
        w = _homogeneous_weight(chart, g)
        for a in exps_bounded(ones, cutoff - sum(w)):
            wt = tuple(x + y for x, y in zip(w, a))
            vec = {(tuple(x + y for x, y in zip(e, a)), m): c for (e, m), c in g.items()}
            out.setdefault(wt, Echelon()).insert(vec)
    return out


def ambient_dims(chart: Chart, degree: int, cutoff: int) -> dict:
    out: dict = {}
    for e, m in keys_bounded(chart, degree, (1,) * chart.dim, cutoff, PLAIN):
        w = key_weight(chart, e, m, PLAIN)
        out[w] = out.get(w, 0) + 1
    return out


def contraction_image_generators(P: PoissonStructure, k: int, degree: int) -> list[dict]:
    """Images of the plain basis forms of the given degree under iota_{Pi^k}."""
    chart = P.chart
    Pk = poly_terms(P.power(k), PLAIN) if k else {0: {(0,) * chart.dim: mpq(1)}}
    zero = (0,) * chart.dim
    return [contract_key(Pk, zero, m) for m in _masks(chart.dim, degree)]


def _masks(d, k):
    return [sum(1 << t for t in c) for c in combinations(range(d), k)]


def c_cokernel_dims(P: PoissonStructure, i: int, cutoff: int) -> list[CokernelSlice]:
    """Per-multidegree dims of coker(iota_{Pi^{n-i}}: Omega^{2n-i} -> Omega^i)."""
    require_log_symplectic(P)
    n = P.n
    if not 0 <= i <= n:
        raise DegreeError(f"i must lie in 0..{n}")
    gens = contraction_image_generators(P, n - i, 2 * n - i)
    image = module_slices(P.chart, gens, cutoff)
    return [
        CokernelSlice(i, w, dim, len(image[w]) if w in image else 0)
        for w, dim in sorted(ambient_dims(P.chart, i, cutoff).items())
    ]


def by_total_weight(slices: list[CokernelSlice]) -> dict:
    out: dict = {}
    for s in slices:
        t = sum(s.weight)
        out[t] = out.get(t, 0) + s.dim
    return dict(sorted(out.items()))


# -------------------------------------------------------------------------
# image of pi

def plain_vector_field(chart: Chart, mask: int) -> LogMultiVec:
    return from_plain(LogMultiVec, chart, bin(mask).count("1"), {mask: 1})


def image_pi_generators(P: PoissonStructure, r: int) -> list[LogForm]:
    """F <Phi^(r), d_I> over all r-subsets I; each must be holomorphic."""
    require_log_symplectic(P)
    if not 0 <= r <= P.n:
        raise DegreeError(f"r must lie in 0..{P.n}")
    chart = P.chart
    F = P.pfaffian
    phir = divided_power(P.phi, r)
    out = []
    for mask in _masks(chart.dim, r):
        g = contract(plain_vector_field(chart, mask), phir).scale(F)
        if not all(c.is_poly() for c in to_plain(g).values()):
            raise LogSymplecticViolation(f"generator for {bits(mask)} is not holomorphic")
        out.append(g)
    return out


def image_span_equal(P: PoissonStructure, r: int, cutoff: int = 3) -> bool:
    """O-span of the F<Phi^r, d_I> equals the image of iota_{Pi^{n-r}}."""
    a = module_slices(P.chart, [to_vector(g, PLAIN) for g in image_pi_generators(P, r)], cutoff)
    b = module_slices(P.chart, contraction_image_generators(P, P.n - r, 2 * P.n - r), cutoff)
    return _slices_equal(a, b)


def _slices_equal(a: dict, b: dict) -> bool:
    for w in set(a) | set(b):
        ea, eb = a.get(w), b.get(w)
        la, lb = len(ea) if ea else 0, len(eb) if eb else 0
        if la != lb:
            return False
        if la and not all(ea.contains(v) for v in eb.rows.values()):
            return False
    return True


# -------------------------------------------------------------------------
# pullback to strata

def _resolve(chart: Chart, branch) -> list[int]:
    out = []
    for b in branch:
        i = chart.index(b) if isinstance(b, str) else int(b)
        if not 0 <= i < chart.m:
            raise DegreeError(f"{b!r} is not a divisorial variable")
        out.append(i)
    return sorted(set(out))


def pullback_to_stratum(w: LogForm, branch) -> LogForm:
    """Restrict to x_i = 0 for the given divisorial variables (names or 0-based)."""
    chart = w.chart
    I = _resolve(chart, branch)
    plain = to_plain(w)
    for c in plain.values():
        if not c.is_poly():
            raise PoleOnStratum("form is not holomorphic along the stratum")
    target = chart.drop([chart.var_names[i] for i in I])
    positions = [None if i in I else target.index(v) for i, v in enumerate(chart.var_names)]
    cut = sum(1 << i for i in I)
    comps = {}
    for mask, c in plain.items():
        if mask & cut:
            continue
        f = c.remap(target.ring, positions)
        if not f:
            continue
        # surviving variables keep their relative order, so no sign appears
        comps[sum(1 << positions[i] for i in bits(mask))] = f
    return from_plain(LogForm, target, w.degree, comps)


def branch_span_check(P: PoissonStructure, r: int = 1, cutoff: int = 3, branch: int = 0) -> bool:
    """On the branch x_i = 0, the pullbacks of the image generators span the
    same O-module as the pullback of F_i psi_i, where F_i = F / x_i."""
    from .structure import psi_form

    require_log_symplectic(P)
    chart = P.chart
    gens = [pullback_to_stratum(g, [branch]) for g in image_pi_generators(P, r)]
    psi = psi_form(P, branch).psi
    Fi = P.pfaffian / RatFunc(chart.ring.gens[branch])
    ref = pullback_to_stratum(psi.scale(Fi), [branch])
    target = ref.chart
    a = module_slices(target, [to_vector(g, PLAIN) for g in gens], cutoff)
    b = module_slices(target, [to_vector(ref, PLAIN)], cutoff)
    return _slices_equal(a, b)


def kernel_foliation_check(P: PoissonStructure, cutoff: int = 3) -> bool:
    if P.chart.m != 1:
        raise DegreeError("the kernel foliation check needs exactly one divisorial variable")
    return branch_span_check(P, 1, cutoff, 0)

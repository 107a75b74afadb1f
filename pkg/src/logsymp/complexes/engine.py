"""Cohomology of complexes of forms, slice by slice.

Exact mode splits the complex into finite homogeneous slices using a
grading plan and computes each slice exactly.  Jet mode truncates by total
weight and reports the part of the truncated cohomology that survives from
a deeper truncation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from ..algebra.chart import Chart
from ..algebra.keyed import key_weight, keys_bounded
from ..errors import UnsupportedGrading
from ..linalg import Echelon, kernel, rank
from .families import FamilySpec, family_spec
from .grading import GradingPlan, plan_grading


@dataclass
class SliceResult:
    degree: int
    weight: tuple
    dim: int
    stable: bool = True

    def to_json(self) -> dict:
        return {"degree": self.degree, "weight": list(self.weight), "dim": self.dim, "stable": self.stable}


@dataclass
class CohomologyReport:
    family: str
    mode: str
    cutoff: int
    slices: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "mode": self.mode,
            "cutoff": self.cutoff,
            "slices": [s.to_json() for s in self.slices],
        }

    def totals(self) -> dict:
        out: dict = {}
        for s in self.slices:
            out[s.degree] = out.get(s.degree, 0) + s.dim
        return out

    def at(self, weight) -> dict:
        weight = tuple(weight)
        return {s.degree: s.dim for s in self.slices if s.weight == weight}

    def is_zero(self) -> bool:
        return all(s.dim == 0 for s in self.slices)


def _all_keys(spec: FamilySpec, p, g, budget):
    chart = spec.chart
    for piece in spec.pieces[p]:
        for e, m in keys_bounded(chart, piece.form_degree, g, budget, piece.basis, piece.lower):
            if piece.keep is None or piece.keep(e, m):
                yield (piece.tag, e, m), key_weight(chart, e, m, piece.basis)


@dataclass
class GradedSliceComplex:
    spec: FamilySpec
    mode: str
    cutoff: int
    plan: GradingPlan | None
    slices: dict  # label -> {p: [keys]}
    values: dict  # label -> slice value

    @property
    def family(self) -> str:
        return self.spec.name

    @property
    def chart(self) -> Chart:
        return self.spec.chart

    @property
    def degrees(self) -> list:
        return self.spec.degrees

    def vectors(self, label, p) -> list[dict]:
        keys = self.slices[label].get(p, [])
        if self.spec.realize is None:
            return [{k: mpq(1)} for k in keys]
        return [v for v in (self.spec.realize(p, k) for k in keys) if v]

    def differential(self, label, p) -> list[dict]:
        """Images of the slice's spanning vectors in degree p."""
        keys = self.slices[label].get(p, [])
        if p == self.degrees[-1]:
            return []
        if self.spec.realize is None:
            return [self.spec.diff(p, k) for k in keys]
        out = []
        for k in keys:
            v = self.spec.realize(p, k)
            img = {}
            for key, c in v.items():
                for key2, c2 in self.spec.ambient_diff(p, key).items():
                    img[key2] = img.get(key2, 0) + c * c2
            out.append({a: b for a, b in img.items() if b})
        return out

    def check_closed(self, label) -> None:
        """Images stay in the slice (plain mode) and d d = 0."""
        degs = self.degrees
        for idx, p in enumerate(degs[:-1]):
            imgs = self.differential(label, p)
            if self.spec.realize is None:
                target = set(self.slices[label].get(degs[idx + 1], []))
                for v in imgs:
                    stray = [k for k in v if k not in target]
                    if stray:
                        raise AssertionError(f"{self.family}: image leaves the slice at {stray[0]}")
                if idx + 2 < len(degs):
                    for v in imgs:
                        dd = {}
                        for k, c in v.items():
                            for k2, c2 in self.spec.diff(degs[idx + 1], k).items():
                                dd[k2] = dd.get(k2, 0) + c * c2
                        if any(dd.values()):
                            raise AssertionError(f"{self.family}: d^2 != 0")

    def slice_dims(self, label) -> dict:
        degs = self.degrees
        r_v = {p: rank(self.vectors(label, p)) for p in degs}
        r_d = {p: rank(self.differential(label, p)) for p in degs}
        out = {}
        for idx, p in enumerate(degs):
            prev = r_d[degs[idx - 1]] if idx else 0
            out[p] = r_v[p] - r_d[p] - prev
        return out


def build_complex(
    family: str,
    chart: Chart,
    cutoff: int,
    structure=None,
    psi=None,
    lam=None,
    mode: str = "auto",
    check: bool = True,
) -> GradedSliceComplex:
    """Build all slices of value <= cutoff.  ``structure`` is a bivector or
    PoissonStructure.  ``mode`` is 'exact', 'jet' or 'auto' (exact when a
    grading exists, jet otherwise)."""
    biv = getattr(structure, "bivector", structure)
    spec = family_spec(family, chart, biv, psi, lam)
    if mode not in ("auto", "exact", "jet"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode in ("auto", "exact"):
        try:
            plan = plan_grading(chart.dim, spec.degrees, spec.shifts, spec.extra_shifts)
        except UnsupportedGrading:
            if mode == "exact" or not spec.jet_ok:
                raise
        else:
            cx = _exact(spec, plan, cutoff)
            if check:
                for label in cx.slices:
                    cx.check_closed(label)
            return cx
    if not spec.jet_ok:
        raise UnsupportedGrading(f"{spec.name} has no jet mode")
    return GradedSliceComplex(spec, "jet", cutoff, None, {}, {})


def _exact(spec: FamilySpec, plan: GradingPlan, cutoff: int) -> GradedSliceComplex:
    slices: dict = {}
    values: dict = {}
    for p in spec.degrees:
        for key, w in _all_keys(spec, p, plan.g, plan.budget(p, cutoff)):
            label = plan.label(p, w)
            slices.setdefault(label, {}).setdefault(p, []).append(key)
            values[label] = plan.value(p, w)
    for label in slices:
        for p in slices[label]:
            slices[label][p].sort()
    return GradedSliceComplex(spec, "exact", cutoff, plan, slices, values)


def slice_cohomology(cx: GradedSliceComplex, nonzero_only: bool = False) -> CohomologyReport:
    if cx.mode == "jet":
        return _jet_report(cx)
    rep = CohomologyReport(cx.family, "exact", cx.cutoff)
    for label in sorted(cx.slices, key=lambda l: (cx.values[l], l)):
        dims = cx.slice_dims(label)
        for p in cx.degrees:
            if nonzero_only and not dims[p]:
                continue
            rep.slices.append(SliceResult(p, tuple(label), dims[p]))
    return rep


def cohomology(family, chart, cutoff, structure=None, psi=None, lam=None, mode="auto") -> CohomologyReport:
    return slice_cohomology(build_complex(family, chart, cutoff, structure, psi, lam, mode))


# -------------------------------------------------------------------------
# jet mode

def _max_drop(spec: FamilySpec) -> int:
    drops = [-sum(s) for S in spec.shifts.values() for s in S]
    return max([0] + drops)


def _jet_level(spec: FamilySpec, W: int):
    """Keys of each degree truncated at total weight W - s * position."""
    s = _max_drop(spec)
    ones = (1,) * spec.chart.dim
    keys = {}
    for idx, p in enumerate(spec.degrees):
        T = W - s * idx
        keys[p] = sorted(k for k, _ in _all_keys(spec, p, ones, T)) if T >= 0 else []
    return keys


def _truncate(v: dict, allowed: set) -> dict:
    return {k: c for k, c in v.items() if k in allowed}


def _jet_dims(spec: FamilySpec, W: int) -> dict:
    """dim of the image of H(J_{W+2}) in H(J_W), per degree."""
    lo = _jet_level(spec, W)
    hi = _jet_level(spec, W + 2)
    degs = spec.degrees
    out = {}
    for idx, p in enumerate(degs):
        allowed_lo = set(lo[p])
        if idx:
            q = degs[idx - 1]
            B = [_truncate(spec.diff(q, k), allowed_lo) for k in lo[q]]
        else:
            B = []
        if idx + 1 < len(degs):
            nxt = set(hi[degs[idx + 1]])
            imgs = [_truncate(spec.diff(p, k), nxt) for k in hi[p]]
            Z = kernel(imgs)
            cycles = []
            for combo in Z:
                v = {}
                for j, c in combo.items():
                    k = hi[p][j]
                    if k in allowed_lo:
                        v[k] = v.get(k, 0) + c
                cycles.append({a: b for a, b in v.items() if b})
        else:
            cycles = [{k: mpq(1)} for k in hi[p] if k in allowed_lo]
        eb = Echelon()
        for v in B:
            if v:
                eb.insert(v)
        rb = len(eb)
        for v in cycles:
            if v:
                eb.insert(v)
        out[p] = len(eb) - rb
    return out


def _jet_report(cx: GradedSliceComplex) -> CohomologyReport:
    W = cx.cutoff
    a = _jet_dims(cx.spec, W)
    b = _jet_dims(cx.spec, W + 1)
    rep = CohomologyReport(cx.family, "jet", W)
    for p in cx.degrees:
        rep.slices.append(SliceResult(p, (W,), a[p], a[p] == b[p]))
    return rep


def recenter(chart: Chart, structure, center) -> object:
    """Translate a bivector so that ``center`` (dict name -> rational) becomes the origin."""
    from ..algebra.forms import translate_chart

    biv = getattr(structure, "bivector", structure)
    return translate_chart(biv, center)


def stalk_cohomology(family, chart: Chart, structure, W: int, center=None) -> CohomologyReport:
    """Jet-mode cohomology at the origin, or at ``center`` after translating."""
    biv = getattr(structure, "bivector", structure)
    if center:
        biv = recenter(chart, biv, center)
        chart = biv.chart
    cx = build_complex(family, chart, W, biv, mode="jet")
    return slice_cohomology(cx)

"""Poisson bivectors on a chart and the data derived from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import factorial

from gmpy2 import mpq

from ..algebra.chart import Chart, bits
from ..algebra.forms import (
    LogForm,
    LogMultiVec,
    contract,
    contract_form,
    ext_derivative,
    schouten,
    to_plain,
    wedge_power,
)
from ..algebra.ratfunc import RatFunc
from ..errors import (
    DegeneratePfaffian,
    DegreeError,
    LogSymplecticViolation,
    NotClosed,
    NotPoisson,
)
from ..linalg import det, inverse, pfaffian, rank


@dataclass(frozen=True)
class PoissonStructure:
    chart: Chart
    bivector: LogMultiVec
    n: int
    top_power: LogMultiVec
    pfaffian_raw: RatFunc
    pfaffian: RatFunc
    A: tuple
    B: tuple | None
    log_symplectic: bool
    _phi: LogForm | None = field(default=None, repr=False)

    @property
    def phi(self) -> LogForm:
        if self._phi is None:
            raise LogSymplecticViolation("the inverse of the structure matrix has poles off the log basis")
        return self._phi

    @property
    def has_phi(self) -> bool:
        return self._phi is not None

    def power(self, k: int) -> LogMultiVec:
        return wedge_power(self.bivector, k)


def _skew_matrix(P: LogMultiVec):
    d = P.chart.dim
    zero = RatFunc(P.chart.ring.zero)
    A = [[zero] * d for _ in range(d)]
    for mask, c in P.comps.items():
        i, j = bits(mask)
        A[i][j] = c
        A[j][i] = -c
    return A


def make_poisson(chart: Chart, bivector: LogMultiVec) -> PoissonStructure:
    if bivector.degree != 2 and bivector.comps:
        raise DegreeError("the bivector must have degree 2")
    if bivector.chart != chart:
        from ..errors import ChartMismatch

        raise ChartMismatch(f"{bivector.chart!r} vs {chart!r}")
    bivector = LogMultiVec(chart, 2, bivector.comps)
    bivector.require_polynomial("bivector coefficients")
    if schouten(bivector, bivector):
        raise NotPoisson("[P, P] is not zero")
    if chart.dim % 2:
        raise DegreeError("a log-symplectic structure needs an even-dimensional chart")
    n = chart.dim // 2
    top = wedge_power(bivector, n)
    full = (1 << chart.dim) - 1
    if full not in top.comps:
        raise DegeneratePfaffian("the top power of the bivector vanishes")
    raw = to_plain(top)[full]
    F = RatFunc(raw.num.monic(), raw.den) if raw.is_poly() else raw
    A = _skew_matrix(bivector)
    top_log = top.comps[full]
    log_sym = top_log.is_poly() and top_log.at_origin() not in (None, 0)
    ring = chart.ring
    one, zero = RatFunc(ring.one), RatFunc(ring.zero)
    B = None
    phi = None
    try:
        Ainv = inverse(A, one, zero)
    except ZeroDivisionError:
        Ainv = None
    if Ainv is not None:
        d = chart.dim
        B = tuple(tuple(Ainv[j][i] for j in range(d)) for i in range(d))
        if all(B[i][j].is_holomorphic_at_origin() for i in range(d) for j in range(d)):
            phi = LogForm(
                chart, 2, {(1 << i) | (1 << j): B[i][j] for i in range(d) for j in range(i + 1, d)}
            )
    return PoissonStructure(
        chart=chart,
        bivector=bivector,
        n=n,
        top_power=top,
        pfaffian_raw=raw,
        pfaffian=F,
        A=tuple(tuple(r) for r in A),
        B=B,
        log_symplectic=log_sym,
        _phi=phi,
    )


def require_log_symplectic(P: PoissonStructure) -> None:
    if not P.log_symplectic:
        raise LogSymplecticViolation("the Pfaffian is not a unit times the divisor equation")
    P.phi  # noqa: B018 - raises when the inverse has poles


def divided_power(g, k: int):
    return wedge_power(g, k).scale(mpq(1, factorial(k)))


def verify_phi_powers(P: PoissonStructure, i: int) -> bool:
    """Pairing of divided powers: <Pi^(n), Phi^(i)> == Pi^(n-i)."""
    require_log_symplectic(P)
    n = P.n
    if not 0 <= i <= n:
        raise DegreeError(f"power {i} outside 0..{n}")
    lhs = contract_form(divided_power(P.phi, i), divided_power(P.bivector, n))
    return lhs == divided_power(P.bivector, n - i)


# -------------------------------------------------------------------------
# log duality

def log_duality_apply(P: PoissonStructure, w: LogForm) -> LogForm:
    require_log_symplectic(P)
    i = w.degree - P.n
    if i < 0:
        raise DegreeError(f"expected a form of degree at least {P.n}")
    return contract(P.power(i), w)


def _masks(d, k):
    return [sum(1 << t for t in c) for c in combinations(range(d), k)]


def duality_matrix(P: PoissonStructure, i: int):
    """Matrix of contraction by Pi^i from degree n+i to degree n-i log forms."""
    d, n = P.chart.dim, P.n
    rows, cols = _masks(d, n - i), _masks(d, n + i)
    Pi_i = P.power(i)
    zero = RatFunc(P.chart.ring.zero)
    M = [[zero] * len(cols) for _ in rows]
    pos = {m: r for r, m in enumerate(rows)}
    for c, m in enumerate(cols):
        img = contract(Pi_i, LogForm.basis(P.chart, m))
        for k, v in img.comps.items():
            M[pos[k]][c] = v
    return M


def log_duality_verify(P: PoissonStructure, i: int) -> bool:
    """Invertible with an inverse holomorphic at the origin."""
    require_log_symplectic(P)
    if not 0 <= i <= P.n:
        raise DegreeError(f"index {i} outside 0..{P.n}")
    M = duality_matrix(P, i)
    ring = P.chart.ring
    one, zero = RatFunc(ring.one), RatFunc(ring.zero)
    D = det(M, one, zero)
    if D.at_origin() in (None, 0):
        return False
    inv = inverse(M, one, zero)
    return all(e.is_holomorphic_at_origin() for row in inv for e in row)


# -------------------------------------------------------------------------
# conormal forms, residual generality, hypothesis (*)

@dataclass(frozen=True)
class ConormalData:
    branch: int
    psi: LogForm


def psi_form(P: PoissonStructure, i: int) -> ConormalData:
    """psi_i = contraction of the basis vector x_i d_i into Phi (0-based i)."""
    require_log_symplectic(P)
    if not 0 <= i < P.chart.m:
        raise DegreeError(f"branch {i} is not divisorial")
    v = LogMultiVec.basis(P.chart, 1 << i)
    psi = contract(v, P.phi)
    if ext_derivative(psi):
        raise NotClosed(f"psi_{i + 1} is not closed")
    return ConormalData(i, psi)


def residues(w: LogForm) -> list:
    """Values at the origin of the dlog coefficients."""
    m = w.chart.m
    out = []
    for i in range(m):
        c = w.comps.get(1 << i)
        v = c.at_origin() if c is not None else mpq(0)
        if v is None:
            raise LogSymplecticViolation("coefficient has a pole at the origin")
        out.append(v)
    return out


def _mpq_rank(rows) -> int:
    return rank([{j: x for j, x in enumerate(r) if x} for r in rows])


def rg_check(P: PoissonStructure) -> tuple[bool, dict | None]:
    """Finite surrogate for residual generality at the chart origin.

    Returns ``(ok, witness)``; the witness names the failing minor or the
    dependent residue family.
    """
    require_log_symplectic(P)
    m = P.chart.m
    A0 = [[P.A[i][j].at_origin() for j in range(m)] for i in range(m)]
    for size in range(2, m + 1, 2):
        for idx in combinations(range(m), size):
            sub = [[A0[r][c] for c in idx] for r in idx]
            if pfaffian(sub, mpq(0)) == 0:
                return False, {"kind": "pfaffian_minor", "indices": [i + 1 for i in idx]}
    psis = [residues(psi_form(P, i).psi) for i in range(m)]
    for size in range(1, m // 2 + 1):
        for J in combinations(range(m), size):
            rows = [psis[j] for j in J] + [[mpq(int(k == j)) for k in range(m)] for j in J]
            if _mpq_rank(rows) < 2 * size:
                return False, {"kind": "residue_dependence", "indices": [j + 1 for j in J]}
    return True, None


def form_at_origin(w: LogForm) -> list:
    out = []
    for i in range(w.chart.dim):
        c = w.comps.get(1 << i)
        v = c.at_origin() if c is not None else mpq(0)
        if v is None:
            raise LogSymplecticViolation("coefficient has a pole at the origin")
        out.append(v)
    return out


def hypothesis_star_check(chart: Chart, psi: LogForm, cutoff: int = 5) -> tuple[bool, dict | None]:
    """psi and chi_(m.) + chi_(1.) independent at every multiple point.

    Multi-indices range over entries 0..cutoff on each set of at least two
    divisorial branches.
    """
    if psi.degree != 1:
        raise DegreeError("psi must be a 1-form")
    if ext_derivative(psi):
        raise NotClosed("psi is not closed")
    m = chart.m
    p0 = form_at_origin(psi)
    for size in range(2, m + 1):
        for J in combinations(range(m), size):
            for mi in product(range(cutoff + 1), repeat=size):
                chi = [mpq(0)] * chart.dim
                for j, k in zip(J, mi):
                    chi[j] = mpq(k + 1)
                if _mpq_rank([p0, chi]) < 2:
                    full = [0] * m
                    for j, k in zip(J, mi):
                        full[j] = k
                    return False, {"branches": [j + 1 for j in J], "multi_index": full}
    return True, None

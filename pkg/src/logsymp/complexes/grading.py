"""Gradings that make a differential homogeneous.

Every operator in a complex moves the multidegree of a monomial key by one
of finitely many shift vectors.  If all shifts of each operator agree
modulo a lattice L, keys split into classes by ``Q w`` where the rows of Q
span the annihilator of L.  A strictly positive integer weight g in that
annihilator makes every class finite once its g-value is fixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from sympy import Eq, Matrix, symbols
from sympy.solvers.simplex import InfeasibleLPError, lpmin

from ..errors import UnsupportedGrading


def _integer_row(v) -> tuple:
    fr = [Fraction(str(x)) for x in v]
    den = lcm(*[f.denominator for f in fr]) if fr else 1
    ints = [int(f * den) for f in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    g = g or 1
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class GradingPlan:
    dim: int
    Q: tuple  # rows
    g: tuple
    offsets: dict  # complex degree -> weight offset vector

    @property
    def is_multidegree(self) -> bool:
        return len(self.Q) == self.dim and all(
            self.Q[i][j] == (1 if i == j else 0) for i in range(self.dim) for j in range(self.dim)
        )

    def normalized(self, p, w) -> tuple:
        off = self.offsets.get(p, (0,) * self.dim)
        return tuple(x - o for x, o in zip(w, off))

    def label(self, p, w) -> tuple:
        v = self.normalized(p, w)
        return tuple(sum(q * x for q, x in zip(row, v)) for row in self.Q)

    def value(self, p, w) -> int:
        v = self.normalized(p, w)
        return sum(a * x for a, x in zip(self.g, v))

    def budget(self, p, cutoff) -> int:
        """Largest raw g-weight of a key of degree p in a slice of value <= cutoff."""
        off = self.offsets.get(p, (0,) * self.dim)
        return cutoff + sum(a * o for a, o in zip(self.g, off))


def plan_grading(dim: int, degrees: list, shifts: dict, extra: list = ()) -> GradingPlan:
    """``shifts[p]`` is the set of shift vectors of the differential leaving
    degree p; ``extra`` lists further shift sets that must be homogeneous."""
    diffs = []
    for S in list(shifts.values()) + list(extra):
        S = sorted(S)
        for s in S[1:]:
            d = tuple(a - b for a, b in zip(s, S[0]))
            if any(d):
                diffs.append(d)
    offsets = {}
    cur = (0,) * dim
    for p in degrees:
        offsets[p] = cur
        S = shifts.get(p)
        if S:
            s = min(S)
            cur = tuple(a + b for a, b in zip(cur, s))
    if not diffs:
        Q = tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))
        return GradingPlan(dim, Q, (1,) * dim, offsets)
    L = Matrix(diffs)
    Q = tuple(_integer_row(list(v)) for v in L.nullspace())
    gs = symbols(f"g0:{dim}")
    cons = [Eq(sum(r[i] * gs[i] for i in range(dim)), 0) for r in diffs]
    cons += [x >= 1 for x in gs]
    try:
        _, sol = lpmin(sum(gs), cons)
    except InfeasibleLPError:
        raise UnsupportedGrading("no positive grading makes the differential homogeneous") from None
    g = _integer_row([sol[x] for x in gs])
    if any(x <= 0 for x in g) or any(sum(a * b for a, b in zip(g, r)) for r in diffs):
        raise UnsupportedGrading("grading search returned an invalid weight")
    return GradingPlan(dim, Q, g, offsets)

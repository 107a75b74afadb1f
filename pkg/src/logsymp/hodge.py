"""Hodge diamond bookkeeping for compact Kähler Poisson manifolds.

Index convention: ``h[p][q] = dim H^q(X, Omega^p)`` with ``0 <= p, q <= 2n``.
The complexes here have hypercohomology in 4n + 1 degrees, so each dims
vector has 4n + 1 entries.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidDiamond


@dataclass(frozen=True)
class HodgeDiamond:
    n: int
    h: tuple

    def __init__(self, n, h):
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise InvalidDiamond("n must be a non-negative integer")
        size = 2 * n + 1
        try:
            rows = tuple(tuple(r) for r in h)
        except TypeError:
            raise InvalidDiamond("h must be a square table") from None
        if len(rows) != size or any(len(r) != size for r in rows):
            raise InvalidDiamond(f"h must be {size}x{size}")
        for r in rows:
            for x in r:
                if isinstance(x, bool) or not isinstance(x, int) or x < 0:
                    raise InvalidDiamond("entries must be non-negative integers")
        top = 2 * n
        for p in range(size):
            for q in range(size):
                if rows[p][q] != rows[q][p]:
                    raise InvalidDiamond(f"h^{p},{q} != h^{q},{p}")
                if rows[p][q] != rows[top - p][top - q]:
                    raise InvalidDiamond(f"h^{p},{q} != h^{top - p},{top - q}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "h", rows)

    @property
    def size(self) -> int:
        return 2 * self.n + 1

    def get(self, p: int, q: int) -> int:
        if 0 <= p < self.size and 0 <= q < self.size:
            return self.h[p][q]
        return 0

    def total(self) -> int:
        return sum(map(sum, self.h))

    def to_json(self) -> dict:
        return {"n": self.n, "h": [list(r) for r in self.h]}


def _degrees(H: HodgeDiamond, start: int) -> range:
    return range(start, start + 4 * H.n + 1)


def theta_quotients(H: HodgeDiamond) -> list[list[int]]:
    """For each degree i: the quotient dims h^{2n-i+q, q}, q = 0..i."""
    top = 2 * H.n
    return [[H.get(top - i + q, q) for q in range(i + 1)] for i in _degrees(H, 0)]


def theta_cohomology_dims(H: HodgeDiamond) -> tuple:
    return tuple(sum(qs) for qs in theta_quotients(H))


def _hybrid_quotients(H: HodgeDiamond, sign: int) -> list[list[int]]:
    n = H.n
    return [
        [H.get(n + sign * abs(n - a), n + i - a) for a in range(2 * n + 1)]
        for i in _degrees(H, -n)
    ]


def dihelical_quotients(H: HodgeDiamond) -> tuple[list, list]:
    return _hybrid_quotients(H, 1), _hybrid_quotients(H, -1)


def dihelical_dims(H: HodgeDiamond) -> tuple[tuple, tuple]:
    """Dims for the two hybrid complexes, degrees -n .. 3n."""
    a, b = dihelical_quotients(H)
    return tuple(map(sum, a)), tuple(map(sum, b))


def rotate_diamond(table) -> tuple:
    """Rotate a square table clockwise by a quarter turn."""
    t = [list(r) for r in getattr(table, "h", table)]
    N = len(t)
    return tuple(tuple(t[N - 1 - j][i] for j in range(N)) for i in range(N))


def row_sums(table) -> tuple:
    """Sums along the displayed rows of a diamond (i + j constant)."""
    t = getattr(table, "h", table)
    N = len(t)
    return tuple(
        sum(t[i][s - i] for i in range(N) if 0 <= s - i < N) for s in range(2 * N - 1)
    )


@dataclass(frozen=True)
class FanoConstraintReport:
    a: int
    checks: tuple  # (i, h^{2n-i,i}, holds)

    @property
    def consistent(self) -> bool:
        return all(ok for _, _, ok in self.checks)

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "consistent": self.consistent,
            "checks": [{"i": i, "h": v, "holds": ok} for i, v, ok in self.checks],
        }


def rg_fano_constraint_report(H: HodgeDiamond, a: int) -> FanoConstraintReport:
    """Checks h^{2n-i,i} = 0 for i = 0..a.  A failure rules out an RG
    log-symplectic structure whose strata X_k are Fano for k <= a."""
    top = 2 * H.n
    checks = tuple((i, H.get(top - i, i), H.get(top - i, i) == 0) for i in range(a + 1))
    return FanoConstraintReport(a, checks)

"""Exact linear algebra over the rationals and over ``RatFunc``.

Sparse vectors are dicts ``index -> mpq`` with no zero entries.  Row
reduction keeps one pivot row per pivot column, normalized to 1 there.
"""

from __future__ import annotations

from gmpy2 import mpq


def _axpy(y: dict, a, x: dict) -> None:
    """y += a * x in place, dropping zeros."""
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


class Echelon:
    """Incremental row echelon form of a growing set of sparse vectors.

    With ``track=True`` each stored row remembers which combination of the
    inserted vectors produced it, so kernels of a list of images fall out of
    ``insert``.
    """

    def __init__(self, track: bool = False):
        self.rows: dict = {}
        self.combos: dict = {}
        self.track = track
        self.count = 0

    def __len__(self):
        return len(self.rows)

    def insert(self, v: dict):
        """Add ``v``; return None if independent, else the dependency
        (combination of earlier inserted vectors summing to ``v``, tracked
        mode only; ``{}`` otherwise)."""
        idx = self.count
        self.count += 1
        combo = {idx: mpq(1)} if self.track else None
        r = self._reduce_full(v, combo)
        if not r:
            return combo if self.track else {}
        col = min(r)
        inv = 1 / mpq(r[col])
        r = {k: x * inv for k, x in r.items()}
        if self.track:
            combo = {k: x * inv for k, x in combo.items()}
        # keep rows fully reduced against the new pivot
        for c, row in self.rows.items():
            a = row.get(col)
            if a:
                _axpy(row, -a, r)
                if self.track:
                    _axpy(self.combos[c], -a, combo)
        self.rows[col] = r
        if self.track:
            self.combos[col] = combo
        return None

    def _reduce_full(self, v, combo):
        v = dict(v)
        for col in sorted(k for k in v if k in self.rows):
            a = v.get(col)
            if not a:
                continue
            _axpy(v, -a, self.rows[col])
            if combo is not None:
                _axpy(combo, -a, self.combos[col])
        return v

    def reduce(self, v: dict) -> dict:
        return self._reduce_full(v, None)

    def contains(self, v: dict) -> bool:
        return not self._reduce_full(v, None)


def rank(vectors) -> int:
    e = Echelon()
    for v in vectors:
        if v:
            e.insert(v)
    return len(e)


def kernel(images: list[dict]) -> list[dict]:
    """Basis of the kernel of the map sending basis vector j to images[j]."""
    e = Echelon(track=True)
    out = []
    for v in images:
        dep = e.insert(v)
        if dep is not None:
            out.append(dep)
    return out


def span_equal(a: list[dict], b: list[dict]) -> bool:
    ea, eb = Echelon(), Echelon()
    for v in a:
        if v:
            ea.insert(v)
    for v in b:
        if v:
            eb.insert(v)
    if len(ea) != len(eb):
        return False
    return all(ea.contains(v) for v in b)


# -------------------------------------------------------------------------
# dense matrices over a field (RatFunc or mpq)

def det(M, one, zero):
    """Determinant by Gaussian elimination over a field."""
    n = len(M)
    A = [list(r) for r in M]
    result = one
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return zero
        if p != c:
            A[c], A[p] = A[p], A[c]
            result = -result
        piv = A[c][c]
        result = result * piv
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] / piv
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return result


def inverse(M, one, zero):
    """Inverse by Gauss-Jordan; raises ZeroDivisionError when singular."""
    n = len(M)
    A = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def pfaffian(M, zero):
    """Pfaffian of a skew matrix by expansion along the first row."""
    n = len(M)
    if n == 0:
        return zero + 1
    if n % 2:
        return zero
    total = zero
    idx = list(range(n))
    for j in range(1, n):
        a = M[0][j]
        if not a:
            continue
        rest = [k for k in idx if k not in (0, j)]
        sub = [[M[r][c] for c in rest] for r in rest]
        term = a * pfaffian(sub, zero)
        total = total + term if j % 2 == 1 else total - term
    return total

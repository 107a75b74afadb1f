"""Example Poisson structures: normal forms, toric diagonal, toric-by-torus."""

from __future__ import annotations

from itertools import combinations
from pathlib import Path

from gmpy2 import mpq

from .algebra.chart import Chart
from .algebra.forms import LogMultiVec

DATA = Path(__file__).parent / "data"

_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def normal_form(k: int, n: int) -> tuple[Chart, LogMultiVec]:
    """sum_{i<=k} x_i d_{x_i} d_{y_i} + sum_{i>k} d_{x_i} d_{y_i}."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    names = [v for i in range(1, n + 1) for v in (f"x{i}", f"y{i}")]
    chart = Chart(names, [f"x{i}" for i in range(1, k + 1)])
    comps = {}
    for i in range(1, n + 1):
        a, b = chart.index(f"x{i}"), chart.index(f"y{i}")
        comps[(1 << a) | (1 << b)] = 1 if a < b else -1
    return chart, LogMultiVec(chart, 2, comps)


def toric_coefficients(n: int) -> dict:
    """Fixed generic rationals a_ij, i < j, over 2n log-basis vectors."""
    pairs = list(combinations(range(2 * n), 2))
    return {p: mpq(_PRIMES[t % len(_PRIMES)], (p[1] - p[0]) + 1) for t, p in enumerate(pairs)}


def toric_diagonal(n: int) -> tuple[Chart, LogMultiVec]:
    """sum a_ij x_i d_i x_j d_j on (C^*)^{2n} near a torus-fixed point."""
    names = [f"x{i}" for i in range(1, 2 * n + 1)]
    chart = Chart(names, names)
    comps = {(1 << i) | (1 << j): a for (i, j), a in toric_coefficients(n).items()}
    return chart, LogMultiVec(chart, 2, comps)


def toric_by_torus(n: int) -> tuple[Chart, LogMultiVec]:
    """sum z_i d_{z_i} ^ d_{t_i}: toric directions paired with flat ones."""
    names = [f"z{i}" for i in range(1, n + 1)] + [f"t{i}" for i in range(1, n + 1)]
    chart = Chart(names, [f"z{i}" for i in range(1, n + 1)])
    comps = {}
    for i in range(1, n + 1):
        a, b = chart.index(f"z{i}"), chart.index(f"t{i}")
        comps[(1 << a) | (1 << b)] = 1
    return chart, LogMultiVec(chart, 2, comps)


def non_poisson() -> tuple[Chart, LogMultiVec]:
    """x3 d1 d2 + x1 d2 d3 + x1 d3 d1 on C^3 (Jacobiator -x3)."""
    chart = Chart(["x1", "x2", "x3"])
    ring = chart.ring
    x1, x3 = ring.gens[0], ring.gens[2]
    return chart, LogMultiVec(chart, 2, {0b011: x3, 0b110: x1, 0b101: -x1})


FIXTURES = {
    **{f"normal-form-k{k}-n{n}": (lambda k=k, n=n: normal_form(k, n)) for n in (1, 2) for k in range(n + 1)},
    "toric-diagonal-n1": lambda: toric_diagonal(1),
    "toric-diagonal-n2": lambda: toric_diagonal(2),
    "toric-by-torus-n1": lambda: toric_by_torus(1),
    "toric-by-torus-n2": lambda: toric_by_torus(2),
}


def load(name: str) -> tuple[Chart, LogMultiVec]:
    """Read a shipped fixture file by name (without the .json suffix)."""
    from .io import parse_structure

    return parse_structure((DATA / f"{name}.json").read_text(encoding="utf-8"))


def write_all(directory: Path = DATA) -> None:
    from .io import dumps, format_structure

    directory.mkdir(parents=True, exist_ok=True)
    for name, make in {**FIXTURES, "non-poisson": non_poisson}.items():
        chart, P = make()
        (directory / f"{name}.json").write_text(format_structure(chart, P), encoding="utf-8")
    charts = {
        "d1m0": Chart(["x"]),
        "d2m2": Chart(["x1", "x2"], ["x1", "x2"]),
        "d2m1": Chart(["x1", "x2"], ["x1"]),
        "d3m3": Chart(["x1", "x2", "x3"], ["x1", "x2", "x3"]),
        "d4m2": Chart(["x1", "x2", "x3", "x4"], ["x1", "x2"]),
        "d4m4": Chart(["x1", "x2", "x3", "x4"], ["x1", "x2", "x3", "x4"]),
    }
    for name, chart in charts.items():
        (directory / f"chart-{name}.json").write_text(dumps(chart.to_json()), encoding="utf-8")
    diamonds = {
        "p1xp1": {"n": 1, "h": [[1, 0, 0], [0, 2, 0], [0, 0, 1]]},
        "abelian-surface": {"n": 1, "h": [[1, 2, 1], [2, 4, 2], [1, 2, 1]]},
        "zero-n1": {"n": 1, "h": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]},
    }
    for name, obj in diamonds.items():
        (directory / f"diamond-{name}.json").write_text(dumps(obj), encoding="utf-8")

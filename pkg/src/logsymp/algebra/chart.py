"""Coordinate charts with a normal-crossing divisor x_1 ... x_m = 0."""

from __future__ import annotations

import re
from functools import cached_property

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from ..errors import ChartMismatch

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED = {"d", "dlog", "D"}


def natural_key(name: str):
    """Sort key treating digit runs as integers, so x2 < x10."""
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


_RING_CACHE: dict[tuple[str, ...], PolyRing] = {}


def poly_ring(names: tuple[str, ...]) -> PolyRing:
    ring = _RING_CACHE.get(names)
    if ring is None:
        ring = PolyRing(list(names), QQ, grlex)
        _RING_CACHE[names] = ring
    return ring


class Chart:
    """Named coordinates, divisorial variables first.

    Basis covector i is dlog(x_i) for i < m and dx_i for i >= m; basis vector
    i is x_i d/dx_i for i < m and d/dx_i otherwise.  Masks are bitmasks over
    the canonical variable order.
    """

    __slots__ = ("var_names", "m", "__dict__")

    def __init__(self, var_names, divisor_vars=()):
        names = list(var_names)
        div = list(divisor_vars)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for v in names:
            if not _IDENT.match(v) or v in _RESERVED:
                raise ValueError(f"invalid variable name {v!r}")
        unknown = set(div) - set(names)
        if unknown:
            raise ValueError(f"divisor variables {sorted(unknown)} not in chart")
        divs = sorted(set(div), key=natural_key)
        rest = sorted((v for v in names if v not in set(div)), key=natural_key)
        self.var_names: tuple[str, ...] = tuple(divs + rest)
        self.m: int = len(divs)

    @property
    def dim(self) -> int:
        return len(self.var_names)

    @property
    def divisor_vars(self) -> tuple[str, ...]:
        return self.var_names[: self.m]

    @property
    def half_dim(self):
        return self.dim // 2 if self.dim % 2 == 0 else None

    @cached_property
    def ring(self) -> PolyRing:
        return poly_ring(self.var_names)

    @cached_property
    def nondiv_mask(self) -> int:
        return ((1 << self.dim) - 1) & ~((1 << self.m) - 1)

    def index(self, name: str) -> int:
        try:
            return self.var_names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def is_divisorial(self, i: int) -> bool:
        return i < self.m

    def with_divisor(self, divisor_vars) -> "Chart":
        return Chart(self.var_names, divisor_vars)

    def drop(self, names) -> "Chart":
        """Chart of the stratum where the given variables vanish."""
        names = set(names)
        return Chart(
            [v for v in self.var_names if v not in names],
            [v for v in self.divisor_vars if v not in names],
        )

    def to_json(self) -> dict:
        return {"vars": list(self.var_names), "divisor_vars": list(self.divisor_vars)}

    @classmethod
    def from_json(cls, obj) -> "Chart":
        return cls(obj["vars"], obj.get("divisor_vars", []))

    def __eq__(self, other):
        return (
            isinstance(other, Chart)
            and self.var_names == other.var_names
            and self.m == other.m
        )

    def __hash__(self):
        return hash((self.var_names, self.m))

    def __repr__(self):
        return f"Chart({list(self.var_names)}, divisor={list(self.divisor_vars)})"


def check_same(a: Chart, b: Chart) -> None:
    if a != b:
        raise ChartMismatch(f"{a!r} vs {b!r}")


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def masks_of_degree(d: int, k: int) -> list[int]:
    from itertools import combinations

    return [sum(1 << i for i in c) for c in combinations(range(d), k)]

"""Seeded random forms and polyvectors with small rational coefficients.

Coefficients are uniform over {-9..9} minus 0, divided by a uniform
{1..4}; monomials have total degree at most 3.
"""

from __future__ import annotations

import random
from itertools import combinations

from gmpy2 import mpq

from .algebra.chart import Chart
from .algebra.forms import LogForm, LogMultiVec
from .algebra.ratfunc import RatFunc


def random_coeff(rng: random.Random) -> mpq:
    num = rng.choice([k for k in range(-9, 10) if k])
    return mpq(num, rng.randint(1, 4))


def random_poly(rng: random.Random, chart: Chart, max_deg: int = 3, terms: int = 3):
    ring = chart.ring
    d = chart.dim
    out = {}
    for _ in range(terms):
        deg = rng.randint(0, max_deg)
        exp = [0] * d
        for _ in range(deg):
            if d:
                exp[rng.randrange(d)] += 1
        out[tuple(exp)] = random_coeff(rng)
    return ring.from_dict(out)


def random_graded(
    rng: random.Random,
    chart: Chart,
    degree: int,
    cls=LogForm,
    max_deg: int = 3,
    density: float = 0.6,
    holomorphic: bool = False,
):
    """Random element; ``holomorphic`` makes every dlog x_i carry a factor x_i."""
    comps = {}
    for c in combinations(range(chart.dim), degree):
        if rng.random() > density:
            continue
        mask = sum(1 << i for i in c)
        p = random_poly(rng, chart, max_deg)
        if holomorphic and cls is LogForm:
            for i in c:
                if i < chart.m:
                    p = p * chart.ring.gens[i]
        comps[mask] = RatFunc(p)
    return cls(chart, degree, comps)


def random_form(rng, chart, degree, **kw) -> LogForm:
    return random_graded(rng, chart, degree, LogForm, **kw)


def random_multivec(rng, chart, degree, **kw) -> LogMultiVec:
    return random_graded(rng, chart, degree, LogMultiVec, **kw)

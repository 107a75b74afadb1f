"""Acceptance gate.  Each test prints one PASS/FAIL line to the terminal."""

import random
import time
from math import comb

import pytest
import sympy

from logsymp.algebra import Chart, parse_form
from logsymp.algebra.ratfunc import RatFunc
from logsymp.complexes import cohomology, stalk_cohomology
from logsymp.complexes.special import (
    foliated_complex_cohomology,
    minor_log_homotopy_check,
    restrict_to_branches,
    simplicial_homotopy_check,
    simplicial_rho,
    theta_log_generator_check,
)
from logsymp.fixtures import FIXTURES, normal_form
from logsymp.hodge import HodgeDiamond, rotate_diamond, theta_cohomology_dims
from logsymp.poisson.cokernel import branch_span_check, image_span_equal
from logsymp.poisson.structure import duality_matrix, hypothesis_star_check, inverse, log_duality_verify, make_poisson
from logsymp.verify import identity_suite

from conftest import divisor_chart


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, elapsed, limit):
        ok = bool(ok) and elapsed < limit
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} ({elapsed:.2f}s, limit {limit}s)")
        assert ok

    return emit


def test_identity_suite(report):
    t = time.perf_counter()
    names = [f"normal-form-k{k}-n{n}" for n in (1, 2) for k in range(n + 1)] + ["toric-diagonal-n2"]
    ok = all(identity_suite(make_poisson(*FIXTURES[name]()), trials=100, seed=1).passed for name in names)
    report(1, "operator identities on 100 random forms", ok, time.perf_counter() - t, 60)


def test_log_duality(report):
    t = time.perf_counter()
    ok = True
    for make in FIXTURES.values():
        P = make_poisson(*make())
        ring = P.chart.ring
        for i in range(P.n + 1):
            ok &= log_duality_verify(P, i)
            inv = inverse(duality_matrix(P, i), RatFunc(ring.one), RatFunc(ring.zero))
            ok &= all(e.den == ring.one for row in inv for e in row)
    report(2, "log duality with polynomial inverse", ok, time.perf_counter() - t, 30)


def test_log_stalks(report):
    t = time.perf_counter()
    ok = True
    for d, m, W in ((2, 2, 4), (4, 2, 3)):
        rep = cohomology("log", divisor_chart(d, m), W)
        ok &= rep.at((0,) * d) == {p: comb(m, p) for p in range(d + 1)}
        ok &= all(s.dim == 0 for s in rep.slices if any(s.weight))
    report(3, "log complex stalk dims are binomial", ok, time.perf_counter() - t, 30)


def test_minor_log_exactness(report):
    t = time.perf_counter()
    ok = True
    for d in range(1, 5):
        chart = divisor_chart(d, d)
        # minor log forms start at weight (1,..,1), so also look past it
        for W in (4, d + 4):
            rep = cohomology("minor-log", chart, W)
            ok &= rep.is_zero()
            for w in {s.weight for s in rep.slices}:
                ok &= bool(minor_log_homotopy_check(chart, tuple(a - 1 for a in w)))
    report(4, "minor log complex is exact with a homotopy", ok, time.perf_counter() - t, 60)


def test_theta_log_matches_log(report):
    t = time.perf_counter()
    ok = True
    for n in (1, 2):
        for k in range(n + 1):
            chart, P = normal_form(k, n)
            W = 2 * n + 1
            ok &= cohomology("theta-log", chart, W, P).totals() == cohomology("log", chart, W).totals()
            ok &= all(c and ne for _, _, c, ne in theta_log_generator_check(chart, P))
    report(5, "theta-log complex matches log complex", ok, time.perf_counter() - t, 120)


def _x_psi_counts(W):
    # x1 * f * dlog x1 with f killed by d/dx2: one form per weight (a, 0), a >= 1
    x1, x2 = sympy.symbols("x1 x2")
    counts = {}
    for a in range(W + 1):
        for b in range(W + 1 - a):
            if a >= 1:
                f = x1 ** (a - 1) * x2**b
                counts[(a, b)] = int(sympy.diff(f, x2) == 0)
            else:
                counts[(a, b)] = 0
    return counts


def test_foliated_complex(report):
    t = time.perf_counter()
    chart = divisor_chart(2, 2)
    psi = parse_form("dlog(x1) + 7/3*dlog(x2)", chart)
    ok = hypothesis_star_check(chart, psi)[0]
    ok &= foliated_complex_cohomology(chart, psi, 4).is_zero()
    line = divisor_chart(2, 1)
    rep = foliated_complex_cohomology(line, parse_form("dlog(x1)", line), 4)
    h0 = {s.weight: s.dim for s in rep.slices if s.degree == 0}
    expected = _x_psi_counts(4)
    ok &= all(h0.get(w, 0) == c for w, c in expected.items())
    ok &= all(s.dim == 0 for s in rep.slices if s.degree > 0)
    report(6, "foliated complex", ok, time.perf_counter() - t, 30)


def test_simplicial_resolution(report):
    t = time.perf_counter()
    chart = divisor_chart(2, 2)
    ok = simplicial_homotopy_check(chart, 3)
    r = random.Random(11)
    for k in range(2):
        for _ in range(30):
            vec = {}
            for _ in range(5):
                e = tuple(r.randint(0, 3) for _ in range(2))
                vec[(e, r.randrange(4))] = r.randint(1, 9)
            piece = restrict_to_branches(chart, vec, k)
            ok &= simplicial_rho(chart, simplicial_rho(chart, piece)) == {}
    report(7, "simplicial resolution is exact", ok, time.perf_counter() - t, 30)


def test_theta_upper_stalks(report):
    t = time.perf_counter()
    chart = Chart(["x", "y"], ["x"])
    from logsymp.algebra import parse_multivec

    P = parse_multivec("x*D(x)/\\D(y)", chart)
    at_origin = stalk_cohomology("theta-upper", chart, P, 6).slices[0]
    off = stalk_cohomology("theta-upper", chart, P, 6, center={"x": 1}).slices[0]
    ok = (at_origin.degree, at_origin.dim, at_origin.stable) == (0, 0, True)
    ok &= (off.degree, off.dim, off.stable) == (0, 1, True)
    report(8, "upper theta complex stalks", ok, time.perf_counter() - t, 30)


def test_image_span(report):
    t = time.perf_counter()
    ok = True
    for make in FIXTURES.values():
        P = make_poisson(*make())
        for r in range(P.n + 1):
            ok &= image_span_equal(P, r, 3)
    for k in (1, 2):
        _, biv = normal_form(k, 2)
        P = make_poisson(biv.chart, biv)
        ok &= all(branch_span_check(P, 1, 3, branch) for branch in range(k))
    report(9, "image of the contraction map", ok, time.perf_counter() - t, 120)


def _random_diamond(r, n):
    N, top = 2 * n + 1, 2 * n
    h = [[None] * N for _ in range(N)]
    for p in range(N):
        for q in range(N):
            if h[p][q] is None:
                v = r.randint(0, 12)
                for a, b in ((p, q), (q, p), (top - p, top - q), (top - q, top - p)):
                    h[a][b] = v
    return HodgeDiamond(n, h)


def test_hodge_transforms(report):
    t = time.perf_counter()
    abelian = HodgeDiamond(1, [[comb(2, p) * comb(2, q) for q in range(3)] for p in range(3)])
    p1p1 = HodgeDiamond(1, [[1, 0, 0], [0, 2, 0], [0, 0, 1]])
    ok = theta_cohomology_dims(p1p1) == (0, 0, 4, 0, 0)
    ok &= theta_cohomology_dims(abelian) == (1, 4, 6, 4, 1)
    r = random.Random(5)
    for _ in range(20):
        H = _random_diamond(r, r.randint(0, 3))
        ok &= sum(theta_cohomology_dims(H)) == H.total()
        R = H.h
        for _ in range(4):
            R = rotate_diamond(R)
        ok &= R == H.h
        ok &= sorted(sum(rotate_diamond(H), ())) == sorted(sum(H.h, ()))
    report(10, "Hodge diamond transforms", ok, time.perf_counter() - t, 5)

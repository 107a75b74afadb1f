import random
from itertools import combinations

import pytest
from gmpy2 import mpq
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from logsymp.algebra import (
    Chart,
    LogForm,
    LogMultiVec,
    RatFunc,
    contract,
    ext_derivative,
    format_graded,
    parse_expr,
    parse_form,
    parse_multivec,
    parse_poly,
    schouten,
    translate_chart,
    wedge,
)
from logsymp.algebra.forms import contract_form, lie_poisson_operator, multidegree_decompose
from logsymp.errors import ChartMismatch, DegreeError, InvalidCenter, NonPolynomialCoefficients, ParseError
from logsymp.fixtures import non_poisson
from logsymp.random_forms import random_form, random_multivec

XY = Chart(["x", "y"], ["x"])
PLAIN3 = Chart(["x1", "x2", "x3"])
X12 = Chart(["x1", "x2"], ["x1"])

seeds = st.integers(min_value=0, max_value=2**32 - 1)


# ---------------------------------------------------------------- chart

def test_chart_puts_divisorial_variables_first():
    c = Chart(["y", "x2", "x10", "x1"], ["x10", "x2"])
    assert c.var_names == ("x2", "x10", "x1", "y")
    assert c.m == 2 and c.dim == 4


def test_chart_rejects_unknown_divisor():
    with pytest.raises(ValueError):
        Chart(["x"], ["z"])


def test_chart_json_round_trip():
    c = Chart(["x1", "y1", "x2", "y2"], ["x1"])
    assert Chart.from_json(c.to_json()) == c


# ---------------------------------------------------------------- ratfunc

def test_ratfunc_reduces_and_makes_denominator_monic():
    x = RatFunc.var(XY.ring, 0)
    f = (x * x - x) / (x.scale(2) - RatFunc.const(XY.ring, 2))
    assert f == x.scale(mpq(1, 2))


def test_ratfunc_holomorphic_at_origin():
    x = parse_poly("x", XY)
    one = RatFunc.const(XY.ring, 1)
    assert (one / (x + one)).is_holomorphic_at_origin()
    assert not (one / x).is_holomorphic_at_origin()


# ---------------------------------------------------------------- wedge

def test_wedge_of_dx_with_itself_vanishes():
    dx = parse_form("d(x1)", PLAIN3)
    assert not wedge(dx, dx)


def test_wedge_of_basis_covectors():
    assert wedge(parse_form("dlog(x)", XY), parse_form("d(y)", XY)) == parse_form("dlog(x)/\\d(y)", XY)


def test_wedge_expands_bilinearly():
    a = parse_form("x2*dlog(x1)", X12)
    b = parse_form("x1*d(x2)", X12)
    assert wedge(a, b) == parse_form("x1*x2*dlog(x1)/\\d(x2)", X12)


def test_wedge_rejects_other_chart():
    with pytest.raises(ChartMismatch):
        wedge(parse_form("d(x)", Chart(["x"])), parse_form("d(y)", XY))


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_wedge_associative_and_graded_commutative(seed):
    r = random.Random(seed)
    d = r.randint(1, 6)
    chart = Chart([f"x{i}" for i in range(1, d + 1)], [f"x{i}" for i in range(1, r.randint(0, d) + 1)])
    a, b, c = (random_form(r, chart, r.randint(0, min(3, d)), max_deg=2) for _ in range(3))
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
    sign = -1 if a.degree * b.degree % 2 else 1
    assert wedge(a, b) == wedge(b, a).scale(sign)


# ---------------------------------------------------------------- contraction

def test_contraction_normalization():
    P = parse_multivec("D(x1)/\\D(x2)", PLAIN3)
    assert contract(P, parse_form("d(x1)/\\d(x2)", PLAIN3)) == LogForm.scalar(PLAIN3, 1)


def test_contraction_of_dual_log_bases():
    P = parse_multivec("x*D(x)/\\D(y)", XY)
    assert contract(P, parse_form("dlog(x)/\\d(y)", XY)) == LogForm.scalar(XY, 1)


def test_partial_contraction():
    P = parse_multivec("D(x1)/\\D(x2)", PLAIN3)
    assert contract(P, parse_form("d(x1)/\\d(x2)/\\d(x3)", PLAIN3)) == parse_form("d(x3)", PLAIN3)


def test_contraction_rejects_excess_degree():
    P = parse_multivec("D(x1)/\\D(x2)", PLAIN3)
    with pytest.raises(DegreeError):
        contract(P, parse_form("d(x1)", PLAIN3))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_contraction_sign_table(d):
    """contract(u ^ v, w) == contract(v, contract(u, w)) on every basis triple."""
    chart = Chart([f"x{i}" for i in range(1, d + 1)])
    vecs = [LogMultiVec.basis(chart, 1 << i) for i in range(d)]
    for k in range(2, d + 1):
        for S in combinations(range(d), k):
            w = LogForm.basis(chart, sum(1 << i for i in S))
            for i in range(d):
                for j in range(d):
                    uv = wedge(vecs[i], vecs[j])
                    if not uv:
                        continue
                    assert contract(uv, w) == contract(vecs[j], contract(vecs[i], w))


def test_contract_form_pairs_with_top_power():
    P = parse_multivec("D(x1)/\\D(x2)", Chart(["x1", "x2"]))
    w = parse_form("d(x1)/\\d(x2)", Chart(["x1", "x2"]))
    assert contract_form(w, P) == LogMultiVec.scalar(Chart(["x1", "x2"]), 1)


# ---------------------------------------------------------------- d

def test_d_product_rule():
    assert ext_derivative(parse_form("x*d(y)", XY)) == parse_form("x*dlog(x)/\\d(y)", XY)


def test_dlog_is_closed():
    assert not ext_derivative(parse_form("dlog(x)", XY))


def test_d_of_log_form_with_polynomial_factor():
    w = parse_form("x1*x2*dlog(x1)", X12)
    assert ext_derivative(w) == parse_form("-x1*dlog(x1)/\\d(x2)", X12)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_d_squared_vanishes_including_rational_coefficients(seed):
    r = random.Random(seed)
    w = random_form(r, X12, r.randint(0, 1))
    x1 = parse_poly("x1", X12)
    w = w.scale(RatFunc.const(X12.ring, 1) / (x1 + RatFunc.const(X12.ring, r.randint(1, 3))))
    assert not ext_derivative(ext_derivative(w))


# ---------------------------------------------------------------- schouten

def test_schouten_constant_bivector():
    P = parse_multivec("D(x1)/\\D(x2)", PLAIN3)
    assert not schouten(P, P)


def test_schouten_normal_form_is_poisson():
    P = parse_multivec("x*D(x)/\\D(y)", XY)
    assert not schouten(P, P)


def test_schouten_non_poisson_example():
    chart, P = non_poisson()
    J = schouten(P, P)
    assert J.degree == 3 and list(J.comps) == [0b111]
    x3 = parse_poly("x3", chart)
    ratio = J.comps[0b111] / x3
    assert ratio.is_poly() and ratio.as_poly().is_ground and ratio


def test_schouten_non_poisson_matches_jacobiator():
    """Cyclic sum {x_a,{x_b,x_c}} computed from the bracket {f,g} = <P, df ^ dg>."""
    chart, P = non_poisson()
    xs = [parse_poly(v, chart) for v in chart.var_names]

    def bracket(f, g):
        from logsymp.algebra.forms import differential_of_function

        return contract(P, wedge(differential_of_function(chart, f), differential_of_function(chart, g))).comps.get(0, RatFunc.const(chart.ring, 0))

    jac = bracket(xs[0], bracket(xs[1], xs[2])) + bracket(xs[1], bracket(xs[2], xs[0])) + bracket(xs[2], bracket(xs[0], xs[1]))
    J = schouten(P, P).comps[0b111]
    assert jac and (J / jac).is_poly() and (J / jac).as_poly().is_ground


def test_schouten_rejects_rational_coefficients():
    x = parse_poly("x", XY)
    P = LogMultiVec(XY, 2, {0b11: RatFunc.const(XY.ring, 1) / (x + RatFunc.const(XY.ring, 1))})
    with pytest.raises(NonPolynomialCoefficients):
        schouten(P, P)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_schouten_graded_symmetry_and_jacobi(seed):
    r = random.Random(seed)
    chart = PLAIN3
    P, Q, R = (random_multivec(r, chart, r.randint(1, 2), max_deg=2) for _ in range(3))
    p, q, s = P.degree - 1, Q.degree - 1, R.degree - 1
    assert schouten(P, Q) == schouten(Q, P).scale(-((-1) ** (p * q)))
    jac = (
        schouten(P, schouten(Q, R)).scale((-1) ** (p * s))
        + schouten(Q, schouten(R, P)).scale((-1) ** (q * p))
        + schouten(R, schouten(P, Q)).scale((-1) ** (s * q))
    )
    assert not jac


# ---------------------------------------------------------------- Brylinski operator

def test_lie_poisson_operator_on_functions():
    P = parse_multivec("x*D(x)/\\D(y)", XY)
    assert not lie_poisson_operator(P, parse_form("x*y+3", XY))


def test_lie_poisson_operator_on_volume():
    c = Chart(["x", "y"])
    P = parse_multivec("D(x)/\\D(y)", c)
    assert not lie_poisson_operator(P, parse_form("d(x)/\\d(y)", c))


def test_lie_poisson_operator_squares_to_zero():
    r = random.Random(1)
    P = parse_multivec("x*D(x)/\\D(y)", XY)
    for _ in range(100):
        w = random_form(r, XY, r.randint(0, 2))
        assert not lie_poisson_operator(P, lie_poisson_operator(P, w))


def test_lie_poisson_operator_square_nonzero_without_jacobi():
    chart, P = non_poisson()
    w = parse_form("x1*x2*x3*d(x1)/\\d(x2)/\\d(x3)", chart)
    assert lie_poisson_operator(P, lie_poisson_operator(P, w))


# ---------------------------------------------------------------- multidegrees

def test_multidegree_single_monomial():
    assert multidegree_decompose(parse_form("x*dlog(x)", XY)) == [((1, 0), parse_form("x*dlog(x)", XY))]


def test_multidegree_two_components():
    w = parse_form("d(x1)+x2*dlog(x1)", X12)
    parts = dict(multidegree_decompose(w))
    assert set(parts) == {(1, 0), (0, 1)}


def test_multidegree_constant_log_form():
    w = parse_form("dlog(x1)", X12)
    assert multidegree_decompose(w) == [((0, 0), w)]


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_multidegree_pieces_recompose_and_d_preserves_weight(seed):
    r = random.Random(seed)
    w = random_form(r, X12, r.randint(0, 2))
    parts = multidegree_decompose(w)
    total = LogForm.zero(X12, w.degree)
    for wt, piece in parts:
        total = total + piece
        dp = ext_derivative(piece)
        assert all(k == wt for k, _ in multidegree_decompose(dp))
    assert total == w


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_constant_contraction_never_raises_weight(seed):
    r = random.Random(seed)
    w = random_form(r, X12, 2)
    P = parse_multivec("3*x1*D(x1)/\\D(x2)", X12)
    for wt, piece in multidegree_decompose(w):
        for wt2, _ in multidegree_decompose(contract(P, piece)):
            assert all(a <= b for a, b in zip(wt2, wt))


# ---------------------------------------------------------------- translation

def test_translate_dlog():
    out = translate_chart(parse_form("dlog(x)", Chart(["x"], ["x"])), {"x": 1})
    assert out.chart.m == 0
    assert out == parse_form("1/(x+1)*d(x)", out.chart)


def test_translate_by_zero_is_identity():
    w = parse_form("x*dlog(x)", Chart(["x"], ["x"]))
    assert translate_chart(w, {"x": 0}) == w


def test_translate_log_vector_field():
    out = translate_chart(parse_multivec("x*D(x)", Chart(["x"], ["x"])), [1])
    assert out == parse_multivec("(x+1)*D(x)", out.chart)


def test_translate_rejects_pole_at_new_origin():
    c = Chart(["x", "y"])
    w = parse_form("1/(x+1)*d(y)", c)
    with pytest.raises(InvalidCenter):
        translate_chart(w, {"x": -1})


# ---------------------------------------------------------------- parser

def test_parse_log_basis_term():
    P = parse_multivec("x1*D(x1)^D(y1)", Chart(["x1", "y1"], ["x1"]))
    assert P.comps == {0b11: RatFunc.const(P.chart.ring, 1)}


def test_parse_error_column():
    with pytest.raises(ParseError) as e:
        parse_expr("x1*^", Chart(["x1"]))
    assert e.value.column == 4


def test_power_of_scalar():
    assert parse_poly("(x+y)^2", XY) == parse_poly("x^2+2*x*y+y^2", XY)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_format_parse_round_trip(seed):
    r = random.Random(seed)
    make, parse = r.choice([(random_form, parse_form), (random_multivec, parse_multivec)])
    g = make(r, XY, r.randint(0, 2))
    assume(g)
    assert parse(format_graded(g), XY) == g

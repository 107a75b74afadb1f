import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logsymp.errors import InvalidDiamond
from logsymp.hodge import (
    HodgeDiamond,
    dihelical_dims,
    dihelical_quotients,
    rg_fano_constraint_report,
    rotate_diamond,
    row_sums,
    theta_cohomology_dims,
    theta_quotients,
)

ABELIAN = HodgeDiamond(1, [[1, 2, 1], [2, 4, 2], [1, 2, 1]])
P1P1 = HodgeDiamond(1, [[1, 0, 0], [0, 2, 0], [0, 0, 1]])
ZERO = HodgeDiamond(1, [[0] * 3] * 3)


@st.composite
def diamonds(draw, max_n=3):
    n = draw(st.integers(0, max_n))
    N, top = 2 * n + 1, 2 * n
    h = [[None] * N for _ in range(N)]
    for p in range(N):
        for q in range(N):
            if h[p][q] is None:
                v = draw(st.integers(0, 20))
                for a, b in ((p, q), (q, p), (top - p, top - q), (top - q, top - p)):
                    h[a][b] = v
    return HodgeDiamond(n, h)


def _add(A, B):
    return HodgeDiamond(A.n, [[x + y for x, y in zip(r, s)] for r, s in zip(A.h, B.h)])


# ---------------------------------------------------------------- examples

def test_theta_dims_abelian_surface():
    assert theta_cohomology_dims(ABELIAN) == (1, 4, 6, 4, 1)


def test_theta_dims_p1_times_p1():
    assert theta_cohomology_dims(P1P1) == (0, 0, 4, 0, 0)


def test_zero_diamond():
    assert theta_cohomology_dims(ZERO) == (0,) * 5
    assert dihelical_dims(ZERO) == ((0,) * 5, (0,) * 5)


def test_theta_quotients_abelian_surface():
    # degree 1: h^{1,0} and h^{2,1}
    assert theta_quotients(ABELIAN)[1] == [2, 2]
    assert theta_quotients(ABELIAN)[2] == [1, 4, 1]


def test_hybrid_dims():
    assert dihelical_dims(ABELIAN) == ((1, 4, 6, 4, 1), (1, 4, 6, 4, 1))
    assert dihelical_dims(P1P1) == ((0, 0, 3, 0, 1), (1, 0, 3, 0, 0))


def test_hybrid_quotients_use_both_halves():
    ed, de = dihelical_quotients(P1P1)
    # degree n is index 2; a runs over 0..2, form degree n + |n - a| or n - |n - a|
    assert ed[2] == [P1P1.get(2, 2), P1P1.get(1, 1), P1P1.get(2, 0)]
    assert de[2] == [P1P1.get(0, 2), P1P1.get(1, 1), P1P1.get(0, 0)]


def test_point():
    pt = HodgeDiamond(0, [[1]])
    assert theta_cohomology_dims(pt) == (1,)
    assert dihelical_dims(pt) == ((1,), (1,))


# ---------------------------------------------------------------- validation

@pytest.mark.parametrize(
    "n,h",
    [
        (1, [[1, 1, 0], [0, 2, 0], [0, 0, 1]]),  # not symmetric
        (1, [[1, 0, 0], [0, 2, 0], [0, 0, 2]]),  # Serre fails
        (1, [[1, 0], [0, 1]]),
        (1, [[1, 0, 0], [0, -2, 0], [0, 0, 1]]),
        (1, [[1, 0, 0], [0, 0.5, 0], [0, 0, 1]]),
        (-1, []),
        (1, 7),
    ],
)
def test_invalid_diamonds(n, h):
    with pytest.raises(InvalidDiamond):
        HodgeDiamond(n, h)


# ---------------------------------------------------------------- rotation

def test_rotation_is_clockwise():
    t = [[1, 2, 3], [4, 5, 6], [7, 8, 9]]
    assert rotate_diamond(t) == ((7, 4, 1), (8, 5, 2), (9, 6, 3))


def test_rotated_rows_on_examples():
    for H in (ABELIAN, P1P1, ZERO):
        assert row_sums(rotate_diamond(H)) == theta_cohomology_dims(H)


@settings(max_examples=60, deadline=None)
@given(diamonds())
def test_rotation_has_period_four(H):
    t = H.h
    seen = [t]
    for _ in range(4):
        t = rotate_diamond(t)
        seen.append(t)
    assert seen[4] == H.h
    assert sorted(x for r in seen[1] for x in r) == sorted(x for r in H.h for x in r)


@settings(max_examples=60, deadline=None)
@given(diamonds())
def test_rotated_rows_reproduce_theta_dims(H):
    assert row_sums(rotate_diamond(H)) == theta_cohomology_dims(H)


# ---------------------------------------------------------------- sums and linearity

@settings(max_examples=60, deadline=None)
@given(diamonds())
def test_theta_dims_exhaust_the_diamond(H):
    assert sum(theta_cohomology_dims(H)) == H.total()
    ed, de = dihelical_dims(H)
    n = H.n
    # every column q is reached once for each a, so each pass sums a whole row
    assert sum(ed) == sum(sum(H.h[n + abs(n - a)]) for a in range(H.size))
    assert sum(de) == sum(sum(H.h[n - abs(n - a)]) for a in range(H.size))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_transforms_are_linear(data):
    A = data.draw(diamonds(max_n=2))
    B = data.draw(diamonds(max_n=2).filter(lambda D: D.n == A.n))
    S = _add(A, B)
    plus = lambda u, v: tuple(x + y for x, y in zip(u, v))
    assert theta_cohomology_dims(S) == plus(theta_cohomology_dims(A), theta_cohomology_dims(B))
    for s, a, b in zip(dihelical_dims(S), dihelical_dims(A), dihelical_dims(B)):
        assert s == plus(a, b)


# ---------------------------------------------------------------- Fano constraints

def test_fano_constraint_holds_on_p1_times_p1():
    assert rg_fano_constraint_report(P1P1, 0).consistent


def test_fano_constraint_fails_on_abelian_surface():
    rep = rg_fano_constraint_report(ABELIAN, 0)
    assert not rep.consistent and rep.checks == ((0, 1, False),)


def test_fano_constraint_vacuous():
    rep = rg_fano_constraint_report(ABELIAN, -1)
    assert rep.consistent and rep.checks == ()

"""The delta family, bonding maps and the chain-map squares between them.

Notation: Theta^p is Omega^{2n-p}.  The MdP operator on Omega^{n+i} is
delta_i = i d iota - (i - 1) iota d, which is delta_{lam, j} with lam = -n
and j = n + i.  Powers of the bivector are ordinary wedge powers.
"""

from __future__ import annotations

from gmpy2 import mpq

from ..algebra.forms import LogForm, ext_derivative, iota, lie_poisson_operator
from ..errors import DegreeError
from .structure import PoissonStructure


def _d_iota(Pi, w):
    return ext_derivative(iota(Pi, w)) if w.degree >= 2 else LogForm.zero(w.chart, max(w.degree - 1, 0))


def _iota_d(Pi, w):
    return iota(Pi, ext_derivative(w)) if w.degree >= 1 else LogForm.zero(w.chart, max(w.degree - 1, 0))


def delta_lambda(Pi, lam, j: int, w: LogForm) -> LogForm:
    """(j + lam) d iota - (j + lam - 1) iota d on a j-form."""
    if w.comps and w.degree != j:
        raise DegreeError(f"expected a {j}-form, got degree {w.degree}")
    lam = mpq(lam)
    a = _d_iota(Pi, w).scale(j + lam) if j + lam else LogForm.zero(w.chart, max(j - 1, 0))
    b = _iota_d(Pi, w).scale(j + lam - 1) if j + lam - 1 else LogForm.zero(w.chart, max(j - 1, 0))
    return a - b


def delta_mdp(P: PoissonStructure, lam, j: int, w: LogForm) -> LogForm:
    return delta_lambda(P.bivector, lam, j, w)


def delta_index(P: PoissonStructure, i: int, w: LogForm) -> LogForm:
    """delta_i on Omega^{n+i}."""
    return delta_lambda(P.bivector, -P.n, P.n + i, w)


def theta_differential(P: PoissonStructure, p: int, w: LogForm) -> LogForm:
    """Differential Theta^p -> Theta^{p+1}."""
    return delta_index(P, P.n - p, w)


def brylinski(P: PoissonStructure, w: LogForm) -> LogForm:
    return lie_poisson_operator(P.bivector, w)


def iota_power(P: PoissonStructure, k: int, w: LogForm) -> LogForm:
    return iota(P.power(k), w) if k else w


def bonding_pi(P: PoissonStructure, p: int, w: LogForm) -> LogForm:
    """pi: Theta^p = Omega^{2n-p} -> Omega^p for 0 <= p <= n."""
    if not 0 <= p <= P.n:
        raise DegreeError(f"pi is defined for 0 <= p <= {P.n}")
    return iota_power(P, P.n - p, w)


def bonding_pi_prime(P: PoissonStructure, p: int, w: LogForm) -> LogForm:
    """pi': Omega^p -> Theta^p = Omega^{2n-p} for n <= p <= 2n."""
    if not P.n <= p <= 2 * P.n:
        raise DegreeError(f"pi' is defined for {P.n} <= p <= {2 * P.n}")
    return iota_power(P, p - P.n, w)


def commutation_sides(P: PoissonStructure, m: int, w: LogForm):
    """Both sides of the two commutation identities.

    d iota_{Pi^m} = iota_{Pi^{m-1}} (m d iota - (m-1) iota d)
    iota_{Pi^m} d = (m iota d - (m-1) d iota) iota_{Pi^{m-1}}
    """
    Pi = P.bivector
    lhs1 = ext_derivative(iota_power(P, m, w))
    inner = _d_iota(Pi, w).scale(m) - _iota_d(Pi, w).scale(m - 1)
    rhs1 = iota_power(P, m - 1, inner)
    lhs2 = iota_power(P, m, ext_derivative(w))
    u = iota_power(P, m - 1, w)
    rhs2 = _iota_d(Pi, u).scale(m) - _d_iota(Pi, u).scale(m - 1)
    return (lhs1, rhs1), (lhs2, rhs2)


def verify_commutation(P: PoissonStructure, m: int, w: LogForm) -> bool:
    if not 1 <= m <= P.n:
        raise DegreeError(f"m must lie in 1..{P.n}")
    (a, b), (c, e) = commutation_sides(P, m, w)
    return a == b and c == e


# -------------------------------------------------------------------------
# hybrid complexes

def ed_form_degree(n: int, i: int) -> int:
    return n - i if i <= 0 else n + i


def de_form_degree(n: int, i: int) -> int:
    return n + i if i <= 0 else n - i


def ed_differential(P: PoissonStructure, i: int, w: LogForm) -> LogForm:
    """delta while the form degree falls (i < 0), then d."""
    n = P.n
    if i < 0:
        return delta_index(P, -i, w)
    return ext_derivative(w)


def de_differential(P: PoissonStructure, i: int, w: LogForm) -> LogForm:
    """d while the form degree rises (i < 0), then delta."""
    if i < 0:
        return ext_derivative(w)
    return delta_index(P, -i, w)


def bonding_hybrid(P: PoissonStructure, i: int, w: LogForm) -> LogForm:
    return iota_power(P, abs(i), w)


def square_defects(P: PoissonStructure, w: LogForm) -> list[tuple[str, int, LogForm]]:
    """Every chain-map square whose source has the degree of ``w``.

    Returns ``(name, index, defect)`` with ``defect == 0`` when the square
    commutes.
    """
    n, k = P.n, w.degree
    out = []
    p = 2 * n - k
    if 0 <= p < n:
        lhs = ext_derivative(bonding_pi(P, p, w))
        rhs = bonding_pi(P, p + 1, theta_differential(P, p, w))
        out.append(("pi", p, lhs - rhs))
    if n <= k < 2 * n:
        lhs = theta_differential(P, k, bonding_pi_prime(P, k, w))
        rhs = bonding_pi_prime(P, k + 1, ext_derivative(w))
        out.append(("pi_prime", k, lhs - rhs))
    for i in range(-n, n):
        if ed_form_degree(n, i) != k:
            continue
        lhs = de_differential(P, i, bonding_hybrid(P, i, w))
        rhs = bonding_hybrid(P, i + 1, ed_differential(P, i, w))
        out.append(("hybrid", i, lhs - rhs))
    return out

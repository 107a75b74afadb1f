"""Seeded identity suites for a Poisson structure."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from .algebra.forms import LogForm
from .algebra.parser import format_graded
from .errors import NotClosed
from .poisson.operators import brylinski, delta_lambda, square_defects, verify_commutation
from .poisson.structure import PoissonStructure, psi_form, verify_phi_powers
from .random_forms import random_form


@dataclass
class IdentityResult:
    name: str
    passed: bool = True
    checked: int = 0
    witness: str | None = None

    def record(self, ok: bool, w: LogForm | None = None) -> None:
        self.checked += 1
        if not ok and self.passed:
            self.passed = False
            self.witness = format_graded(w) if w is not None else "deterministic check"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked, "witness": self.witness}


@dataclass
class SuiteReport:
    seed: int
    trials: int
    results: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "warnings": self.warnings,
            "identities": [r.to_json() for r in self.results],
        }


def _lam_name(lam) -> str:
    return f"delta_square[lambda={mpq(lam)}]"


def identity_suite(P: PoissonStructure, trials: int = 50, seed: int = 0) -> SuiteReport:
    """Random-form checks of every square-zero, commutation and chain-map
    identity, plus the deterministic Phi-power and psi-closedness checks."""
    rng = random.Random(seed)
    n, chart = P.n, P.chart
    top = 2 * n
    lams = [-n, 0, mpq(1, 2)]
    res = {"brylinski_square": IdentityResult("brylinski_square")}
    for lam in lams:
        res[_lam_name(lam)] = IdentityResult(_lam_name(lam))
    for m in range(1, n + 1):
        res[f"commutation[m={m}]"] = IdentityResult(f"commutation[m={m}]")
    res["bonding_squares"] = IdentityResult("bonding_squares")

    for _ in range(trials):
        for k in range(top + 1):
            w = random_form(rng, chart, k)
            res["brylinski_square"].record(not brylinski(P, brylinski(P, w)), w)
            if k >= 1:
                for lam in lams:
                    once = delta_lambda(P.bivector, lam, k, w)
                    twice = delta_lambda(P.bivector, lam, k - 1, once)
                    res[_lam_name(lam)].record(not twice, w)
            for m in range(1, n + 1):
                res[f"commutation[m={m}]"].record(verify_commutation(P, m, w), w)
            for _, _, defect in square_defects(P, w):
                res["bonding_squares"].record(not defect, w)

    out = SuiteReport(seed, trials, list(res.values()))
    if trials == 0:
        out.warnings.append("no trials requested; random identities hold vacuously")
    if P.log_symplectic and P.has_phi:
        phi = IdentityResult("phi_powers")
        for i in range(n + 1):
            phi.record(verify_phi_powers(P, i))
        psi = IdentityResult("psi_closed")
        for i in range(chart.m):
            try:
                psi_form(P, i)
                psi.record(True)
            except NotClosed as exc:
                psi.record(False)
                psi.witness = str(exc)
        out.results += [phi, psi]
    else:
        out.warnings.append("no holomorphic log-symplectic form; Phi checks skipped")
    return out

"""Poisson data derived from a bivector and the operators built from it."""

from .cokernel import (
    branch_span_check,
    c_cokernel_dims,
    image_pi_generators,
    image_span_equal,
    kernel_foliation_check,
    pullback_to_stratum,
)
from .operators import (
    bonding_pi,
    bonding_pi_prime,
    brylinski,
    delta_index,
    delta_lambda,
    square_defects,
    theta_differential,
    verify_commutation,
)
from .structure import (
    PoissonStructure,
    hypothesis_star_check,
    log_duality_verify,
    make_poisson,
    psi_form,
    rg_check,
    verify_phi_powers,
)

__all__ = [
    "PoissonStructure",
    "bonding_pi",
    "bonding_pi_prime",
    "branch_span_check",
    "brylinski",
    "c_cokernel_dims",
    "delta_index",
    "delta_lambda",
    "hypothesis_star_check",
    "image_pi_generators",
    "image_span_equal",
    "kernel_foliation_check",
    "log_duality_verify",
    "make_poisson",
    "psi_form",
    "pullback_to_stratum",
    "rg_check",
    "square_defects",
    "theta_differential",
    "verify_commutation",
    "verify_phi_powers",
]

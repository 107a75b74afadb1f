"""Complexes of forms and their cohomology."""

from .engine import (
    CohomologyReport,
    GradedSliceComplex,
    SliceResult,
    build_complex,
    cohomology,
    slice_cohomology,
    stalk_cohomology,
)
from .families import canonical_name, family_spec
from .grading import GradingPlan, plan_grading

__all__ = [
    "CohomologyReport",
    "GradedSliceComplex",
    "GradingPlan",
    "SliceResult",
    "build_complex",
    "canonical_name",
    "cohomology",
    "family_spec",
    "plan_grading",
    "slice_cohomology",
    "stalk_cohomology",
]

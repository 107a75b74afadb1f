"""Exact computations for log symplectic Poisson structures."""

"""Seed derivation and statistics shared by experiments."""

from .seeding import derive_seed, derive_seed_bits
from .stats import binomial_sigma, chi_square, fitted_constant, within_tolerance

__all__ = [
    "derive_seed",
    "derive_seed_bits",
    "binomial_sigma",
    "chi_square",
    "fitted_constant",
    "within_tolerance",
]

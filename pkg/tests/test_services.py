"""Tests for seed derivation and the statistics helpers."""

import math

import pytest

from locality_lab.services import (
    binomial_sigma,
    chi_square,
    derive_seed,
    derive_seed_bits,
    fitted_constant,
    within_tolerance,
)


def test_derive_seed_is_deterministic():
    """Test that sub-seeds depend only on (master, module, index)."""
    assert derive_seed(7, "localize", 0) == derive_seed(7, "localize", 0)
    assert derive_seed(7, "localize", 0) != derive_seed(7, "localize", 1)
    assert derive_seed(7, "localize", 0) != derive_seed(7, "run-lca", 0)
    assert derive_seed(7, "localize", 0) != derive_seed(8, "localize", 0)
    assert 0 <= derive_seed(2 ** 600, "x") < 2 ** 64


def test_derive_seed_rejects_negative_master():
    with pytest.raises(ValueError):
        derive_seed(-1, "x")
    with pytest.raises(ValueError):
        derive_seed_bits(1, "x", 0, -3)


@pytest.mark.parametrize("bits", [1, 10, 64, 100, 200])
def test_derive_seed_bits_width(bits):
    value = derive_seed_bits(5, "kwise", 2, bits)
    assert 0 <= value < 2 ** bits


def test_derive_seed_bits_blocks():
    assert derive_seed_bits(5, "kwise", 0, 0) == 0
    assert derive_seed_bits(5, "kwise", 0, 64) == derive_seed(5, "kwise#0", 0)
    # the top 64 bits of a longer seed are the first block
    assert derive_seed_bits(5, "kwise", 0, 128) >> 64 == derive_seed(5, "kwise#0", 0)


def test_binomial_sigma_and_tolerance():
    assert binomial_sigma(0.5, 100) == pytest.approx(0.05)
    assert binomial_sigma(1.5, 10) == 0.0
    with pytest.raises(ValueError):
        binomial_sigma(0.5, 0)

    # σ at the bound 0.1 over 100 trials is 0.03
    assert within_tolerance(0.2, 0.1, 100)
    assert not within_tolerance(0.3, 0.1, 100)


def test_fitted_constant():
    assert fitted_constant({10: 0.1, 20: 0.1}) == pytest.approx(2.0)
    assert fitted_constant({}) == 0.0


def test_chi_square():
    """Test the Pearson statistic after rescaling expected counts."""
    stat, p = chi_square([10, 10], [1, 1])
    assert stat == pytest.approx(0.0)
    assert p == pytest.approx(1.0)

    stat, p = chi_square([20, 0], [1, 1])
    assert stat == pytest.approx(20.0)
    assert p < 0.001


def test_chi_square_edge_cases():
    assert chi_square([5, 1], [0, 1]) == (math.inf, 0.0)
    assert chi_square([0, 4], [0, 1]) == (0.0, 1.0)
    with pytest.raises(ValueError):
        chi_square([1, 2], [1])
    with pytest.raises(ValueError):
        chi_square([], [])

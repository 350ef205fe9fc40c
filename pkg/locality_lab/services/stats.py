"""Small statistics helpers for failure-rate and distribution reports."""

from __future__ import annotations

import math
from typing import Mapping, Sequence, Tuple

import numpy as np
from scipy import stats


def binomial_sigma(p: float, trials: int) -> float:
    """Standard deviation of the empirical rate of `trials` Bernoulli(p) draws."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    p = min(max(p, 0.0), 1.0)
    return math.sqrt(p * (1.0 - p) / trials)


def within_tolerance(rate: float, bound: float, trials: int, sigmas: float = 4.0) -> bool:
    """True if `rate` <= bound + sigmas·σ with σ taken at the bound."""
    return rate <= bound + sigmas * binomial_sigma(bound, trials)


def fitted_constant(rates: Mapping[int, float]) -> float:
    """Smallest c with rate(n) <= c/n for every measured n."""
    return max((rate * n for n, rate in rates.items()), default=0.0)


def chi_square(observed: Sequence[int], expected: Sequence[float]) -> Tuple[float, float]:
    """
    Pearson statistic and p-value; expected counts are rescaled to the observed total.

    Cells with zero expectation must have zero observations.
    """
    obs = np.asarray(observed, dtype=float)
    exp = np.asarray(expected, dtype=float)
    if obs.shape != exp.shape or obs.size == 0:
        raise ValueError("observed and expected counts must be non-empty and aligned")
    if np.any(obs[exp == 0] > 0):
        return math.inf, 0.0
    keep = exp > 0
    obs, exp = obs[keep], exp[keep] * obs.sum() / exp[keep].sum()
    if obs.size == 1:
        return 0.0, 1.0
    result = stats.chisquare(obs, exp)
    return float(result.statistic), float(result.pvalue)

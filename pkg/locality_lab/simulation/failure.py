"""Failure bound of the relabelling simulation and its empirical estimate."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional

from locality_lab.engine.base import ProbeAlgorithm
from locality_lab.graphs.core import LabeledGraph
from locality_lab.permutations.base import PermutationFamily
from locality_lab.services.seeding import derive_seed_bits
from locality_lab.services.stats import binomial_sigma

from .world import HSpec, VirtualWorld, discovered_bound, simulate_query


@dataclass(frozen=True)
class FailureBound:
    """
    k·n/(N−k) bound on a query failing, plus n²/N when k <= n/2.

    Values are exact fractions so that huge N (e.g. n^{log n}) stays exact.
    """

    n: int
    N: int
    k: int
    value: Fraction
    simplified: Optional[Fraction]

    def __float__(self) -> float:
        return float(self.value)

    def to_record(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "N": str(self.N) if self.N.bit_length() > 53 else self.N,
            "k": self.k,
            "bound": float(self.value),
            "bound_exact": str(self.value),
            "simplified": None if self.simplified is None else float(self.simplified),
        }


def failure_bound(n: int, N: int, delta: int, t: int) -> FailureBound:
    """
    Probability bound for one simulated query to fail.

    Raises:
        ValueError: If k = 1 + (Δ+1)t >= N
    """
    k = discovered_bound(delta, t)
    if k >= N:
        raise ValueError(f"discovered-set bound k={k} must be below N={N}")
    value = Fraction(k * n, N - k)
    simplified = Fraction(n * n, N) if 2 * k <= n else None
    return FailureBound(n=n, N=N, k=k, value=value, simplified=simplified)


def superpolynomial_domain(n: int) -> int:
    """N = n^{ceil(log2 n)}, the identifier space of the non-constructive regime."""
    return n ** max(1, math.ceil(math.log2(max(n, 2))))


@dataclass
class FailureEstimate:
    trials: int
    pairs: int
    failures: int
    bound: FailureBound
    sigmas: float
    family: str

    @property
    def rate(self) -> float:
        return self.failures / self.pairs if self.pairs else 0.0

    @property
    def tolerance(self) -> float:
        return float(self.bound.value) + self.sigmas * binomial_sigma(float(self.bound.value), max(self.pairs, 1))

    @property
    def within_bound(self) -> bool:
        return self.rate <= self.tolerance

    def to_record(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "trials": self.trials,
            "pairs": self.pairs,
            "failures": self.failures,
            "rate": self.rate,
            "tolerance": self.tolerance,
            "within_bound": self.within_bound,
            **{f"bound_{key}": val for key, val in self.bound.to_record().items()},
        }


def estimate_failure(
    g: LabeledGraph,
    h: HSpec,
    N: int,
    alg: ProbeAlgorithm,
    family: PermutationFamily,
    trials: int,
    seed: int = 0,
    queries: Optional[Iterable[int]] = None,
    budget: Optional[int] = None,
    sigmas: float = 4.0,
    first_trial: int = 0,
) -> FailureEstimate:
    """
    Fraction of (query, trial) pairs whose simulation fails, with a fresh π per trial.

    Trial i samples π with the sub-seed derive_seed_bits(seed, "estimate-failure", i, bits);
    `first_trial` offsets i so that chunks of one long estimate can run apart
    and be merged with merge_estimates.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if family.size != N:
        raise ValueError(f"family is over [{family.size}], not [{N}]")
    t = budget if budget is not None else alg.complexity(N)
    qs = list(queries) if queries is not None else list(range(g.n))
    failures = 0
    for i in range(first_trial, first_trial + trials):
        pi = family.sample(derive_seed_bits(seed, "estimate-failure", i, max(family.seed_bits, 1)))
        world = VirtualWorld(g, h, N, pi)
        for v in qs:
            if not simulate_query(world, alg, v, budget=t).success:
                failures += 1
    return FailureEstimate(
        trials=trials,
        pairs=trials * len(qs),
        failures=failures,
        bound=failure_bound(g.n, N, g.delta, t),
        sigmas=sigmas,
        family=family.family,
    )


def merge_estimates(parts: Iterable[FailureEstimate]) -> FailureEstimate:
    """Combine chunked estimates of one experiment; bounds must agree."""
    parts = list(parts)
    if not parts:
        raise ValueError("nothing to merge")
    first = parts[0]
    if any(p.bound != first.bound or p.family != first.family for p in parts):
        raise ValueError("estimates come from different experiments")
    return FailureEstimate(
        trials=sum(p.trials for p in parts),
        pairs=sum(p.pairs for p in parts),
        failures=sum(p.failures for p in parts),
        bound=first.bound,
        sigmas=first.sigmas,
        family=first.family,
    )

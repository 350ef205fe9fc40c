"""
Constructive localization of a stateless LCA.

The LCA runs on G ∪ H with N = n^4 identifiers, π drawn from the k-wise
Feistel family with k = 1 + (Δ+1)·t(N) and ε = 1/(n·N^{4k}). Every
successful query then probes only G vertices within distance t(N) of the
query, and those probes induce a connected subgraph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

from locality_lab.engine.base import ProbeAlgorithm
from locality_lab.errors import LocalizationFailure, ScaleGuardError
from locality_lab.graphs.core import LabeledGraph
from locality_lab.graphs.measures import distances_from, induces_connected
from locality_lab.permutations import make_family
from locality_lab.permutations.kwise import ceil_log2_inverse
from locality_lab.services.seeding import derive_seed_bits

from .failure import FailureBound, failure_bound
from .world import HSpec, QueryOutcome, VirtualWorld, discovered_bound, simulate_query

SEED_OVERHEAD_CONSTANT = 132
DEFAULT_GUARD_CONSTANT = 64.0


def localizer_domain(n: int) -> int:
    return n ** 4


def default_epsilon(n: int, N: int, k: int) -> Fraction:
    return Fraction(1, n * N ** (4 * k))


def probe_locality_certificate(g_probed: Iterable[int], g: LabeledGraph, v: int, t: int) -> bool:
    """True iff every probed G vertex is within distance t of v and {v} ∪ probed is connected."""
    probed = set(g_probed)
    dist = distances_from(g, v, limit=t)
    if any(u not in dist for u in probed):
        return False
    return induces_connected(g, probed | {v})


@dataclass
class LocalityCertificate:
    vertex: int
    radius_ok: bool
    connected: bool
    probes_ok: bool

    @property
    def passed(self) -> bool:
        return self.radius_ok and self.connected and self.probes_ok

    def to_record(self) -> Dict[str, Any]:
        return {
            "vertex": self.vertex,
            "radius_ok": self.radius_ok,
            "connected": self.connected,
            "probes_ok": self.probes_ok,
            "passed": self.passed,
        }


def certify(outcome: QueryOutcome, g: LabeledGraph, t: int) -> LocalityCertificate:
    probed = set(outcome.g_probed)
    dist = distances_from(g, outcome.vertex, limit=t)
    return LocalityCertificate(
        vertex=outcome.vertex,
        radius_ok=all(u in dist for u in probed),
        connected=induces_connected(g, probed | {outcome.vertex}),
        probes_ok=outcome.probes <= t,
    )


@dataclass(frozen=True)
class SeedAccounting:
    """Total seed = s(N) + family bits, against s(N) + C·t·Δ·log n."""

    algorithm_bits: int
    family_bits: int
    t: int
    delta: int
    n: int
    constant: int = SEED_OVERHEAD_CONSTANT

    @property
    def total_bits(self) -> int:
        return self.algorithm_bits + self.family_bits

    @property
    def allowed_bits(self) -> int:
        log_n = max(1, math.ceil(math.log2(max(self.n, 2))))
        return self.algorithm_bits + self.constant * max(self.t, 1) * max(self.delta, 2) * log_n

    @property
    def within_formula(self) -> bool:
        return self.total_bits <= self.allowed_bits

    def to_record(self) -> Dict[str, Any]:
        return {
            "algorithm_bits": self.algorithm_bits,
            "family_bits": self.family_bits,
            "total_bits": self.total_bits,
            "allowed_bits": self.allowed_bits,
            "constant": self.constant,
            "within_formula": self.within_formula,
        }


@dataclass
class AttemptReport:
    attempt: int
    family_seed: int
    outcomes: List[QueryOutcome]

    @property
    def success(self) -> bool:
        return all(o.success for o in self.outcomes)

    @property
    def failed_queries(self) -> List[int]:
        return [o.vertex for o in self.outcomes if not o.success]


@dataclass
class SimulationReport:
    """Everything a localized run produced; the last attempt is the one answered."""

    n: int
    N: int
    t: int
    k: int
    epsilon: Fraction
    bound: FailureBound
    seed_accounting: SeedAccounting
    declared_epsilon: Optional[Fraction] = None
    attempts: List[AttemptReport] = field(default_factory=list)
    certificates: List[LocalityCertificate] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return bool(self.attempts) and self.attempts[-1].success

    @property
    def final(self) -> AttemptReport:
        return self.attempts[-1]

    @property
    def answers(self) -> Dict[int, Any]:
        return {o.vertex: o.answer for o in self.final.outcomes if o.success}

    @property
    def certificates_passed(self) -> bool:
        return all(c.passed for c in self.certificates)

    @property
    def query_failure_rate(self) -> float:
        total = sum(len(a.outcomes) for a in self.attempts)
        failed = sum(len(a.failed_queries) for a in self.attempts)
        return failed / total if total else 0.0

    def to_record(self) -> Dict[str, Any]:
        final = self.final.outcomes if self.attempts else []
        return {
            "n": self.n,
            "N": self.N,
            "t": self.t,
            "k": self.k,
            "epsilon_log2_inverse": ceil_log2_inverse(self.epsilon),
            "declared_epsilon": None if self.declared_epsilon is None else str(self.declared_epsilon),
            "success": self.success,
            "attempts": len(self.attempts),
            "failed_queries": [a.failed_queries for a in self.attempts],
            "query_failure_rate": self.query_failure_rate,
            "bound": self.bound.to_record(),
            "seed_accounting": self.seed_accounting.to_record(),
            "g_probes": sum(o.g_probes for o in final),
            "h_probes": sum(o.h_probes for o in final),
            "certificates_passed": self.certificates_passed,
        }


def check_regime(n: int, t: int, delta: int, constant: float = DEFAULT_GUARD_CONSTANT) -> None:
    """
    Refuse probe complexities above constant·n^{1/4}/Δ.

    Raises:
        ScaleGuardError: If t(n^4) is outside the supported regime
    """
    limit = constant * n ** 0.25 / max(delta, 1)
    if t > limit:
        raise ScaleGuardError(f"t(n^4)={t} exceeds {constant}·n^(1/4)/Δ = {limit:.1f}")


def run_localized_lca(
    alg: ProbeAlgorithm,
    g: LabeledGraph,
    h: Optional[HSpec] = None,
    family: str = "kwise",
    seed: int = 0,
    alg_seed: int = 0,
    epsilon: Optional[Fraction] = None,
    max_retries: int = 0,
    guard_constant: float = DEFAULT_GUARD_CONSTANT,
    raise_on_failure: bool = False,
) -> SimulationReport:
    """
    Answer every vertex of g with the localized version of `alg`.

    Attempt i draws the family seed derive_seed_bits(seed, "localizer", i, bits);
    a failed attempt is retried up to `max_retries` times. Per-query locality
    certificates are issued for the final attempt.

    Args:
        alg: Stateless LCA whose complexity t(·) is evaluated at N = n^4
        g: Input graph
        h: Virtual graph; empty by default
        family: Permutation family name; "kwise" for the constructive result
        seed: Master seed for the permutation
        alg_seed: Seed handed to alg on every query
        epsilon: Family distance; defaults to 1/(n·N^{4k})
        max_retries: Extra attempts after a failed one
        guard_constant: Constant of the t <= c·n^{1/4}/Δ guard
        raise_on_failure: Raise LocalizationFailure instead of returning a failed report

    Raises:
        ScaleGuardError: If t(n^4) exceeds the guard
        LocalizationFailure: Only with raise_on_failure, when every attempt failed
    """
    h = h or HSpec("empty")
    n = g.n
    N = localizer_domain(n)
    t = alg.complexity(N)
    check_regime(n, t, g.delta, guard_constant)
    k = discovered_bound(g.delta, t)
    eps = epsilon if epsilon is not None else default_epsilon(n, N, k)
    fam = make_family(family, N, k=k, epsilon=eps)
    alg_bits = alg.seed_length(N)
    alg_seed = alg_seed % (1 << alg_bits) if alg_bits else alg_seed
    report = SimulationReport(
        n=n,
        N=N,
        t=t,
        k=k,
        epsilon=Fraction(eps),
        bound=failure_bound(n, N, g.delta, t),
        seed_accounting=SeedAccounting(
            algorithm_bits=alg_bits, family_bits=fam.seed_bits, t=t, delta=g.delta, n=n
        ),
        declared_epsilon=fam.epsilon,
    )
    for attempt in range(max_retries + 1):
        family_seed = derive_seed_bits(seed, "localizer", attempt, max(fam.seed_bits, 1))
        world = VirtualWorld(g, h, N, fam.sample(family_seed))
        outcomes = [
            simulate_query(world, alg, v, budget=t, seed=alg_seed, seed_bits=alg_bits) for v in range(n)
        ]
        report.attempts.append(AttemptReport(attempt=attempt, family_seed=family_seed, outcomes=outcomes))
        if report.attempts[-1].success:
            break
    report.certificates = [certify(o, g, t) for o in report.final.outcomes if o.success]
    if raise_on_failure and not report.success:
        raise LocalizationFailure(
            f"{alg.name}: every one of {len(report.attempts)} attempts had a failed query",
            attempts=len(report.attempts),
            report=report.to_record(),
        )
    return report

"""Statistical distance of a family's k-tuple outputs from uniform distinct tuples."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from locality_lab.errors import ScaleGuardError
from locality_lab.services.seeding import derive_seed_bits

from .base import Law, PermutationFamily

EXHAUSTIVE_MAX_SEED_BITS = 20
EXHAUSTIVE_MAX_N = 12
DENSE_CODES_MAX = 1 << 22
KERNEL_MAX_TUPLES = 4096
MODES = ("exhaustive", "sampled")

Distance = Union[Fraction, float]


@dataclass
class FamilyQuality:
    """Measured distance, maximised over the probe tuples checked."""

    family: str
    size: int
    k: int
    epsilon: Optional[Fraction]
    measured_distance: Distance
    mode: str
    worst_tuple: Tuple[int, ...]
    tuples_checked: int
    samples: int
    per_tuple: Dict[Tuple[int, ...], Distance] = field(default_factory=dict, repr=False)

    @property
    def within_epsilon(self) -> bool:
        return self.epsilon is not None and self.measured_distance <= self.epsilon

    def to_record(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "N": self.size,
            "k": self.k,
            "epsilon": None if self.epsilon is None else str(self.epsilon),
            "measured_distance": (
                str(self.measured_distance)
                if isinstance(self.measured_distance, Fraction)
                else self.measured_distance
            ),
            "mode": self.mode,
            "worst_tuple": list(self.worst_tuple),
            "tuples_checked": self.tuples_checked,
            "samples": self.samples,
            "within_epsilon": self.within_epsilon,
        }


def distinct_tuples(size: int, k: int) -> int:
    return math.perm(size, k)


def _codes(law: Law, xs: Sequence[int]) -> np.ndarray:
    """Base-N code of (π(x_1), ..., π(x_k)) for every outcome row."""
    size = law.table.shape[1]
    codes = np.zeros(law.outcomes, dtype=np.int64)
    for x in xs:
        codes = codes * size + law.table[:, x]
    return codes


def exact_tuple_distance(law: Law, xs: Sequence[int]) -> Fraction:
    """
    ½ Σ_y |P[(π(x_1), ..., π(x_k)) = y] - 1/D| over the D distinct k-tuples y.

    Every observed y is distinct because rows are permutations; unobserved
    tuples contribute 1/D each. Only the law's own rows are used; composed
    laws go through composed_tuple_distances.
    """
    size = law.table.shape[1]
    k = len(xs)
    d = distinct_tuples(size, k)
    s = law.total
    codes = _codes(law, xs)
    if size ** k <= DENSE_CODES_MAX:
        hits = np.bincount(codes, weights=law.weights)
        hits = hits[hits > 0]
    else:
        _, inverse = np.unique(codes, return_inverse=True)
        hits = np.bincount(inverse, weights=law.weights)
    counts = np.rint(hits).astype(np.int64)
    deviation = int(np.abs(counts * d - s).sum()) + (d - len(counts)) * s
    return Fraction(deviation, 2 * s * d)


def tuple_kernel(law: Law, k: int) -> Tuple[List[Tuple[int, ...]], np.ndarray]:
    """
    Transition weights of one draw from the law, on distinct k-tuples.

    kernel[i, j] is the total weight of the rows sending tuples[i] to
    tuples[j]; tuples are the distinct k-tuples of [N] in lexicographic
    order, so their base-N codes are sorted.

    Raises:
        ScaleGuardError: More than KERNEL_MAX_TUPLES distinct tuples
    """
    size = law.table.shape[1]
    if distinct_tuples(size, k) > KERNEL_MAX_TUPLES:
        raise ScaleGuardError(f"{distinct_tuples(size, k)} distinct {k}-tuples exceed {KERNEL_MAX_TUPLES}")
    tuples = list(itertools.permutations(range(size), k))
    sorted_codes = np.array([sum(y * size ** (k - 1 - i) for i, y in enumerate(ys)) for ys in tuples], dtype=np.int64)
    kernel = np.zeros((len(tuples), len(tuples)), dtype=np.int64)
    for i, xs in enumerate(tuples):
        targets = np.searchsorted(sorted_codes, _codes(law, xs))
        kernel[i] = np.rint(np.bincount(targets, weights=law.weights, minlength=len(tuples))).astype(np.int64)
    return tuples, kernel


def composed_tuple_distances(
    law: Law, k: int, tuples: Optional[Sequence[Tuple[int, ...]]] = None
) -> Dict[Tuple[int, ...], Fraction]:
    """
    Exact distance for each tuple after composing law.blocks independent draws.

    The k-tuple law of a composition is the product of the draws' kernels,
    so the seed space is never enumerated as a whole.

    Raises:
        ScaleGuardError: Composed weights beyond 2^62, or too many tuples
    """
    s = law.seeds
    if s.bit_length() > 62:
        raise ScaleGuardError(f"composed law has 2^{s.bit_length() - 1}+ seeds; kernels would overflow")
    every, kernel = tuple_kernel(law, k)
    power = np.linalg.matrix_power(kernel, law.blocks)
    d = len(every)
    position = {xs: i for i, xs in enumerate(every)}
    wanted = every if tuples is None else [tuple(xs) for xs in tuples]
    out: Dict[Tuple[int, ...], Fraction] = {}
    for xs in wanted:
        row = power[position[xs]].astype(object)
        out[xs] = Fraction(int(np.abs(row * d - s).sum()), 2 * s * d)
    return out


def sampled_tuple_distance(outputs: Sequence[Tuple[int, ...]], size: int, k: int) -> float:
    counts = Counter(outputs)
    s = len(outputs)
    d = distinct_tuples(size, k)
    observed = sum(abs(c / s - 1.0 / d) for c in counts.values())
    return 0.5 * (observed + (d - len(counts)) / d)


def default_probe_tuples(size: int, k: int, limit: int = 64, seed: int = 0) -> List[Tuple[int, ...]]:
    """All distinct tuples when there are at most `limit`, otherwise a documented subset."""
    if distinct_tuples(size, k) <= limit:
        return list(itertools.permutations(range(size), k))
    picks = {tuple(range(k)), tuple(range(size - k, size))}
    rng = np.random.default_rng(seed)
    while len(picks) < min(limit, distinct_tuples(size, k)):
        picks.add(tuple(int(v) for v in rng.choice(size, size=k, replace=False)))
    return sorted(picks)


def tuple_uniformity_test(
    family: PermutationFamily,
    N: int,
    k: int,
    mode: str = "exhaustive",
    trials: int = 10_000,
    seed: int = 0,
    tuples: Optional[Sequence[Sequence[int]]] = None,
) -> FamilyQuality:
    """
    Distance of (π(x_1), ..., π(x_k)) from uniform distinct k-tuples.

    Exhaustive mode runs over the family's exact law and every distinct probe
    tuple (a law of composed blocks enumerates one block and multiplies
    kernels); sampled mode draws `trials` seeds and checks `tuples` (default:
    default_probe_tuples), reporting a noisy upper-biased estimate.

    Raises:
        ValueError: Mismatched N, bad k or unknown mode
        ScaleGuardError: Exhaustive mode beyond 2^20 seeds per block or N > 12
    """
    if N != family.size:
        raise ValueError(f"family is over [{family.size}], not [{N}]")
    if not 1 <= k <= N:
        raise ValueError("need 1 <= k <= N")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")

    per_tuple: Dict[Tuple[int, ...], Distance] = {}
    if mode == "exhaustive":
        if N > EXHAUSTIVE_MAX_N:
            raise ScaleGuardError(f"exhaustive test needs N <= {EXHAUSTIVE_MAX_N}")
        law = family.exact_law()
        if law.outcomes > 1 << EXHAUSTIVE_MAX_SEED_BITS:
            raise ScaleGuardError("family law has more than 2^20 outcomes")
        probe = [tuple(t) for t in tuples] if tuples is not None else list(itertools.permutations(range(N), k))
        if law.blocks > 1:
            per_tuple.update(composed_tuple_distances(law, k, probe))
        else:
            for xs in probe:
                per_tuple[xs] = exact_tuple_distance(law, xs)
        samples = law.seeds
    else:
        if trials < 1:
            raise ValueError("trials must be positive")
        probe = [tuple(t) for t in tuples] if tuples is not None else default_probe_tuples(N, k, seed=seed)
        outputs: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {xs: [] for xs in probe}
        for i in range(trials):
            handle = family.sample(derive_seed_bits(seed, f"quality:{family.family}", i, max(family.seed_bits, 1)))
            for xs in probe:
                outputs[xs].append(tuple(handle.forward(x) for x in xs))
        for xs in probe:
            per_tuple[xs] = sampled_tuple_distance(outputs[xs], N, k)
        samples = trials

    worst = max(per_tuple, key=lambda xs: per_tuple[xs])
    return FamilyQuality(
        family=family.family,
        size=N,
        k=k,
        epsilon=family.epsilon,
        measured_distance=per_tuple[worst],
        mode=mode,
        worst_tuple=worst,
        tuples_checked=len(per_tuple),
        samples=samples,
        per_tuple=per_tuple,
    )

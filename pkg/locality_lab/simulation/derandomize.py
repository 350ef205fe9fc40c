"""Exhaustive search for one permutation that works on every small instance."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from locality_lab.engine.base import ProbeAlgorithm
from locality_lab.errors import ScaleGuardError
from locality_lab.graphs.core import LabeledGraph
from locality_lab.graphs.generators import enumerate_graphs
from locality_lab.permutations.explicit import ExplicitPermutation

from .failure import failure_bound
from .world import HSpec, VirtualWorld, simulate_query

MAX_DOMAIN = 8


@dataclass
class DerandomizationResult:
    permutation: Optional[Tuple[int, ...]]
    good_count: int
    total: int
    graphs_checked: int
    prediction: Fraction

    @property
    def good_fraction(self) -> Fraction:
        return Fraction(self.good_count, self.total)

    @property
    def found(self) -> bool:
        return self.permutation is not None

    @property
    def meets_prediction(self) -> bool:
        return self.good_fraction >= self.prediction

    def to_record(self) -> Dict[str, Any]:
        return {
            "permutation": None if self.permutation is None else list(self.permutation),
            "good_count": self.good_count,
            "total": self.total,
            "good_fraction": str(self.good_fraction),
            "graphs_checked": self.graphs_checked,
            "prediction": str(self.prediction),
            "meets_prediction": self.meets_prediction,
        }


def union_bound_prediction(n: int, N: int, delta: int, t: int, family_size: int) -> Fraction:
    """1 - n·|𝒢|·k·n/(N-k); may be negative, in which case it predicts nothing."""
    return 1 - n * family_size * failure_bound(n, N, delta, t).value


def permutation_is_good(
    table: Sequence[int],
    graphs: Sequence[LabeledGraph],
    alg: ProbeAlgorithm,
    N: int,
    t: int,
    h: HSpec,
) -> bool:
    """True iff the simulation succeeds on every graph and every query under this π."""
    pi = ExplicitPermutation.from_table(table)
    for g in graphs:
        world = VirtualWorld(g, h, N, pi)
        for v in range(g.n):
            if not simulate_query(world, alg, v, budget=t).success:
                return False
    return True


def derandomize_search(
    n: int,
    N: int,
    delta: int,
    t: int,
    alg: ProbeAlgorithm,
    graphs: Optional[Sequence[LabeledGraph]] = None,
    h: Optional[HSpec] = None,
) -> DerandomizationResult:
    """
    Test every π in S_N against every graph of the family and every query.

    The default family is every labeled graph on [n] with degree at most Δ,
    which already covers smaller graphs padded with isolated dummy vertices.
    Returns the first good π in lexicographic order together with the
    fraction of good permutations.

    Raises:
        ScaleGuardError: If N > 8
    """
    if N > MAX_DOMAIN:
        raise ScaleGuardError(f"enumerating S_N needs N <= {MAX_DOMAIN}, got {N}")
    if N <= n:
        raise ValueError("N must exceed n")
    family: List[LabeledGraph] = list(graphs) if graphs is not None else list(enumerate_graphs(n, delta))
    h = h or HSpec("empty")
    first: Optional[Tuple[int, ...]] = None
    good = 0
    for table in itertools.permutations(range(N)):
        if permutation_is_good(table, family, alg, N, t, h):
            good += 1
            if first is None:
                first = table
    return DerandomizationResult(
        permutation=first,
        good_count=good,
        total=math.factorial(N),
        graphs_checked=len(family),
        prediction=union_bound_prediction(n, N, delta, t, len(family)),
    )

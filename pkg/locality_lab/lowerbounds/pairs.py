"""Two copies of G against its bipartite double cover, and the pair-swap perturbations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Tuple

import numpy as np

from locality_lab.errors import ScaleGuardError
from locality_lab.graphs.core import LabeledGraph
from locality_lab.graphs.generators import double_cover, two_copies

ENUMERATION_MAX_PAIRS = 12


@dataclass(frozen=True)
class InstancePair:
    """
    A_G (two disjoint copies) and B_G (double cover) on the shared identifiers [2n].

    Vertex v of G corresponds to v₁ = v and v₂ = v + n in both graphs.
    """

    base: LabeledGraph
    a: LabeledGraph
    b: LabeledGraph

    @property
    def n(self) -> int:
        return self.base.n

    def copies(self, v: int) -> Tuple[int, int]:
        return v, v + self.base.n


def build_pair(g: LabeledGraph) -> InstancePair:
    return InstancePair(base=g, a=two_copies(g), b=double_cover(g))


class PerturbationSpace:
    """
    The 2^n outcomes of swapping v₁ and v₂ independently for every pair.

    Outcome `mask` swaps pair v iff bit v is set; each swap map σ is an
    involution of [2n], so σ⁻¹ = σ.
    """

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("number of pairs must be non-negative")
        self.n = n

    @property
    def size(self) -> int:
        return 1 << self.n

    def swap_map(self, mask: int) -> np.ndarray:
        sigma = np.arange(2 * self.n, dtype=np.int64)
        for v in range(self.n):
            if mask >> v & 1:
                sigma[v], sigma[v + self.n] = v + self.n, v
        return sigma

    def masks(self) -> Iterator[int]:
        """Canonical enumeration order (exact mode only)."""
        if self.n > ENUMERATION_MAX_PAIRS:
            raise ScaleGuardError(f"enumerating 2^{self.n} swap outcomes exceeds n <= {ENUMERATION_MAX_PAIRS}")
        return iter(range(self.size))

    def sample_masks(self, samples: int, seed: int = 0) -> List[int]:
        rng = np.random.default_rng(seed)
        bits = rng.integers(0, 2, size=(samples, self.n), dtype=np.int64)
        weights = [1 << v for v in range(self.n)]
        return [sum(w for w, b in zip(weights, row) if b) for row in bits.tolist()]

    def perturb(self, g: LabeledGraph, mask: int) -> LabeledGraph:
        """p(g) for one outcome, materialised (tests and small cases)."""
        return g.relabel(self.swap_map(mask).tolist())

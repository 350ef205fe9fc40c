"""Independent-set and cut gaps between A_G and B_G."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional

from locality_lab.algorithms.optimum import CPSatOptimizer, max_cut, max_independent_set
from locality_lab.errors import ScaleGuardError
from locality_lab.graphs.core import LabeledGraph
from locality_lab.graphs.measures import girth

from .pairs import InstancePair, build_pair

GAP_MAX_VERTICES = 24


def _finite_girth(g: LabeledGraph) -> Optional[int]:
    value = girth(g)
    return None if math.isinf(value) else int(value)


def _cut_fraction(cut: int, edges: int) -> Fraction:
    return Fraction(cut, edges) if edges else Fraction(1)


@dataclass(frozen=True)
class GapReport:
    """
    α and max-cut on both instances of the pair.

    `color_lower_bound` is ⌈|V(A)|/α(A)⌉, the colour count any proper
    colouring of A_G needs; the tree-grafted instance that turns this into
    a chromatic-number gap is not built.
    """

    n: int
    edges: int
    girth: Optional[int]
    alpha_a: int
    alpha_b: int
    maxcut_a: int
    maxcut_b: int

    @property
    def alpha_fraction_a(self) -> Fraction:
        return Fraction(self.alpha_a, 2 * self.n)

    @property
    def alpha_fraction_b(self) -> Fraction:
        return Fraction(self.alpha_b, 2 * self.n)

    @property
    def alpha_ratio(self) -> Fraction:
        return Fraction(self.alpha_a, self.alpha_b)

    @property
    def cut_fraction_a(self) -> Fraction:
        return _cut_fraction(self.maxcut_a, 2 * self.edges)

    @property
    def cut_fraction_b(self) -> Fraction:
        return _cut_fraction(self.maxcut_b, 2 * self.edges)

    @property
    def color_lower_bound(self) -> int:
        return math.ceil(2 * self.n / self.alpha_a) if self.alpha_a else 0

    def to_record(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "edges": self.edges,
            "girth": self.girth,
            "alpha_a": self.alpha_a,
            "alpha_b": self.alpha_b,
            "alpha_fraction_a": str(self.alpha_fraction_a),
            "alpha_fraction_b": str(self.alpha_fraction_b),
            "alpha_ratio": str(self.alpha_ratio),
            "maxcut_a": self.maxcut_a,
            "maxcut_b": self.maxcut_b,
            "cut_fraction_a": str(self.cut_fraction_a),
            "cut_fraction_b": str(self.cut_fraction_b),
            "color_lower_bound": self.color_lower_bound,
        }


def gap_report(
    g: LabeledGraph,
    pair: Optional[InstancePair] = None,
    optimizer: Optional[CPSatOptimizer] = None,
) -> GapReport:
    """
    Exact optima on A_G and B_G: brute force up to 20 vertices, CP-SAT above.

    Raises:
        ScaleGuardError: If the pair has more than 24 vertices
    """
    if 2 * g.n > GAP_MAX_VERTICES:
        raise ScaleGuardError(f"gap report needs 2n <= {GAP_MAX_VERTICES}, got {2 * g.n}")
    pair = pair or build_pair(g)
    return GapReport(
        n=g.n,
        edges=g.num_edges,
        girth=_finite_girth(g),
        alpha_a=max_independent_set(pair.a, optimizer).value,
        alpha_b=max_independent_set(pair.b, optimizer).value,
        maxcut_a=max_cut(pair.a, optimizer).value,
        maxcut_b=max_cut(pair.b, optimizer).value,
    )

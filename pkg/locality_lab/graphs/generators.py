"""Deterministic generators for every gadget graph the lab uses."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from locality_lab.errors import SamplingBudgetExhausted, ScaleGuardError

from .core import GraphSpec, LabeledGraph
from .measures import girth

DEFAULT_SAMPLING_BUDGET = 10_000


def cycle_graph(n: int) -> LabeledGraph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return LabeledGraph.from_edges(n, ((i, (i + 1) % n) for i in range(n)), delta=2)


def path_graph(n: int) -> LabeledGraph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return LabeledGraph.from_edges(n, ((i, i + 1) for i in range(n - 1)), delta=2)


def disjoint_union(*graphs: LabeledGraph) -> LabeledGraph:
    """Union with the i-th graph shifted by the orders of the graphs before it."""
    edges: List[Tuple[int, int]] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    delta = max((g.delta for g in graphs), default=0)
    return LabeledGraph.from_edges(offset, edges, delta=delta)


def two_copies(g: LabeledGraph) -> LabeledGraph:
    """G ⊔ G with copy i of v carrying identifier v + i·n."""
    return disjoint_union(g, g)


def double_cover(g: LabeledGraph) -> LabeledGraph:
    """Bipartite double cover: v₁ = v, v₂ = v + n, edges {u₁, v₂} and {u₂, v₁}."""
    n = g.n
    edges = []
    for u, v in g.edges():
        edges.append((u, v + n))
        edges.append((u + n, v))
    return LabeledGraph.from_edges(2 * n, edges, delta=g.delta)


def pad_isolated(g: LabeledGraph, n: int) -> LabeledGraph:
    """Append isolated vertices until the order is n."""
    if n < g.n:
        raise ValueError(f"cannot pad a graph of order {g.n} down to {n}")
    return LabeledGraph.from_edges(n, g.edges(), delta=g.delta)


def two_path_graph(
    n: int,
    seed: Optional[int] = None,
    paths: Optional[Sequence[Sequence[int]]] = None,
) -> LabeledGraph:
    """
    Two vertex-disjoint 3-vertex paths on n >= 6 identifiers, rest isolated.

    Args:
        n: Order of the graph
        seed: If given, the six path vertices are a seeded random placement
        paths: Explicit placement ((a, b, c), (d, e, f)); b and e are the middles

    Raises:
        ValueError: If n < 6 or the explicit placement is not six distinct ids
    """
    if n < 6:
        raise ValueError("two-path needs |V| >= 6")
    if paths is None:
        if seed is None:
            chosen = list(range(6))
        else:
            chosen = [int(x) for x in np.random.default_rng(seed).permutation(n)[:6]]
        paths = (chosen[0:3], chosen[3:6])
    flat = [x for p in paths for x in p]
    if len(paths) != 2 or any(len(p) != 3 for p in paths) or len(set(flat)) != 6:
        raise ValueError("two-path placement needs two paths of three distinct vertices")
    if any(not 0 <= x < n for x in flat):
        raise ValueError("two-path placement outside identifier range")
    edges = [(a, b) for p in paths for a, b in ((p[0], p[1]), (p[1], p[2]))]
    return LabeledGraph.from_edges(n, edges, delta=2)


def _configuration_attempt(n: int, d: int, rng: np.random.Generator) -> Optional[Set[Tuple[int, int]]]:
    stubs = rng.permutation(np.repeat(np.arange(n), d))
    edges: Set[Tuple[int, int]] = set()
    for a, b in zip(stubs[0::2], stubs[1::2]):
        u, v = (int(a), int(b)) if a < b else (int(b), int(a))
        if u == v or (u, v) in edges:
            return None
        edges.add((u, v))
    return edges


def random_regular_graph(
    n: int,
    d: int,
    seed: int = 0,
    budget: int = DEFAULT_SAMPLING_BUDGET,
) -> LabeledGraph:
    """
    d-regular graph from the configuration model, rejecting loops and multi-edges.

    Raises:
        ValueError: If n·d is odd or d >= n
        SamplingBudgetExhausted: If no simple pairing appears within `budget` attempts
    """
    graph, _ = _sample_regular(n, d, seed, budget, min_girth=None)
    return graph


def _sample_regular(
    n: int, d: int, seed: int, budget: int, min_girth: Optional[int]
) -> Tuple[LabeledGraph, int]:
    if (n * d) % 2:
        raise ValueError("n * d must be even")
    if not 0 <= d < n:
        raise ValueError("the 0 <= d < n inequality must be satisfied")
    rng = np.random.default_rng(seed)
    rejections = 0
    for _ in range(budget):
        edges = _configuration_attempt(n, d, rng)
        if edges is not None:
            graph = LabeledGraph.from_edges(n, sorted(edges), delta=d)
            if min_girth is None or girth(graph) >= min_girth:
                return graph, rejections
        rejections += 1
    what = f"{d}-regular graph on {n} vertices"
    if min_girth is not None:
        what += f" with girth >= {min_girth}"
    raise SamplingBudgetExhausted(f"no {what}", attempts=budget)


@dataclass(frozen=True)
class HighGirthSample:
    graph: LabeledGraph
    rejections: int


def sample_high_girth_regular(
    n: int,
    d: int,
    min_girth: int,
    seed: int = 0,
    budget: int = DEFAULT_SAMPLING_BUDGET,
) -> HighGirthSample:
    """
    Seeded d-regular graph with girth >= min_girth, by rejection.

    Raises:
        SamplingBudgetExhausted: Caller should lower min_girth or raise n
    """
    graph, rejections = _sample_regular(n, d, seed, budget, min_girth=min_girth)
    return HighGirthSample(graph=graph, rejections=rejections)


def enumerate_graphs(n: int, delta: int, max_order: int = 6) -> Iterator[LabeledGraph]:
    """Every labeled graph on [n] with maximum degree <= delta, in edge-mask order."""
    if n > max_order:
        raise ScaleGuardError(f"graph enumeration limited to n <= {max_order}, got {n}")
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        chosen = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        degrees = [0] * n
        for u, v in chosen:
            degrees[u] += 1
            degrees[v] += 1
        if max(degrees, default=0) <= delta:
            yield LabeledGraph.from_edges(n, chosen, delta=delta)


def generate(spec: GraphSpec) -> LabeledGraph:
    """Pure function of the spec (and its seed) returning a canonical graph."""
    kind = spec.kind
    if kind == "cycle":
        return cycle_graph(spec.n)
    if kind == "path":
        return path_graph(spec.n)
    if kind == "isolated":
        return LabeledGraph.empty(spec.n)
    if kind == "two-path":
        return two_path_graph(spec.n, seed=spec.seed)
    if kind == "random-regular":
        return random_regular_graph(spec.n, spec.d, seed=spec.seed or 0)
    if kind == "high-girth":
        return sample_high_girth_regular(spec.n, spec.d, spec.min_girth, seed=spec.seed or 0).graph
    children = [generate(c) for c in spec.children]
    if kind == "disjoint-union":
        return disjoint_union(*children)
    if kind == "double-cover":
        return double_cover(children[0])
    if kind == "two-copies":
        return two_copies(children[0])
    if kind == "isolated-padding":
        return pad_isolated(children[0], spec.n)
    raise ValueError(f"unknown graph kind '{kind}'")

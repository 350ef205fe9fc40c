"""Labeled bounded-degree graphs and graph specifications."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

VertexId = int

GRAPH_KINDS = (
    "cycle",
    "path",
    "isolated",
    "disjoint-union",
    "double-cover",
    "two-copies",
    "two-path",
    "random-regular",
    "high-girth",
    "isolated-padding",
)

# Short names accepted by GraphSpec.parse.
_KIND_ALIASES = {
    "union": "disjoint-union",
    "pad": "isolated-padding",
    "regular": "random-regular",
}


@dataclass(frozen=True)
class LabeledGraph:
    """
    Immutable bounded-degree graph on identifiers {0, ..., n-1}.

    Adjacency lists are sorted ascending; `delta` is the declared degree bound,
    which may exceed the actual maximum degree.
    """

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]
    delta: int

    def __post_init__(self) -> None:
        validate_graph(self)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int]],
        delta: Optional[int] = None,
    ) -> "LabeledGraph":
        """Build a graph from an edge list; delta defaults to the max degree."""
        buckets: List[List[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside identifier range [0, {n})")
            buckets[u].append(v)
            buckets[v].append(u)
        adjacency = tuple(tuple(sorted(b)) for b in buckets)
        if delta is None:
            delta = max((len(b) for b in adjacency), default=0)
        return cls(n=n, adjacency=adjacency, delta=delta)

    @classmethod
    def empty(cls, n: int, delta: int = 0) -> "LabeledGraph":
        return cls(n=n, adjacency=tuple(() for _ in range(n)), delta=delta)

    def neighbors(self, v: VertexId) -> Tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: VertexId) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> List[Tuple[int, int]]:
        """Edges as (u, v) with u < v, sorted lexicographically."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def relabel(self, mapping: Sequence[int]) -> "LabeledGraph":
        """Return the graph where vertex v carries identifier mapping[v]."""
        if sorted(mapping) != list(range(self.n)):
            raise ValueError("relabelling must be a bijection on the identifier set")
        return LabeledGraph.from_edges(
            self.n,
            ((mapping[u], mapping[v]) for u, v in self.edges()),
            delta=self.delta,
        )

    def induced(self, vertices: Iterable[int]) -> Dict[int, Tuple[int, ...]]:
        """Adjacency of the induced subgraph, keyed by original identifiers."""
        keep = set(vertices)
        return {v: tuple(u for u in self.adjacency[v] if u in keep) for v in sorted(keep)}

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    def __repr__(self) -> str:
        return f"<LabeledGraph(n={self.n}, m={self.num_edges}, delta={self.delta})>"


def validate_graph(g: LabeledGraph) -> None:
    """Single pass over the canonical-form invariants; raises ValueError."""
    if g.n < 0:
        raise ValueError("graph order must be non-negative")
    if len(g.adjacency) != g.n:
        raise ValueError(f"adjacency has {len(g.adjacency)} lists for n={g.n}")
    if g.delta < 0:
        raise ValueError("delta must be non-negative")
    for v, nbrs in enumerate(g.adjacency):
        if len(nbrs) > g.delta:
            raise ValueError(f"vertex {v} has degree {len(nbrs)} > delta {g.delta}")
        prev = -1
        for u in nbrs:
            if not 0 <= u < g.n:
                raise ValueError(f"vertex {v} lists neighbour {u} outside [0, {g.n})")
            if u == v:
                raise ValueError(f"self-loop at vertex {v}")
            if u <= prev:
                raise ValueError(f"neighbours of {v} not strictly ascending")
            prev = u
            if v not in g.adjacency[u]:
                raise ValueError(f"asymmetric edge {v} -> {u}")


@dataclass(frozen=True)
class GraphSpec:
    """Declarative description of a generated graph."""

    kind: str
    n: Optional[int] = None
    d: Optional[int] = None
    seed: Optional[int] = None
    min_girth: Optional[int] = None
    children: Tuple["GraphSpec", ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.kind not in GRAPH_KINDS:
            raise ValueError(f"unknown graph kind '{self.kind}'")
        self._check_parameters()

    def _check_parameters(self) -> None:
        kind = self.kind
        if kind in ("cycle", "path", "isolated", "two-path", "random-regular", "high-girth", "isolated-padding"):
            if self.n is None or self.n < 0:
                raise ValueError(f"{kind} needs a vertex count n >= 0")
        if kind == "cycle" and self.n < 3:
            raise ValueError("cycle needs n >= 3")
        if kind == "path" and self.n < 1:
            raise ValueError("path needs n >= 1")
        if kind == "two-path" and self.n < 6:
            raise ValueError("two-path needs |V| >= 6")
        if kind in ("random-regular", "high-girth"):
            if self.d is None or not 0 <= self.d < self.n:
                raise ValueError(f"{kind} needs 0 <= d < n")
            if (self.n * self.d) % 2:
                raise ValueError("n * d must be even")
        if kind == "high-girth" and (self.min_girth is None or self.d < 2):
            raise ValueError("high-girth needs min_girth and d >= 2")
        if kind in ("double-cover", "two-copies", "isolated-padding") and len(self.children) != 1:
            raise ValueError(f"{kind} takes exactly one child spec")
        if kind == "disjoint-union" and not self.children:
            raise ValueError("disjoint-union needs at least one child spec")

    @classmethod
    def parse(cls, text: str) -> "GraphSpec":
        """
        Parse the compact CLI form.

        Examples: ``cycle:8``, ``two-path:10:3``, ``random-regular:10:3:7``,
        ``high-girth:14:3:5:1``, ``double-cover:cycle:3``,
        ``pad:12:cycle:5``, ``union:cycle:3+cycle:4``.
        """
        text = text.strip()
        if not text:
            raise ValueError("empty graph spec")
        head, _, rest = text.partition(":")
        kind = _KIND_ALIASES.get(head, head)
        try:
            if kind == "disjoint-union":
                return cls(kind, children=tuple(cls.parse(part) for part in rest.split("+")))
            if kind in ("double-cover", "two-copies"):
                return cls(kind, children=(cls.parse(rest),))
            if kind == "isolated-padding":
                n_text, _, child = rest.partition(":")
                return cls(kind, n=int(n_text), children=(cls.parse(child),))
            args = [int(a) for a in rest.split(":")] if rest else []
        except ValueError as e:
            raise ValueError(f"malformed graph spec '{text}': {e}") from e
        if kind in ("cycle", "path", "isolated") and len(args) == 1:
            return cls(kind, n=args[0])
        if kind == "two-path" and len(args) in (1, 2):
            return cls(kind, n=args[0], seed=args[1] if len(args) == 2 else None)
        if kind == "random-regular" and len(args) in (2, 3):
            return cls(kind, n=args[0], d=args[1], seed=args[2] if len(args) == 3 else 0)
        if kind == "high-girth" and len(args) in (3, 4):
            return cls(kind, n=args[0], d=args[1], min_girth=args[2], seed=args[3] if len(args) == 4 else 0)
        raise ValueError(f"malformed graph spec '{text}'")

    def to_string(self) -> str:
        if self.kind == "disjoint-union":
            return "union:" + "+".join(c.to_string() for c in self.children)
        if self.kind in ("double-cover", "two-copies"):
            return f"{self.kind}:{self.children[0].to_string()}"
        if self.kind == "isolated-padding":
            return f"pad:{self.n}:{self.children[0].to_string()}"
        parts = [self.kind, str(self.n)]
        if self.kind in ("random-regular", "high-girth"):
            parts.append(str(self.d))
        if self.kind == "high-girth":
            parts.append(str(self.min_girth))
        if self.seed is not None and self.kind in ("two-path", "random-regular", "high-girth"):
            parts.append(str(self.seed))
        return ":".join(parts)

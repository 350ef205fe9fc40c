"""LOCAL model: radius-t views, synchronous round simulation and run_local."""

from __future__ import annotations

from abc import abstractmethod
from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from locality_lab.graphs.core import LabeledGraph

from .base import LocalAlgorithm


@dataclass(frozen=True)
class LocalView:
    """
    Induced ball of radius `radius` around `center`, with original identifiers.

    `n` is the size of the identifier space the node is told about and `delta`
    the declared degree bound. Only vertices at distance <= radius - 1 have
    their complete neighbour lists inside the view.
    """

    center: int
    radius: int
    n: int
    delta: int
    distances: Mapping[int, int]
    adjacency: Mapping[int, Tuple[int, ...]]

    @property
    def vertices(self) -> List[int]:
        return sorted(self.adjacency)

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency.values()) // 2

    def neighbors(self, u: int) -> Tuple[int, ...]:
        return self.adjacency[u]

    def distance(self, u: int) -> int:
        return self.distances[u]

    def __contains__(self, u: int) -> bool:
        return u in self.adjacency

    def sub_view(self, u: int, r: int) -> "LocalView":
        """The radius-r ball around u, which must fit inside this view."""
        if self.distances[u] + r > self.radius:
            raise ValueError(f"ball of radius {r} around {u} leaves the view")
        return build_view(u, r, self.n, self.delta, self.adjacency.__getitem__)


def build_view(
    center: int,
    radius: int,
    n: int,
    delta: int,
    neighbors_of: Callable[[int], Sequence[int]],
) -> LocalView:
    """
    BFS to depth `radius` using full neighbour lists, then induce.

    `neighbors_of` is only called on vertices at distance <= radius.
    """
    dist: Dict[int, int] = {center: 0}
    full: Dict[int, Tuple[int, ...]] = {}
    queue = deque([center])
    while queue:
        u = queue.popleft()
        full[u] = tuple(neighbors_of(u)) if radius > 0 else ()
        if dist[u] >= radius:
            continue
        for w in full[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    adjacency = {u: tuple(w for w in full[u] if w in dist) for u in dist}
    return LocalView(center=center, radius=radius, n=n, delta=delta, distances=dist, adjacency=adjacency)


def collect_ball(g: LabeledGraph, v: int, t: int) -> LocalView:
    """Radius-t neighbourhood of v; t = 0 is the lone centre with no edges."""
    if t < 0:
        raise ValueError("radius must be non-negative")
    return build_view(v, t, g.n, g.delta, g.neighbors)


def run_local(
    alg: LocalAlgorithm,
    g: LabeledGraph,
    t: Optional[int] = None,
    order: Optional[Iterable[int]] = None,
) -> Dict[int, Any]:
    """
    Labeling f(v) = alg(collect_ball(g, v, t)) for every vertex.

    Views are taken against the same immutable graph, so the execution
    `order` cannot change the result; it is exposed for purity checks.
    """
    needed = alg.radius(g.n)
    if t is None:
        t = needed
    if t < needed:
        raise ValueError(f"{alg.name} needs radius {needed}, got {t}")
    labeling: Dict[int, Any] = {}
    for v in order if order is not None else range(g.n):
        labeling[v] = alg.check_label(alg.evaluate(collect_ball(g, v, t)))
    return dict(sorted(labeling.items()))


class SynchronousAlgorithm(LocalAlgorithm):
    """
    LOCAL algorithm written as a per-node state machine.

    Each node builds an initial state from its radius-`setup_radius` ball,
    then runs `rounds(n)` synchronous rounds exchanging states with its
    neighbours. Inside a view of radius setup + rounds the centre's final
    state is exact: after round j only nodes at distance <= rounds - j are
    kept.
    """

    error_label: Any = None

    def setup_radius(self, n: int) -> int:
        return 1

    @abstractmethod
    def rounds(self, n: int) -> int:
        pass

    @abstractmethod
    def initial_state(self, view: LocalView, u: int) -> Any:
        pass

    @abstractmethod
    def step(self, u: int, state: Any, neighbor_states: Dict[int, Any], n: int) -> Any:
        pass

    @abstractmethod
    def output(self, u: int, state: Any) -> Any:
        pass

    def rejects(self, view: LocalView) -> bool:
        """True if the view shows an input outside the algorithm's domain."""
        return False

    def radius(self, n: int) -> int:
        return self.setup_radius(n) + self.rounds(n)

    def evaluate(self, view: LocalView) -> Any:
        if view.radius < self.radius(view.n):
            raise ValueError(f"{self.name} needs radius {self.radius(view.n)}, view has {view.radius}")
        if self.rejects(view):
            return self.error_label
        total = self.rounds(view.n)
        states = {
            u: self.initial_state(view, u) for u in view.vertices if view.distance(u) <= total
        }
        for j in range(total):
            limit = total - j - 1
            states = {
                u: self.step(u, states[u], {w: states[w] for w in view.neighbors(u)}, view.n)
                for u in states
                if view.distance(u) <= limit
            }
        return self.output(view.center, states[view.center])

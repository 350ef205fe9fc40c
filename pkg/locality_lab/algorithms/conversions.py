"""LOCAL → LCA conversion by probing the radius-r ball."""

from __future__ import annotations

from collections import deque
from typing import Any, Dict, Optional, Tuple

from locality_lab.engine.base import LocalAlgorithm, ProbeAlgorithm
from locality_lab.engine.lca import LcaContext
from locality_lab.engine.local import LocalView, build_view
from locality_lab.engine.transcript import ProbeOracle


def ball_probe_bound(delta: int, r: int) -> int:
    """1 + Σ_{i<r} Δ(Δ-1)^i: the most vertices a radius-r ball can hold."""
    return 1 + sum(delta * (delta - 1) ** i for i in range(r))


class CachedProber:
    """Per-query probe cache; each identifier is probed at most once."""

    def __init__(self, oracle: ProbeOracle):
        self.oracle = oracle
        self.known: Dict[int, Tuple[int, ...]] = {}

    def __call__(self, w: int) -> Tuple[int, ...]:
        if w not in self.known:
            self.known[w] = self.oracle.probe(w)
        return self.known[w]

    def ball(self, center: int, r: int) -> LocalView:
        """Probe every vertex within distance r in BFS order and return the induced ball."""
        self(center)
        dist = {center: 0}
        queue = deque([center])
        while queue:
            u = queue.popleft()
            if dist[u] >= r:
                continue
            for w in self(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    self(w)
                    queue.append(w)
        return build_view(center, r, self.oracle.n, self.oracle.delta, self)


class LocalToLca(ProbeAlgorithm):
    """Stateless LCA evaluating a LOCAL algorithm on the probed radius-r ball."""

    def __init__(self, local: LocalAlgorithm, r: Optional[int] = None, delta: Optional[int] = None):
        self.local = local
        self.fixed_radius = r
        self.delta = delta if delta is not None else getattr(local, "delta", None)
        self.name = f"lca({local.name})"
        self.labels = local.labels
        self.answer_is_vertex = local.answer_is_vertex

    def radius(self, n: int) -> int:
        return self.fixed_radius if self.fixed_radius is not None else self.local.radius(n)

    def complexity(self, n: int) -> int:
        if self.delta is None:
            return n
        return min(n, ball_probe_bound(self.delta, self.radius(n)))

    def answer(self, oracle: ProbeOracle, query: int, ctx: LcaContext) -> Any:
        r = self.radius(oracle.n)
        view = CachedProber(oracle).ball(query, r)
        return self.local.evaluate(view)


def local_to_lca(alg: LocalAlgorithm, r: Optional[int] = None, delta: Optional[int] = None) -> LocalToLca:
    """
    Stateless LCA for a LOCAL algorithm declared for r rounds.

    On query v it probes every vertex within distance r once, in BFS order,
    so the probe count is at most the ball size (2r + 1 on cycles, 1 for r = 0).
    """
    if r is not None and r < 0:
        raise ValueError("rounds must be non-negative")
    return LocalToLca(alg, r, delta)

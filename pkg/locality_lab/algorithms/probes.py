"""
Probe gadgets: small decision trees and LCAs with a known probe pattern.

They are the payloads of the failure-rate, derandomization and
indistinguishability experiments, and of the statelessification tests.
"""

from __future__ import annotations

from typing import Any

from locality_lab.engine.base import ProbeAlgorithm
from locality_lab.engine.lca import LcaContext
from locality_lab.engine.transcript import ProbeOracle
from locality_lab.services.seeding import derive_seed


class ConstantTree(ProbeAlgorithm):
    """Zero probes; every vertex answers `label`."""

    def __init__(self, label: int = 0):
        self.label = label
        self.name = f"constant-{label}"

    def complexity(self, n: int) -> int:
        return 0

    def answer(self, oracle: ProbeOracle, query: int, ctx: LcaContext) -> int:
        return self.label


class DegreeTree(ProbeAlgorithm):
    """One probe: the queried vertex's own degree."""

    name = "degree"

    def complexity(self, n: int) -> int:
        return 1

    def answer(self, oracle: ProbeOracle, query: int, ctx: LcaContext) -> int:
        return len(oracle.probe(query))


class FarProber(ProbeAlgorithm):
    """Probes the fixed identifier `target` (mod n) `count` times over; answers its degree."""

    def __init__(self, target: int, count: int = 1):
        if count < 1:
            raise ValueError("count must be positive")
        self.target = target
        self.count = count
        self.name = f"far-prober-{target}"

    def complexity(self, n: int) -> int:
        return self.count

    def answer(self, oracle: ProbeOracle, query: int, ctx: LcaContext) -> int:
        degree = 0
        for _ in range(self.count):
            degree = len(oracle.probe(self.target % oracle.n))
        return degree


class RandomProber(ProbeAlgorithm):
    """
    Probes `count` identifiers that look random but are a fixed function of (salt, query).

    Used as the worst case for the relabelling simulation: none of its probes
    follow edges, so each one lands on a uniformly placed identifier.
    """

    def __init__(self, count: int, salt: int = 0):
        if count < 0:
            raise ValueError("count must be non-negative")
        self.count = count
        self.salt = salt
        self.name = f"random-prober-{count}"

    def complexity(self, n: int) -> int:
        return self.count

    def answer(self, oracle: ProbeOracle, query: int, ctx: LcaContext) -> int:
        seen = 0
        for i in range(self.count):
            w = derive_seed(self.salt, f"random-prober:{query}", i) % oracle.n
            seen += len(oracle.probe(w))
        return seen


class BallWalker(ProbeAlgorithm):
    """
    BFS from the query in ascending identifier order, stopping after `budget` probes.

    Answers 1 iff the query has the smallest identifier among the probed vertices.
    """

    def __init__(self, budget: int):
        if budget < 0:
            raise ValueError("budget must be non-negative")
        self.budget = budget
        self.name = f"ball-walker-{budget}"
        self.labels = frozenset({0, 1})

    def complexity(self, n: int) -> int:
        return self.budget

    def answer(self, oracle: ProbeOracle, query: int, ctx: LcaContext) -> int:
        queue = [query]
        seen = {query}
        probed = []
        while queue and len(probed) < self.budget:
            u = queue.pop(0)
            probed.append(u)
            for w in oracle.probe(u):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return 1 if not probed or query == min(probed) else 0


class TriangleWalker(ProbeAlgorithm):
    """
    Three probes: the query and its two smallest neighbours.

    Answers 1 iff the first neighbour lists the second, i.e. the walk closed a triangle.
    """

    name = "triangle-walker"
    labels = frozenset({0, 1})

    def complexity(self, n: int) -> int:
        return 3

    def answer(self, oracle: ProbeOracle, query: int, ctx: LcaContext) -> int:
        nbrs = oracle.probe(query)
        if len(nbrs) < 2:
            return 0
        a, b = nbrs[0], nbrs[1]
        closed = b in oracle.probe(a)
        oracle.probe(b)
        return 1 if closed else 0


class StateCachingWrapper(ProbeAlgorithm):
    """
    Query-order-oblivious state-full LCA around a deterministic inner handle.

    The last (query, answer) pair is kept in state; repeating that query is
    answered from state without probing. Every answer equals the inner
    handle's, whatever the query order.
    """

    _WIDTH = 8

    def __init__(self, inner: ProbeAlgorithm):
        self.inner = inner
        self.name = f"cached({inner.name})"
        self.labels = inner.labels
        self.answer_is_vertex = inner.answer_is_vertex
        self.state_capacity = 2 * self._WIDTH

    def complexity(self, n: int) -> int:
        return self.inner.complexity(n)

    def seed_length(self, n: int) -> int:
        return self.inner.seed_length(n)

    def answer(self, oracle: ProbeOracle, query: int, ctx: LcaContext) -> Any:
        blob = ctx.state.read()
        if len(blob) == 2 * self._WIDTH:
            cached_query = int.from_bytes(blob[: self._WIDTH], "big")
            if cached_query == query:
                return int.from_bytes(blob[self._WIDTH :], "big", signed=True)
        result = self.inner.answer(oracle, query, ctx)
        ctx.state.write(
            query.to_bytes(self._WIDTH, "big") + int(result).to_bytes(self._WIDTH, "big", signed=True)
        )
        return result

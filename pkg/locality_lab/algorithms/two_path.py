"""
Leader election on two-path instances.

A two-path instance has two vertex-disjoint 3-vertex paths and isolated
vertices elsewhere; exactly one of the two middle vertices must answer 1.
The state-full rule needs one probe per query, while the stateless baseline
has to search the identifier space.
"""

from __future__ import annotations

from typing import Optional

from locality_lab.engine.base import ProbeAlgorithm
from locality_lab.engine.lca import LcaContext
from locality_lab.engine.transcript import ProbeOracle

# Enough for any identifier below 2**64 when n is not declared up front.
_DEFAULT_STATE_BYTES = 8


def state_bytes_for(n: int) -> int:
    """Bytes needed to store one identifier from [n]."""
    return max(1, (max(n - 1, 1).bit_length() + 7) // 8)


class TwoPathStatefull(ProbeAlgorithm):
    """
    One probe per query; the first middle vertex queried wins.

    The winner's identifier is written to state, so later queries of the other
    middle vertex answer 0. Answers depend on query order.
    """

    name = "two-path-statefull"
    labels = frozenset({0, 1})

    def __init__(self, n: Optional[int] = None):
        self.declared_n = n
        self.state_capacity = state_bytes_for(n) if n is not None else _DEFAULT_STATE_BYTES

    def complexity(self, n: int) -> int:
        return 1

    def answer(self, oracle: ProbeOracle, query: int, ctx: LcaContext) -> int:
        if len(oracle.probe(query)) != 2:
            return 0
        leader = ctx.state.read_int()
        if leader is None:
            ctx.state.write_int(query)
            return 1
        return 1 if leader == query else 0


class TwoPathStatelessBaseline(ProbeAlgorithm):
    """
    Deterministic stateless foil: scan identifiers upward for the other middle vertex.

    The middle vertex with the smaller identifier is the leader. Worst case is
    about n probes, reached when both paths sit at the top of the range.
    """

    name = "two-path-stateless"
    labels = frozenset({0, 1})

    def complexity(self, n: int) -> int:
        return n

    def answer(self, oracle: ProbeOracle, query: int, ctx: LcaContext) -> int:
        if len(oracle.probe(query)) != 2:
            return 0
        for w in range(oracle.n):
            if w != query and len(oracle.probe(w)) == 2:
                return 1 if query < w else 0
        return 1


def two_path_statefull(n: Optional[int] = None) -> TwoPathStatefull:
    return TwoPathStatefull(n)


def two_path_stateless_baseline() -> TwoPathStatelessBaseline:
    return TwoPathStatelessBaseline()


def adversarial_two_path_paths(n: int) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    """Both paths on the six largest identifiers; middles are n-5 and n-2."""
    if n < 6:
        raise ValueError("two-path needs |V| >= 6")
    return (n - 6, n - 5, n - 4), (n - 3, n - 2, n - 1)

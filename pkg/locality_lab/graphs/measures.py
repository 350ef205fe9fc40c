"""Structural measurements: distances, girth, components."""

from __future__ import annotations

import math
from collections import deque
from typing import Dict, Iterable, List, Set, Union

import networkx as nx

from .core import LabeledGraph


def distances_from(g: LabeledGraph, source: int, limit: int | None = None) -> Dict[int, int]:
    """BFS distances from `source`, optionally truncated at radius `limit`."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if limit is not None and dist[u] >= limit:
            continue
        for w in g.neighbors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def girth(g: LabeledGraph) -> Union[int, float]:
    """
    Length of the shortest cycle, or math.inf for forests.

    Runs a BFS from every vertex; the first non-tree edge met from each root
    bounds the shortest cycle through that root, and the minimum over all
    roots is exact.
    """
    best: Union[int, float] = math.inf
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def connected_components(g: LabeledGraph) -> List[List[int]]:
    """Components as sorted vertex lists, ordered by smallest member."""
    comps = [sorted(c) for c in nx.connected_components(g.to_networkx())]
    return sorted(comps, key=lambda c: c[0])


def is_bipartite(g: LabeledGraph) -> bool:
    return nx.is_bipartite(g.to_networkx())


def induces_connected(g: LabeledGraph, vertices: Iterable[int]) -> bool:
    """True iff the subgraph of g induced on `vertices` is connected (and non-empty)."""
    keep: Set[int] = set(vertices)
    if not keep:
        return False
    return nx.is_connected(g.to_networkx().subgraph(keep))

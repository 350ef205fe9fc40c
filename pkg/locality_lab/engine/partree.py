"""Parallel decision trees: one budgeted probe tree per vertex."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, Mapping, Optional, Union

from locality_lab.graphs.core import LabeledGraph

from .base import ProbeAlgorithm
from .lca import LcaContext, StateBuffer, run_query
from .transcript import ProbeTranscript

TreeFamily = Union[ProbeAlgorithm, Mapping[int, ProbeAlgorithm], Callable[[int], ProbeAlgorithm]]


@dataclass
class PartreeRun:
    labeling: Dict[int, Any]
    transcripts: Dict[int, ProbeTranscript]


def _tree_for(trees: TreeFamily, v: int) -> ProbeAlgorithm:
    if isinstance(trees, ProbeAlgorithm):
        return trees
    if isinstance(trees, Mapping):
        return trees[v]
    return trees(v)


def run_partree(
    trees: TreeFamily,
    g: LabeledGraph,
    budget: Optional[int] = None,
    order: Optional[Iterable[int]] = None,
) -> PartreeRun:
    """
    Run tree T_v for every vertex v with at most `budget` probes each.

    `trees` is one stateless handle used as every T_v, a mapping v -> handle, or
    a factory. Trees share nothing: each gets a fresh zero-capacity state.

    Raises:
        ValueError: If a tree declares persistent state
        ProbeBudgetExceeded: Names the first vertex whose tree overran
    """
    labeling: Dict[int, Any] = {}
    transcripts: Dict[int, ProbeTranscript] = {}
    for v in order if order is not None else range(g.n):
        tree = _tree_for(trees, v)
        if not tree.is_stateless:
            raise ValueError(f"decision tree {tree.name} declares state; trees are stateless")
        limit = budget if budget is not None else tree.complexity(g.n)
        ctx = LcaContext(seed=0, seed_bits=0, state=StateBuffer(0), probe_budget=limit)
        labeling[v], transcripts[v] = run_query(tree, g.neighbors, g.n, g.delta, v, ctx)
    return PartreeRun(
        labeling=dict(sorted(labeling.items())),
        transcripts=dict(sorted(transcripts.items())),
    )

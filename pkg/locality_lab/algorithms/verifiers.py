"""Feasibility checks for every problem id, plus objective values for the optimisation ids."""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Integral
from typing import Any, Callable, Dict, Mapping, Optional

from locality_lab.graphs.core import LabeledGraph
from locality_lab.graphs.measures import connected_components

from .coloring import ERROR_LABEL
from .optimum import BRUTE_FORCE_MAX_N, brute_force_independent_set, brute_force_max_cut

PROBLEM_IDS = (
    "coloring3-cycle",
    "coloring-deltaplus1",
    "mis",
    "maximal-matching",
    "two-path-leader",
    "independent-set-value",
    "max-cut-value",
)

UNMATCHED = -1


@dataclass
class Verdict:
    """Outcome of verify_solution; `value`/`optimum` only for optimisation problems."""

    problem: str
    valid: bool
    reason: str = ""
    value: Optional[int] = None
    optimum: Optional[int] = None

    def __bool__(self) -> bool:
        return self.valid


def _normalise(g: LabeledGraph, labeling: Mapping[int, Any]) -> Dict[int, int]:
    if set(labeling) != set(range(g.n)):
        raise ValueError("labeling must assign exactly the vertices 0..n-1")
    out = {}
    for v, label in labeling.items():
        if isinstance(label, bool) or not isinstance(label, Integral):
            raise ValueError(f"label of vertex {v} is not an integer: {label!r}")
        out[v] = int(label)
    return out


def _proper_coloring(g: LabeledGraph, f: Dict[int, int], palette: int, skip=frozenset()) -> str:
    for v in range(g.n):
        if v in skip:
            continue
        if not 0 <= f[v] < palette:
            return f"vertex {v} has colour {f[v]} outside [0, {palette})"
    for u, v in g.edges():
        if u not in skip and f[u] == f[v]:
            return f"edge ({u}, {v}) is monochromatic"
    return ""


def _check_cycle_coloring(g: LabeledGraph, f: Dict[int, int]) -> str:
    # Components that are not cycles may answer with the error label.
    off_domain = set()
    for comp in connected_components(g):
        if any(g.degree(v) != 2 for v in comp):
            bad = [v for v in comp if f[v] != ERROR_LABEL]
            if bad:
                return f"vertex {bad[0]} is outside a cycle but did not report an error"
            off_domain.update(comp)
    return _proper_coloring(g, f, 3, frozenset(off_domain))


def _check_deltaplus1(g: LabeledGraph, f: Dict[int, int]) -> str:
    return _proper_coloring(g, f, g.delta + 1)


def _check_independent(g: LabeledGraph, f: Dict[int, int]) -> str:
    for v in range(g.n):
        if f[v] not in (0, 1):
            return f"vertex {v} has non-binary label {f[v]}"
    for u, v in g.edges():
        if f[u] == 1 and f[v] == 1:
            return f"adjacent vertices {u} and {v} are both selected"
    return ""


def _check_mis(g: LabeledGraph, f: Dict[int, int]) -> str:
    reason = _check_independent(g, f)
    if reason:
        return reason
    for v in range(g.n):
        if f[v] == 0 and not any(f[w] == 1 for w in g.neighbors(v)):
            return f"vertex {v} could be added; set is not maximal"
    return ""


def _check_matching(g: LabeledGraph, f: Dict[int, int]) -> str:
    for v in range(g.n):
        p = f[v]
        if p == UNMATCHED:
            continue
        if p not in g.neighbors(v):
            return f"vertex {v} names non-neighbour {p} as partner"
        if f[p] != v:
            return f"partner labels of {v} and {p} disagree"
    for u, v in g.edges():
        if f[u] == UNMATCHED and f[v] == UNMATCHED:
            return f"edge ({u}, {v}) could be added; matching is not maximal"
    return ""


def _check_two_path(g: LabeledGraph, f: Dict[int, int]) -> str:
    for v in range(g.n):
        if f[v] not in (0, 1):
            return f"vertex {v} has non-binary label {f[v]}"
    leaders = [v for v in range(g.n) if f[v] == 1]
    if len(leaders) != 1:
        return f"expected exactly one leader, found {len(leaders)}"
    if g.degree(leaders[0]) != 2:
        return f"leader {leaders[0]} is not a middle vertex"
    return ""


def _check_cut(g: LabeledGraph, f: Dict[int, int]) -> str:
    for v in range(g.n):
        if f[v] not in (0, 1):
            return f"vertex {v} has side {f[v]} outside {{0, 1}}"
    return ""


_CHECKS: Dict[str, Callable[[LabeledGraph, Dict[int, int]], str]] = {
    "coloring3-cycle": _check_cycle_coloring,
    "coloring-deltaplus1": _check_deltaplus1,
    "mis": _check_mis,
    "maximal-matching": _check_matching,
    "two-path-leader": _check_two_path,
    "independent-set-value": _check_independent,
    "max-cut-value": _check_cut,
}


def verify_solution(problem: str, g: LabeledGraph, labeling: Mapping[int, Any]) -> Verdict:
    """
    Exact feasibility check of a labeling.

    For independent-set-value and max-cut-value the verdict also carries the
    objective and, for n <= 20, the brute-force optimum.

    Args:
        problem: One of PROBLEM_IDS
        g: Input graph
        labeling: vertex -> label (the partner id or -1 for maximal-matching)

    Returns:
        Verdict with `valid` and, on failure, a human-readable `reason`

    Raises:
        ValueError: Unknown problem id or malformed labeling
    """
    if problem not in _CHECKS:
        raise ValueError(f"unknown problem id {problem!r}; expected one of {PROBLEM_IDS}")
    f = _normalise(g, labeling)
    reason = _CHECKS[problem](g, f)
    verdict = Verdict(problem=problem, valid=not reason, reason=reason)
    if problem == "independent-set-value" and verdict.valid:
        verdict.value = sum(f.values())
        if g.n <= BRUTE_FORCE_MAX_N:
            verdict.optimum = brute_force_independent_set(g).value
    elif problem == "max-cut-value" and verdict.valid:
        verdict.value = sum(1 for u, v in g.edges() if f[u] != f[v])
        if g.n <= BRUTE_FORCE_MAX_N:
            verdict.optimum = brute_force_max_cut(g).value
    return verdict

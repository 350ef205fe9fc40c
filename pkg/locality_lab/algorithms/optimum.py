"""Exact maximum independent set and maximum cut: numpy brute force and CP-SAT."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
from ortools.sat.python import cp_model

from locality_lab.errors import ScaleGuardError
from locality_lab.graphs.core import LabeledGraph

BRUTE_FORCE_MAX_N = 20


@dataclass
class Optimum:
    """Optimal value and one witness assignment (vertex -> 0/1)."""

    value: int
    witness: Dict[int, int]
    method: str


def _masks(n: int) -> np.ndarray:
    if n > BRUTE_FORCE_MAX_N:
        raise ScaleGuardError(f"brute force needs n <= {BRUTE_FORCE_MAX_N}, got {n}")
    return np.arange(1 << n, dtype=np.int64)


def _bit(masks: np.ndarray, v: int) -> np.ndarray:
    return (masks >> v) & 1


def _witness(mask: int, n: int) -> Dict[int, int]:
    return {v: (mask >> v) & 1 for v in range(n)}


def brute_force_independent_set(g: LabeledGraph) -> Optimum:
    """Maximum independent set over all 2^n subsets."""
    masks = _masks(g.n)
    conflict = np.zeros_like(masks)
    for u, v in g.edges():
        conflict |= _bit(masks, u) & _bit(masks, v)
    sizes = sum((_bit(masks, v) for v in range(g.n)), np.zeros_like(masks))
    sizes = np.where(conflict == 0, sizes, -1)
    best = int(np.argmax(sizes))
    return Optimum(value=int(sizes[best]), witness=_witness(best, g.n), method="brute-force")


def brute_force_max_cut(g: LabeledGraph) -> Optimum:
    """Maximum cut over all 2^n sides; sides are the 0/1 witness values."""
    masks = _masks(g.n)
    cut = np.zeros_like(masks)
    for u, v in g.edges():
        cut += _bit(masks, u) ^ _bit(masks, v)
    best = int(np.argmax(cut))
    return Optimum(value=int(cut[best]), witness=_witness(best, g.n), method="brute-force")


class CPSatOptimizer:
    """
    CP-SAT models for maximum independent set and maximum cut.

    One boolean per vertex; for max-cut one extra boolean per edge bounded by
    the XOR of its endpoints. A single search worker keeps runs reproducible.
    """

    def __init__(self, time_limit: float = 30.0, verbose: bool = False):
        """
        Args:
            time_limit: Solver wall-clock limit in seconds
            verbose: Print progress lines
        """
        self.time_limit = time_limit
        self.verbose = verbose

    def independent_set(self, g: LabeledGraph) -> Optimum:
        model = cp_model.CpModel()
        x = self._create_variables(model, g)
        for u, v in g.edges():
            model.Add(x[u] + x[v] <= 1)
        model.Maximize(sum(x))
        return self._solve(model, x, g, "independent-set")

    def max_cut(self, g: LabeledGraph) -> Optimum:
        model = cp_model.CpModel()
        x = self._create_variables(model, g)
        cut_vars = self._add_cut_constraints(model, g, x)
        if x:
            # Cut is symmetric under flipping every side
            model.Add(x[0] == 0)
        model.Maximize(sum(cut_vars))
        return self._solve(model, x, g, "max-cut")

    def _create_variables(self, model: cp_model.CpModel, g: LabeledGraph) -> List[cp_model.IntVar]:
        return [model.NewBoolVar(f"x_{v}") for v in range(g.n)]

    def _add_cut_constraints(
        self,
        model: cp_model.CpModel,
        g: LabeledGraph,
        x: List[cp_model.IntVar],
    ) -> List[cp_model.IntVar]:
        cut_vars = []
        for u, v in g.edges():
            e = model.NewBoolVar(f"cut_{u}_{v}")
            model.Add(e <= x[u] + x[v])
            model.Add(e <= 2 - x[u] - x[v])
            cut_vars.append(e)
        return cut_vars

    def _solve(
        self,
        model: cp_model.CpModel,
        x: List[cp_model.IntVar],
        g: LabeledGraph,
        label: str,
    ) -> Optimum:
        solver = cp_model.CpSolver()
        solver.parameters.max_time_in_seconds = self.time_limit
        solver.parameters.num_search_workers = 1
        if self.verbose:
            print(f"[INFO] Solving {label} on n={g.n}, m={g.num_edges}")
        status = solver.Solve(model)
        if status != cp_model.OPTIMAL:
            raise RuntimeError(f"CP-SAT did not prove optimality for {label} (status: {self._status_name(status)})")
        witness = {v: int(solver.Value(var)) for v, var in enumerate(x)}
        value = int(round(solver.ObjectiveValue())) if g.n else 0
        if self.verbose:
            print(f"[OK] {label} optimum {value}")
        return Optimum(value=value, witness=witness, method="cp-sat")

    def _status_name(self, status: int) -> str:
        status_map = {
            cp_model.OPTIMAL: "OPTIMAL",
            cp_model.FEASIBLE: "FEASIBLE",
            cp_model.INFEASIBLE: "INFEASIBLE",
            cp_model.MODEL_INVALID: "MODEL_INVALID",
            cp_model.UNKNOWN: "UNKNOWN",
        }
        return status_map.get(status, f"UNKNOWN({status})")


def max_independent_set(g: LabeledGraph, optimizer: Optional[CPSatOptimizer] = None) -> Optimum:
    """Brute force up to BRUTE_FORCE_MAX_N vertices, CP-SAT beyond."""
    if g.n <= BRUTE_FORCE_MAX_N:
        return brute_force_independent_set(g)
    return (optimizer or CPSatOptimizer()).independent_set(g)


def max_cut(g: LabeledGraph, optimizer: Optional[CPSatOptimizer] = None) -> Optimum:
    if g.n <= BRUTE_FORCE_MAX_N:
        return brute_force_max_cut(g)
    return (optimizer or CPSatOptimizer()).max_cut(g)

"""Algorithm registry keyed by string ids, shared by the CLI and config files."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from locality_lab.engine.base import LocalAlgorithm, ProbeAlgorithm

from .coloring import ForestDecompositionColoring, cole_vishkin_cycle
from .conversions import local_to_lca
from .mis_matching import ColorSweepMis, ProposalMatching, maximal_matching, mis_from_coloring
from .probes import BallWalker, ConstantTree, DegreeTree, FarProber, RandomProber, TriangleWalker
from .two_path import two_path_stateless_baseline, two_path_statefull


@dataclass(frozen=True)
class AlgorithmParams:
    """Knobs an algorithm id may read; unused ones are ignored."""

    delta: int = 2
    n: Optional[int] = None
    budget: int = 1
    target: int = 0
    salt: int = 0
    label: int = 0


@dataclass(frozen=True)
class RegistryEntry:
    alg_id: str
    problem: Optional[str]
    description: str
    build_lca: Callable[[AlgorithmParams], ProbeAlgorithm]
    build_local: Optional[Callable[[AlgorithmParams], LocalAlgorithm]] = None

    @property
    def has_local(self) -> bool:
        return self.build_local is not None


def _coloring(p: AlgorithmParams) -> ForestDecompositionColoring:
    return ForestDecompositionColoring(p.delta)


_ENTRIES: Dict[str, RegistryEntry] = {
    e.alg_id: e
    for e in (
        RegistryEntry(
            "coloring3-cycle",
            "coloring3-cycle",
            "Cole-Vishkin 3-colouring of cycles",
            build_lca=lambda p: local_to_lca(cole_vishkin_cycle(p.n), delta=2),
            build_local=lambda p: cole_vishkin_cycle(p.n),
        ),
        RegistryEntry(
            "coloring-deltaplus1",
            "coloring-deltaplus1",
            "forest-decomposition (Δ+1)-colouring",
            build_lca=lambda p: local_to_lca(_coloring(p), delta=p.delta),
            build_local=_coloring,
        ),
        RegistryEntry(
            "mis",
            "mis",
            "colour-class sweep MIS",
            build_lca=lambda p: mis_from_coloring(_coloring(p)),
            build_local=lambda p: ColorSweepMis(_coloring(p)),
        ),
        RegistryEntry(
            "maximal-matching",
            "maximal-matching",
            "colour-class proposal matching",
            build_lca=lambda p: maximal_matching(_coloring(p)),
            build_local=lambda p: ProposalMatching(_coloring(p)),
        ),
        RegistryEntry(
            "two-path-statefull",
            "two-path-leader",
            "one-probe state-full leader election",
            build_lca=lambda p: two_path_statefull(p.n),
        ),
        RegistryEntry(
            "two-path-stateless",
            "two-path-leader",
            "ascending-scan stateless leader election",
            build_lca=lambda p: two_path_stateless_baseline(),
        ),
        RegistryEntry("constant", None, "zero-probe constant tree", build_lca=lambda p: ConstantTree(p.label)),
        RegistryEntry("degree", None, "own-degree tree", build_lca=lambda p: DegreeTree()),
        RegistryEntry("far-prober", None, "fixed-id prober", build_lca=lambda p: FarProber(p.target, p.budget)),
        RegistryEntry("random-prober", None, "seeded random prober", build_lca=lambda p: RandomProber(p.budget, p.salt)),
        RegistryEntry("ball-walker", None, "BFS ball walker", build_lca=lambda p: BallWalker(p.budget)),
        RegistryEntry("triangle-walker", None, "3-probe triangle walker", build_lca=lambda p: TriangleWalker()),
    )
}

ALIASES = {
    "coloring3": "coloring3-cycle",
    "cole-vishkin": "coloring3-cycle",
    "coloring": "coloring-deltaplus1",
    "mm": "maximal-matching",
    "matching": "maximal-matching",
}

# Gadget trees used wherever "every registered tree" is meant.
TREE_GADGETS = ("constant", "degree", "far-prober", "random-prober", "ball-walker", "triangle-walker")


def resolve(alg_id: str) -> RegistryEntry:
    """
    Look up an id or alias.

    Raises:
        ValueError: If the id is not registered
    """
    key = ALIASES.get(alg_id, alg_id)
    if key not in _ENTRIES:
        raise ValueError(f"unknown algorithm {alg_id!r}; known: {', '.join(algorithm_ids())}")
    return _ENTRIES[key]


def algorithm_ids() -> List[str]:
    return sorted(_ENTRIES)


def build_lca(alg_id: str, params: Optional[AlgorithmParams] = None) -> ProbeAlgorithm:
    return resolve(alg_id).build_lca(params or AlgorithmParams())


def build_local(alg_id: str, params: Optional[AlgorithmParams] = None) -> LocalAlgorithm:
    entry = resolve(alg_id)
    if entry.build_local is None:
        raise ValueError(f"{entry.alg_id} has no LOCAL form")
    return entry.build_local(params or AlgorithmParams())


def problem_for(alg_id: str) -> Optional[str]:
    return resolve(alg_id).problem


def registered_trees(budget: int, salt: int = 0) -> List[ProbeAlgorithm]:
    """Every gadget tree that fits in `budget` probes, instantiated at that budget."""
    trees: List[ProbeAlgorithm] = []
    for alg_id in TREE_GADGETS:
        for label in ((0, 1) if alg_id == "constant" else (0,)):
            tree = build_lca(alg_id, AlgorithmParams(budget=max(budget, 1), salt=salt, label=label))
            if tree.complexity(0) <= budget:
                trees.append(tree)
    return trees

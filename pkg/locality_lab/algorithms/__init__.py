"""Algorithms run through the execution models, their verifiers and exact optimisers."""

from .coloring import ERROR_LABEL, CycleColoring, ForestDecompositionColoring, cole_vishkin_cycle, cv_iterations
from .conversions import CachedProber, LocalToLca, ball_probe_bound, local_to_lca
from .mis_matching import (
    MATCHING_ERROR,
    ColorSweepMis,
    ColorSweepMisLca,
    ProposalMatching,
    maximal_matching,
    mis_from_coloring,
)
from .optimum import CPSatOptimizer, Optimum, brute_force_independent_set, brute_force_max_cut, max_cut, max_independent_set
from .probes import (
    BallWalker,
    ConstantTree,
    DegreeTree,
    FarProber,
    RandomProber,
    StateCachingWrapper,
    TriangleWalker,
)
from .registry import AlgorithmParams, RegistryEntry, algorithm_ids, build_lca, build_local, problem_for, registered_trees, resolve
from .two_path import (
    TwoPathStatefull,
    TwoPathStatelessBaseline,
    adversarial_two_path_paths,
    two_path_stateless_baseline,
    two_path_statefull,
)
from .verifiers import PROBLEM_IDS, Verdict, verify_solution

__all__ = [
    "ERROR_LABEL",
    "CycleColoring",
    "ForestDecompositionColoring",
    "cole_vishkin_cycle",
    "cv_iterations",
    "CachedProber",
    "LocalToLca",
    "ball_probe_bound",
    "local_to_lca",
    "MATCHING_ERROR",
    "ColorSweepMis",
    "ColorSweepMisLca",
    "ProposalMatching",
    "maximal_matching",
    "mis_from_coloring",
    "CPSatOptimizer",
    "Optimum",
    "brute_force_independent_set",
    "brute_force_max_cut",
    "max_cut",
    "max_independent_set",
    "BallWalker",
    "ConstantTree",
    "DegreeTree",
    "FarProber",
    "RandomProber",
    "StateCachingWrapper",
    "TriangleWalker",
    "AlgorithmParams",
    "RegistryEntry",
    "algorithm_ids",
    "build_lca",
    "build_local",
    "problem_for",
    "registered_trees",
    "resolve",
    "TwoPathStatefull",
    "TwoPathStatelessBaseline",
    "adversarial_two_path_paths",
    "two_path_stateless_baseline",
    "two_path_statefull",
    "PROBLEM_IDS",
    "Verdict",
    "verify_solution",
]

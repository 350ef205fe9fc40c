"""Execution models: LOCAL rounds, parallel decision trees and LCAs."""

from .base import MODELS, AlgorithmHandle, LocalAlgorithm, ProbeAlgorithm
from .lca import (
    LcaContext,
    LcaRun,
    StateBuffer,
    StatelessSimulation,
    check_consistency,
    replay_state_trace,
    run_lca,
    run_query,
    statelessify,
)
from .local import LocalView, SynchronousAlgorithm, build_view, collect_ball, run_local
from .partree import PartreeRun, run_partree
from .transcript import ProbeOracle, ProbeTranscript

__all__ = [
    "MODELS",
    "AlgorithmHandle",
    "LocalAlgorithm",
    "ProbeAlgorithm",
    "LcaContext",
    "LcaRun",
    "StateBuffer",
    "StatelessSimulation",
    "check_consistency",
    "replay_state_trace",
    "run_lca",
    "run_query",
    "statelessify",
    "LocalView",
    "SynchronousAlgorithm",
    "build_view",
    "collect_ball",
    "run_local",
    "PartreeRun",
    "run_partree",
    "ProbeOracle",
    "ProbeTranscript",
]

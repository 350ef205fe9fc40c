"""One experiment per CLI command, plus the runner that writes their reports."""

from .base import BaseExperiment, ExperimentResult, algorithm_params, chunk_ranges, load_graph
from .execution import RunLcaExperiment, RunLocalExperiment, RunPartreeExperiment
from .generation import GenGraphExperiment
from .localization import DerandomizeSearchExperiment, EstimateFailureExperiment, LocalizeExperiment, resolve_hspec
from .lowerbound import LowerboundExperiment
from .permutation import PermTestExperiment
from .runner import EXPERIMENTS, RunOutcome, assemble_report, build_experiment, run_experiment, write_error, write_reports
from .two_path import TwoPathGapExperiment

__all__ = [
    "BaseExperiment",
    "ExperimentResult",
    "algorithm_params",
    "chunk_ranges",
    "load_graph",
    "RunLcaExperiment",
    "RunLocalExperiment",
    "RunPartreeExperiment",
    "GenGraphExperiment",
    "DerandomizeSearchExperiment",
    "EstimateFailureExperiment",
    "LocalizeExperiment",
    "resolve_hspec",
    "LowerboundExperiment",
    "PermTestExperiment",
    "EXPERIMENTS",
    "RunOutcome",
    "assemble_report",
    "build_experiment",
    "run_experiment",
    "write_error",
    "write_reports",
    "TwoPathGapExperiment",
]

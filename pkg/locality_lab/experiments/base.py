"""Base experiment interface that every CLI command implements."""

from __future__ import annotations

from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, TypeVar

from locality_lab.algorithms.registry import AlgorithmParams
from locality_lab.config import ExperimentConfig
from locality_lab.graphs.core import GraphSpec, LabeledGraph
from locality_lab.graphs.generators import generate

T = TypeVar("T")
R = TypeVar("R")


@dataclass
class ExperimentResult:
    """
    What an experiment hands back to the runner.

    `summary` becomes report.json, `rows` the CSV mirror and `trials` the
    ledger's trial records. `failed_check` names a violated built-in check;
    the runner still writes every report before turning it into an error.
    """

    summary: Dict[str, Any]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    columns: Optional[Sequence[str]] = None
    trials: List[Dict[str, Any]] = field(default_factory=list)
    transcripts: List[Dict[str, Any]] = field(default_factory=list)
    files: Dict[str, str] = field(default_factory=dict)
    failed_check: Optional[str] = None


class BaseExperiment(ABC):
    """
    Abstract base class for all experiments.

    Each experiment reads an ExperimentConfig and returns an ExperimentResult.
    Work that splits into independent trials goes through `parallel_map`,
    which keeps results in input order whatever the worker count.
    """

    command: str | None = None  # Override in subclasses (e.g., "localize")

    def __init__(self, workers: int = 1):
        self.workers = max(1, workers)

    @abstractmethod
    def run(self, cfg: ExperimentConfig) -> ExperimentResult:
        """
        Execute the experiment.

        Args:
            cfg: Validated experiment configuration

        Returns:
            ExperimentResult with summary, CSV rows and ledger records

        Raises:
            LabError: If a guard or budget is violated during the run
        """
        pass

    def parallel_map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        items = list(items)
        if self.workers == 1 or len(items) < 2:
            return [fn(x) for x in items]
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(fn, items))

    def get_command_name(self) -> str:
        return self.command or "unknown"


def load_graph(cfg: ExperimentConfig) -> LabeledGraph:
    """The configured graph: a graph file if given, else the generated spec."""
    if cfg.graph_file is not None:
        from locality_lab.io.graph_file import read_graph

        return read_graph(cfg.graph_file)
    return generate(GraphSpec.parse(cfg.graph))


def sized_graphs(cfg: ExperimentConfig) -> List[LabeledGraph]:
    """
    The configured graph, or one instance per entry of `sizes` with the
    spec's vertex count replaced.

    Raises:
        ValueError: sizes given with a graph file, or with a spec that has no vertex count
    """
    if not cfg.sizes:
        return [load_graph(cfg)]
    if cfg.graph_file is not None:
        raise ValueError("sizes need a generated graph spec, not a graph file")
    spec = GraphSpec.parse(cfg.graph)
    if spec.n is None or spec.children:
        raise ValueError(f"graph spec {cfg.graph!r} has no vertex count to sweep")
    return [generate(replace(spec, n=n)) for n in cfg.sizes]


def algorithm_params(cfg: ExperimentConfig, g: LabeledGraph, n: Optional[int] = None) -> AlgorithmParams:
    """Registry parameters for this config; `n` is the identifier space the algorithm sees."""
    return AlgorithmParams(
        delta=cfg.model.delta if cfg.model.delta is not None else max(g.delta, 2),
        n=n if n is not None else g.n,
        budget=cfg.model.t if cfg.model.t is not None else cfg.model.budget,
        target=cfg.model.target,
        salt=cfg.seed,
    )


def chunk_ranges(total: int, parts: int) -> List[range]:
    """Split range(total) into at most `parts` contiguous chunks."""
    parts = max(1, min(parts, total))
    size, extra = divmod(total, parts)
    out, start = [], 0
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0)
        out.append(range(start, stop))
        start = stop
    return out

"""LCA runtime: seed/state contexts, query execution, consistency and statelessification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from locality_lab.errors import StateCapacityExceeded
from locality_lab.graphs.core import LabeledGraph

from .base import ProbeAlgorithm
from .transcript import ProbeOracle, ProbeTranscript


class StateBuffer:
    """Read-write byte buffer persisting across LCA queries, capped at `capacity` bytes."""

    def __init__(self, capacity: int = 0, initial: bytes = b""):
        if capacity < 0:
            raise ValueError("state capacity must be non-negative")
        self.capacity = capacity
        self._data = b""
        self.write(initial)

    def read(self) -> bytes:
        return self._data

    def write(self, data: bytes) -> None:
        if len(data) > self.capacity:
            raise StateCapacityExceeded(len(data), self.capacity)
        self._data = bytes(data)

    def read_int(self) -> Optional[int]:
        return int.from_bytes(self._data, "big") if self._data else None

    def write_int(self, value: int) -> None:
        self.write(value.to_bytes(max(1, (value.bit_length() + 7) // 8), "big"))

    def snapshot(self) -> bytes:
        return self._data


@dataclass
class LcaContext:
    """
    Seed, state and probe budget for one LCA execution.

    The seed is an integer standing for a bit string of `seed_bits` bits and is
    fixed for every query of the execution. Stateless iff capacity is 0.
    """

    seed: int = 0
    seed_bits: int = 0
    state: StateBuffer = field(default_factory=StateBuffer)
    probe_budget: Optional[int] = None

    def __post_init__(self) -> None:
        if self.seed < 0 or self.seed_bits < 0:
            raise ValueError("seed and seed length must be non-negative")
        # seed_bits == 0 leaves the length undeclared
        if self.seed_bits and self.seed >> self.seed_bits:
            raise ValueError(f"seed does not fit in {self.seed_bits} bits")

    @property
    def stateless(self) -> bool:
        return self.state.capacity == 0

    @classmethod
    def for_algorithm(cls, alg: ProbeAlgorithm, n: int, seed: int = 0) -> "LcaContext":
        bits = alg.seed_length(n)
        return cls(
            seed=seed % (1 << bits) if bits else 0,
            seed_bits=bits,
            state=StateBuffer(alg.state_capacity, alg.initial_state()),
            probe_budget=alg.complexity(n),
        )


@dataclass
class LcaRun:
    answers: List[Any]
    transcripts: List[ProbeTranscript]
    state_trace: List[bytes]


def run_query(
    alg: ProbeAlgorithm,
    adjacency: Callable[[int], Sequence[int]],
    n: int,
    delta: int,
    query: int,
    ctx: LcaContext,
) -> tuple[Any, ProbeTranscript]:
    """One query against an arbitrary adjacency source; returns (answer, transcript)."""
    budget = ctx.probe_budget if ctx.probe_budget is not None else alg.complexity(n)
    oracle = ProbeOracle(adjacency, n=n, delta=delta, vertex=query, budget=budget)
    answer = alg.check_label(alg.answer(oracle, query, ctx))
    return answer, oracle.transcript


def run_lca(
    alg: ProbeAlgorithm,
    g: LabeledGraph,
    queries: Sequence[int],
    ctx: LcaContext,
) -> LcaRun:
    """
    Answer `queries` in order with one seed and a persistent state.

    Raises:
        ValueError: If a query is not a vertex of g
        ProbeBudgetExceeded: If a query overruns the probe budget
        StateCapacityExceeded: If the algorithm overruns its state capacity
    """
    if alg.state_capacity > ctx.state.capacity:
        raise StateCapacityExceeded(alg.state_capacity, ctx.state.capacity)
    run = LcaRun(answers=[], transcripts=[], state_trace=[])
    for q in queries:
        if not 0 <= q < g.n:
            raise ValueError(f"query {q} is not a vertex of the graph")
        answer, transcript = run_query(alg, g.neighbors, g.n, g.delta, q, ctx)
        run.answers.append(answer)
        run.transcripts.append(transcript)
        run.state_trace.append(ctx.state.snapshot())
    return run


def replay_state_trace(
    alg: ProbeAlgorithm,
    g: LabeledGraph,
    queries: Sequence[int],
    run: LcaRun,
    seed: int = 0,
) -> List[Any]:
    """Re-answer each query from the state recorded just before it."""
    answers = []
    previous = alg.initial_state()
    for q, after in zip(queries, run.state_trace):
        ctx = LcaContext.for_algorithm(alg, g.n, seed=seed)
        ctx.state.write(previous)
        answer, _ = run_query(alg, g.neighbors, g.n, g.delta, q, ctx)
        answers.append(answer)
        previous = after
    return answers


def check_consistency(
    alg: ProbeAlgorithm,
    g: LabeledGraph,
    ctx: LcaContext,
    problem: str,
) -> bool:
    """Query every vertex in index order and hand the labeling to the problem's verifier."""
    from locality_lab.algorithms.verifiers import verify_solution

    run = run_lca(alg, g, list(range(g.n)), ctx)
    labeling = dict(enumerate(run.answers))
    return verify_solution(problem, g, labeling).valid


class StatelessSimulation(ProbeAlgorithm):
    """
    Stateless version of a query-order-oblivious LCA.

    Every query runs the wrapped algorithm from its initial state with the
    same seed, in a scratch buffer that is discarded afterwards.
    """

    state_capacity = 0

    def __init__(self, inner: ProbeAlgorithm):
        self.inner = inner
        self.name = f"stateless({inner.name})"
        self.labels = inner.labels
        self.answer_is_vertex = inner.answer_is_vertex

    def complexity(self, n: int) -> int:
        return self.inner.complexity(n)

    def seed_length(self, n: int) -> int:
        return self.inner.seed_length(n)

    def answer(self, oracle: ProbeOracle, query: int, ctx: LcaContext) -> Any:
        scratch = LcaContext(
            seed=ctx.seed,
            seed_bits=ctx.seed_bits,
            state=StateBuffer(self.inner.state_capacity, self.inner.initial_state()),
            probe_budget=ctx.probe_budget,
        )
        return self.inner.answer(oracle, query, scratch)


def statelessify(alg: ProbeAlgorithm) -> ProbeAlgorithm:
    """
    Wrap a query-order-oblivious LCA as a stateless one with equal probe complexity.

    Obliviousness is the caller's assertion; it is not checked here.
    """
    if alg.is_stateless:
        return alg
    return StatelessSimulation(alg)

"""
The relabelled virtual world G ∪ H and the per-query localized simulation.

G has identifiers [n]; H is a known bounded-degree graph on [N] \\ [n] whose
adjacency is computed on demand. A permutation π hides which identifiers
belong to G: a probe of w is read as π⁻¹(w) and every neighbour x in the
answer is reported as π(x).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Set, Tuple

from locality_lab.engine.base import ProbeAlgorithm
from locality_lab.engine.lca import LcaContext, StateBuffer, run_query
from locality_lab.engine.transcript import ProbeTranscript
from locality_lab.errors import InvariantViolation
from locality_lab.graphs.core import LabeledGraph
from locality_lab.graphs.measures import distances_from
from locality_lab.permutations.base import PermutationHandle

H_KINDS = ("empty", "cycle", "callback")

HCallback = Callable[[int, int, int], Sequence[int]]


@dataclass(frozen=True)
class HSpec:
    """
    Procedural virtual graph on {n, ..., N-1}.

    `cycle` links n - n+1 - ... - N-1 - n; `callback` receives (u, n, N)
    and returns u's neighbours, which must stay inside [n, N).
    """

    kind: str = "empty"
    callback: Optional[HCallback] = None

    def __post_init__(self) -> None:
        if self.kind not in H_KINDS:
            raise ValueError(f"unknown H kind {self.kind!r}; expected one of {H_KINDS}")
        if (self.kind == "callback") != (self.callback is not None):
            raise ValueError("a callback is required for, and only for, kind 'callback'")

    def degree_bound(self) -> int:
        return {"empty": 0, "cycle": 2}.get(self.kind, -1)

    def neighbors(self, u: int, n: int, N: int) -> Tuple[int, ...]:
        if self.kind == "empty":
            return ()
        if self.kind == "cycle":
            size = N - n
            if size == 1:
                return ()
            i = u - n
            around = {n + (i - 1) % size, n + (i + 1) % size}
            return tuple(sorted(around))
        return tuple(sorted(self.callback(u, n, N)))

    def to_record(self) -> Dict[str, Any]:
        return {"kind": self.kind}


def default_hspec(problem: Optional[str]) -> HSpec:
    """Cycle H for cycle problems, empty H for everything else."""
    return HSpec("cycle") if problem == "coloring3-cycle" else HSpec("empty")


class VirtualWorld:
    """G ∪ H on [N] seen through π; H is never materialised."""

    def __init__(self, g: LabeledGraph, h: HSpec, N: int, pi: PermutationHandle):
        if N <= g.n:
            raise ValueError(f"identifier space N={N} must exceed n={g.n}")
        if pi.size != N:
            raise ValueError(f"permutation is over [{pi.size}], world needs [{N}]")
        if h.kind == "cycle" and N - g.n >= 3 and g.delta < 2:
            raise ValueError("cycle H needs degree bound >= 2")
        self.g = g
        self.h = h
        self.N = N
        self.pi = pi
        self.delta = g.delta

    @property
    def n(self) -> int:
        return self.g.n

    def in_g(self, u: int) -> bool:
        return u < self.g.n

    def true_neighbors(self, u: int) -> Tuple[int, ...]:
        """Neighbours of the true identifier u in G ∪ H."""
        if self.in_g(u):
            return self.g.neighbors(u)
        nbrs = self.h.neighbors(u, self.g.n, self.N)
        if self.h.kind == "callback":
            self._check_callback(u, nbrs)
        return nbrs

    def _check_callback(self, u: int, nbrs: Sequence[int]) -> None:
        if len(nbrs) > self.delta:
            raise ValueError(f"H vertex {u} has degree {len(nbrs)} > {self.delta}")
        for x in nbrs:
            if not self.g.n <= x < self.N or x == u:
                raise ValueError(f"H vertex {u} lists invalid neighbour {x}")
            if u not in self.h.neighbors(x, self.g.n, self.N):
                raise ValueError(f"H adjacency is not symmetric at ({u}, {x})")

    def relabeled_probe(self, w: int) -> Tuple[int, ...]:
        """π(N(π⁻¹(w))), sorted."""
        u = self.pi.inverse(w)
        return tuple(sorted(self.pi.forward(x) for x in self.true_neighbors(u)))

    def materialize(self) -> LabeledGraph:
        """The relabelled G ∪ H as a plain graph (toy N only)."""
        edges = []
        for u in range(self.N):
            for x in self.true_neighbors(u):
                if u < x:
                    edges.append((self.pi.forward(u), self.pi.forward(x)))
        return LabeledGraph.from_edges(self.N, edges, delta=max(self.delta, self.h.degree_bound(), 0))


def make_world(g: LabeledGraph, h: HSpec, N: int, pi: PermutationHandle) -> VirtualWorld:
    return VirtualWorld(g, h, N, pi)


def relabeled_probe(world: VirtualWorld, w: int) -> Tuple[int, ...]:
    return world.relabeled_probe(w)


PROBE_KINDS = ("local-g", "local-h", "global-h", "global-g")


@dataclass
class ProbeStep:
    step: int
    probed: int
    preimage: int
    kind: str


@dataclass
class DiscoveredSet:
    """True identifiers revealed so far, with the step counter."""

    members: Set[int] = field(default_factory=set)
    step: int = 0

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, u: int) -> bool:
        return u in self.members


@dataclass
class QueryOutcome:
    """Result of simulating one query; `answer` is in true identifiers."""

    vertex: int
    success: bool
    answer: Any = None
    g_probes: int = 0
    h_probes: int = 0
    failed_probe: Optional[int] = None
    discovered: List[int] = field(default_factory=list)
    steps: List[ProbeStep] = field(default_factory=list)
    transcript: ProbeTranscript = field(default_factory=ProbeTranscript)

    @property
    def probes(self) -> int:
        return self.g_probes + self.h_probes

    @property
    def g_probed(self) -> List[int]:
        """Distinct G vertices probed, in first-probe order."""
        seen: List[int] = []
        for s in self.steps:
            if s.kind == "local-g" and s.preimage not in seen:
                seen.append(s.preimage)
        return seen

    def to_record(self) -> Dict[str, Any]:
        return {
            "vertex": self.vertex,
            "success": self.success,
            "answer": self.answer,
            "g_probes": self.g_probes,
            "h_probes": self.h_probes,
            "failed_probe": self.failed_probe,
            "discovered": len(self.discovered),
        }


class _SimulationFailed(Exception):
    def __init__(self, probed: int):
        super().__init__(probed)
        self.probed = probed


def discovered_bound(delta: int, t: int) -> int:
    """k = 1 + (Δ+1)·t: at most this many identifiers are revealed in t probes."""
    return 1 + (delta + 1) * t


def simulate_query(
    world: VirtualWorld,
    alg: ProbeAlgorithm,
    v: int,
    budget: Optional[int] = None,
    seed: int = 0,
    seed_bits: int = 0,
) -> QueryOutcome:
    """
    Answer query v of G by running `alg` on π(v) inside the virtual world.

    A probe of w with u = π⁻¹(w) is local if u is already discovered and is
    answered from G or H; a global probe into H is answered from H's known
    structure and adds u; a global probe into G fails the simulation, even
    when u is close to v. The discovered-set invariant is checked after every
    probe.

    Raises:
        ValueError: If v is not a vertex of G or alg keeps state
        ProbeBudgetExceeded: If alg exceeds its budget
        InvariantViolation: If the discovered-set invariant breaks
    """
    g = world.g
    if not 0 <= v < g.n:
        raise ValueError(f"query {v} is not a vertex of G")
    if not alg.is_stateless:
        raise ValueError(f"{alg.name} keeps state; only stateless handles can be simulated")
    t = budget if budget is not None else alg.complexity(world.N)
    k = discovered_bound(world.delta, t)
    dist = distances_from(g, v)
    q = DiscoveredSet(members={v})
    outcome = QueryOutcome(vertex=v, success=False)

    def probe(w: int) -> Tuple[int, ...]:
        q.step += 1
        u = world.pi.inverse(w)
        if u in q:
            kind = "local-g" if world.in_g(u) else "local-h"
        elif not world.in_g(u):
            kind = "global-h"
        else:
            outcome.steps.append(ProbeStep(q.step, w, u, "global-g"))
            raise _SimulationFailed(w)
        outcome.steps.append(ProbeStep(q.step, w, u, kind))
        nbrs = world.true_neighbors(u)
        q.members.add(u)
        q.members.update(nbrs)
        if kind == "local-g":
            outcome.g_probes += 1
        else:
            outcome.h_probes += 1
        _check_invariant(world, q, dist, k)
        return tuple(world.pi.forward(x) for x in nbrs)

    ctx = LcaContext(seed=seed, seed_bits=seed_bits, state=StateBuffer(0), probe_budget=t)
    try:
        answer, transcript = run_query(alg, probe, world.N, world.delta, world.pi.forward(v), ctx)
    except _SimulationFailed as failure:
        outcome.failed_probe = failure.probed
    else:
        outcome.success = True
        outcome.transcript = transcript
        outcome.answer = _translate(world, alg, answer)
    outcome.discovered = sorted(q.members)
    return outcome


def _check_invariant(world: VirtualWorld, q: DiscoveredSet, dist: Dict[int, int], k: int) -> None:
    if len(q) > k:
        raise InvariantViolation(f"discovered set has {len(q)} members, bound is {k}")
    for u in q.members:
        if world.in_g(u) and dist.get(u, q.step + 1) > q.step:
            raise InvariantViolation(f"G vertex {u} discovered at step {q.step} but lies farther away")


def _translate(world: VirtualWorld, alg: ProbeAlgorithm, answer: Any) -> Any:
    """Vertex-valued answers come back as relabelled ids; map them to true ids."""
    if alg.answer_is_vertex and isinstance(answer, int) and answer >= 0:
        return world.pi.inverse(answer)
    return answer

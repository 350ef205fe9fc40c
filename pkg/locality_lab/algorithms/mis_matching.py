"""MIS and maximal matching from a (Δ+1)-colouring, in LOCAL and as stateless LCAs."""

from __future__ import annotations

from typing import Any, Dict, NamedTuple, Optional, Tuple

from locality_lab.engine.base import ProbeAlgorithm
from locality_lab.engine.lca import LcaContext
from locality_lab.engine.local import LocalView, SynchronousAlgorithm
from locality_lab.engine.transcript import ProbeOracle

from .coloring import ERROR_LABEL, ForestDecompositionColoring
from .conversions import CachedProber, LocalToLca, ball_probe_bound

# -1 already means "unmatched"
MATCHING_ERROR = -2


class _SweepState(NamedTuple):
    round: int
    color: int
    selected: bool


class ColorSweepMis(SynchronousAlgorithm):
    """LOCAL MIS: colour class c joins in round c unless a neighbour already joined."""

    error_label = ERROR_LABEL

    def __init__(self, coloring: ForestDecompositionColoring):
        self.coloring = coloring
        self.delta = coloring.delta
        self.name = f"mis-local({coloring.name})"
        self.labels = frozenset({0, 1, ERROR_LABEL})

    def setup_radius(self, n: int) -> int:
        return self.coloring.radius(n)

    def rounds(self, n: int) -> int:
        return self.delta + 1

    def initial_state(self, view: LocalView, u: int) -> _SweepState:
        color = self.coloring.evaluate(view.sub_view(u, self.setup_radius(view.n)))
        return _SweepState(0, color, False)

    def step(self, u: int, state: _SweepState, neighbor_states: Dict[int, _SweepState], n: int) -> _SweepState:
        joins = state.color == state.round and not any(s.selected for s in neighbor_states.values())
        return state._replace(round=state.round + 1, selected=state.selected or joins)

    def output(self, u: int, state: _SweepState) -> int:
        if state.color == ERROR_LABEL:
            return ERROR_LABEL
        return 1 if state.selected else 0


class ColorSweepMisLca(ProbeAlgorithm):
    """
    Stateless MIS LCA by recursive colour-class sweep.

    v is in the set iff no neighbour of smaller colour is in the set; colours
    come from the colouring evaluated on probed balls, and every identifier is
    probed at most once per query.
    """

    def __init__(self, coloring: ForestDecompositionColoring):
        self.coloring = coloring
        self.delta = coloring.delta
        self.name = f"mis({coloring.name})"
        self.labels = frozenset({0, 1, ERROR_LABEL})

    def complexity(self, n: int) -> int:
        return min(n, ball_probe_bound(self.delta, self.coloring.radius(n) + self.delta))

    def answer(self, oracle: ProbeOracle, query: int, ctx: LcaContext) -> int:
        prober = CachedProber(oracle)
        radius = self.coloring.radius(oracle.n)
        colors: Dict[int, int] = {}
        memo: Dict[int, bool] = {}

        def color(u: int) -> int:
            if u not in colors:
                colors[u] = self.coloring.evaluate(prober.ball(u, radius))
            return colors[u]

        def selected(u: int) -> bool:
            if u not in memo:
                cu = color(u)
                memo[u] = cu == 0 or all(not selected(w) for w in prober(u) if 0 <= color(w) < cu)
            return memo[u]

        if color(query) == ERROR_LABEL:
            return ERROR_LABEL
        return 1 if selected(query) else 0


class _ProposalState(NamedTuple):
    round: int
    color: int
    neighbors: Tuple[int, ...]
    partner: Optional[int]
    proposal: Optional[int]


class ProposalMatching(SynchronousAlgorithm):
    """
    LOCAL maximal matching driven by a (Δ+1)-colouring.

    Phase c gives colour class c up to Δ proposal sub-rounds: an unmatched
    node proposes to its smallest unmatched neighbour, which accepts the
    smallest proposer. Each sub-round is a propose round and an accept round;
    a last round lets the final proposers confirm. Output is the partner id or -1.
    """

    answer_is_vertex = True
    error_label = MATCHING_ERROR

    def __init__(self, coloring: ForestDecompositionColoring):
        self.coloring = coloring
        self.delta = coloring.delta
        self.name = f"matching-local({coloring.name})"

    def setup_radius(self, n: int) -> int:
        return self.coloring.radius(n)

    def rounds(self, n: int) -> int:
        return 2 * self.delta * (self.delta + 1) + 1

    def initial_state(self, view: LocalView, u: int) -> _ProposalState:
        color = self.coloring.evaluate(view.sub_view(u, self.setup_radius(view.n)))
        return _ProposalState(0, color, tuple(view.neighbors(u)), None, None)

    def _confirm(self, u: int, state: _ProposalState, neighbor_states: Dict[int, _ProposalState]) -> _ProposalState:
        if state.partner is None and state.proposal is not None:
            if neighbor_states[state.proposal].partner == u:
                return state._replace(partner=state.proposal, proposal=None)
            return state._replace(proposal=None)
        return state

    def step(self, u: int, state: _ProposalState, neighbor_states: Dict[int, _ProposalState], n: int) -> _ProposalState:
        r = state.round
        nxt = state._replace(round=r + 1)
        if self.delta == 0 or r == self.rounds(n) - 1:
            return self._confirm(u, nxt, neighbor_states)
        phase, sub = divmod(r, 2 * self.delta)
        if sub % 2 == 0:
            nxt = self._confirm(u, nxt, neighbor_states)
            if nxt.partner is None and state.color == phase:
                free = [w for w in state.neighbors if neighbor_states[w].partner is None]
                nxt = nxt._replace(proposal=min(free) if free else None)
            return nxt
        if state.partner is None and state.color != phase:
            proposers = [w for w in state.neighbors if neighbor_states[w].proposal == u]
            if proposers:
                nxt = nxt._replace(partner=min(proposers))
        return nxt

    def output(self, u: int, state: _ProposalState) -> int:
        if state.color == ERROR_LABEL:
            return MATCHING_ERROR
        return -1 if state.partner is None else state.partner


def mis_from_coloring(coloring: ForestDecompositionColoring) -> ColorSweepMisLca:
    return ColorSweepMisLca(coloring)


def maximal_matching(coloring: ForestDecompositionColoring) -> LocalToLca:
    """Stateless matching LCA: the proposal protocol evaluated on the probed ball."""
    return LocalToLca(ProposalMatching(coloring), delta=coloring.delta)

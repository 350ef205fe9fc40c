"""Deterministic O(log* n) colouring: forest decomposition plus Cole-Vishkin."""

from __future__ import annotations

from typing import Dict, NamedTuple, Optional, Tuple

from locality_lab.engine.local import LocalView, SynchronousAlgorithm

ERROR_LABEL = -1


def cv_iterations(n: int) -> int:
    """Cole-Vishkin iterations that bring colours below [0, n) down to [0, 6)."""
    bound = max(n, 1)
    iterations = 0
    while bound > 6:
        bound = 2 * max(1, (bound - 1).bit_length())
        iterations += 1
    return iterations


def _cv_step(color: int, parent_color: Optional[int]) -> int:
    if parent_color is None:
        return color & 1
    diff = color ^ parent_color
    i = (diff & -diff).bit_length() - 1
    return 2 * i + ((color >> i) & 1)


def _smallest_free(palette: int, used) -> int:
    for c in range(palette):
        if c not in used:
            return c
    raise AssertionError("palette exhausted; colouring was not proper")


class _ForestState(NamedTuple):
    round: int
    parents: Tuple[Optional[int], ...]
    colors: Tuple[int, ...]
    product: Optional[int]


class ForestDecompositionColoring(SynchronousAlgorithm):
    """
    (Δ+1)-colouring of graphs with degree at most Δ.

    Node u points at its j-th higher-identifier neighbour in forest j, which
    splits the edges into Δ rooted forests. Each forest is 3-coloured by
    Cole-Vishkin bit reduction followed by three shift-down/recolour pairs;
    the product of the forest colours is a proper 3^Δ colouring, reduced to
    Δ+1 colours by removing one colour per round.
    """

    error_label = ERROR_LABEL

    def __init__(self, delta: int, name: Optional[str] = None):
        if delta < 0:
            raise ValueError("delta must be non-negative")
        self.delta = delta
        self.name = name or f"coloring-delta{delta}+1"
        self.labels = frozenset(range(delta + 1)) | {ERROR_LABEL}

    # schedule: CV iterations, 6 forest rounds, then colour reduction
    def _schedule(self, n: int) -> Tuple[int, int]:
        cv = cv_iterations(n)
        return cv, cv + 6

    def rounds(self, n: int) -> int:
        _, forest_done = self._schedule(n)
        return forest_done + 3 ** self.delta - (self.delta + 1)

    def rejects(self, view: LocalView) -> bool:
        inner = view.radius - 1
        return any(
            len(view.neighbors(u)) > self.delta for u in view.vertices if view.distance(u) <= inner
        )

    def initial_state(self, view: LocalView, u: int) -> _ForestState:
        higher = sorted(w for w in view.neighbors(u) if w > u)
        parents = tuple(higher[j] if j < len(higher) else None for j in range(self.delta))
        return _ForestState(0, parents, tuple(u for _ in range(self.delta)), None)

    def _product(self, state: _ForestState) -> int:
        if state.product is not None:
            return state.product
        return sum(c * 3 ** j for j, c in enumerate(state.colors))

    def step(self, u: int, state: _ForestState, neighbor_states: Dict[int, _ForestState], n: int) -> _ForestState:
        r = state.round
        cv, forest_done = self._schedule(n)
        if r < cv:
            colors = tuple(
                _cv_step(c, None if p is None else neighbor_states[p].colors[j])
                for j, (c, p) in enumerate(zip(state.colors, state.parents))
            )
            return state._replace(round=r + 1, colors=colors)
        if r < forest_done:
            offset = r - cv
            target = 5 - offset // 2
            colors = []
            for j, (c, p) in enumerate(zip(state.colors, state.parents)):
                if offset % 2 == 0:
                    # shift-down; roots move to a fresh colour in {0,1,2}
                    if p is None:
                        colors.append(_smallest_free(3, {c}))
                    else:
                        colors.append(neighbor_states[p].colors[j])
                elif c == target:
                    used = {neighbor_states[p].colors[j]} if p is not None else set()
                    used |= {s.colors[j] for w, s in neighbor_states.items() if s.parents[j] == u}
                    colors.append(_smallest_free(3, used))
                else:
                    colors.append(c)
            return state._replace(round=r + 1, colors=tuple(colors))
        target = 3 ** self.delta - 1 - (r - forest_done)
        mine = self._product(state)
        if mine == target:
            used = {self._product(s) for s in neighbor_states.values()}
            mine = _smallest_free(self.delta + 1, used)
        return state._replace(round=r + 1, product=mine)

    def output(self, u: int, state: _ForestState) -> int:
        return self._product(state)


class CycleColoring(ForestDecompositionColoring):
    """3-colouring of cycles; any node of degree other than 2 in view yields the error label."""

    def __init__(self, declared_n: Optional[int] = None):
        super().__init__(delta=2, name="coloring3-cycle")
        self.declared_n = declared_n

    def rejects(self, view: LocalView) -> bool:
        inner = view.radius - 1
        return any(len(view.neighbors(u)) != 2 for u in view.vertices if view.distance(u) <= inner)

    @property
    def declared_rounds(self) -> Optional[int]:
        return None if self.declared_n is None else self.rounds(self.declared_n)


def cole_vishkin_cycle(n: Optional[int] = None) -> CycleColoring:
    """LOCAL 3-colouring of cycles in O(log* n) + 12 rounds; radius is rounds + 1."""
    return CycleColoring(declared_n=n)

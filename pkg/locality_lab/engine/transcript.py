"""Probe transcripts and the budgeted probe oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from locality_lab.errors import ProbeBudgetExceeded

ProbeEntry = Tuple[int, Tuple[int, ...]]


@dataclass
class ProbeTranscript:
    """Ordered (probed id, sorted neighbour list) pairs of one query or tree."""

    entries: List[ProbeEntry] = field(default_factory=list)

    @property
    def total_probes(self) -> int:
        return len(self.entries)

    def record(self, probed: int, neighbors: Sequence[int]) -> None:
        self.entries.append((probed, tuple(neighbors)))

    def probed_ids(self) -> List[int]:
        return [p for p, _ in self.entries]

    def key(self) -> Tuple[ProbeEntry, ...]:
        """Canonical hashable form; the sample space of transcript distributions."""
        return tuple(self.entries)

    def to_records(self) -> List[Dict[str, object]]:
        return [{"probed": p, "neighbors": list(nbrs)} for p, nbrs in self.entries]

    @classmethod
    def from_records(cls, records: Sequence[Dict[str, object]]) -> "ProbeTranscript":
        return cls([(int(r["probed"]), tuple(int(x) for x in r["neighbors"])) for r in records])


class ProbeOracle:
    """
    Adjacency oracle handed to decision trees and LCAs.

    Every probe returns the full sorted neighbour list of one identifier and is
    appended to the transcript. The budget is a hard cap: the probe that would
    exceed it raises instead of being answered.
    """

    def __init__(
        self,
        adjacency: Callable[[int], Sequence[int]],
        n: int,
        delta: int,
        vertex: int,
        budget: Optional[int] = None,
    ):
        self._adjacency = adjacency
        self.n = n
        self.delta = delta
        self.vertex = vertex
        self.budget = budget
        self.transcript = ProbeTranscript()

    def probe(self, w: int) -> Tuple[int, ...]:
        if not 0 <= w < self.n:
            raise ValueError(f"probe of identifier {w} outside [0, {self.n})")
        if self.budget is not None and self.transcript.total_probes >= self.budget:
            raise ProbeBudgetExceeded(self.vertex, self.budget)
        answer = tuple(sorted(self._adjacency(w)))
        self.transcript.record(w, answer)
        return answer

    @property
    def probes_used(self) -> int:
        return self.transcript.total_probes

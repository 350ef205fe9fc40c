"""Base algorithm interface shared by the three execution models."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Any, FrozenSet, Optional

if TYPE_CHECKING:
    from .lca import LcaContext
    from .local import LocalView
    from .transcript import ProbeOracle

MODELS = ("local", "partree", "lca")


class AlgorithmHandle(ABC):
    """
    Abstract base class for every algorithm run by the lab.

    A handle carries its model tag, an optional declared label set and the
    complexity function t(n): rounds for LOCAL handles, probes per query for
    decision trees and LCAs.
    """

    model: str | None = None  # Override in subclasses: "local", "partree" or "lca"
    name: str = "unnamed"
    labels: Optional[FrozenSet[Any]] = None
    state_capacity: int = 0
    answer_is_vertex: bool = False

    @abstractmethod
    def complexity(self, n: int) -> int:
        """
        Declared complexity on identifier space [n].

        Args:
            n: Size of the identifier space the algorithm is told about

        Returns:
            Rounds (local) or maximum probes per query (partree/lca)
        """
        pass

    def seed_length(self, n: int) -> int:
        """Declared seed length s(n) in bits; deterministic handles use none."""
        return 0

    @property
    def is_stateless(self) -> bool:
        return self.state_capacity == 0

    def check_label(self, label: Any) -> Any:
        if self.labels is not None and label not in self.labels:
            raise ValueError(f"{self.name} produced label {label!r} outside its declared set")
        return label

    def get_model(self) -> str:
        return self.model or "unknown"

    def __repr__(self) -> str:
        return f"<{type(self).__name__}(name='{self.name}', model='{self.get_model()}')>"


class LocalAlgorithm(AlgorithmHandle):
    """A LOCAL algorithm: a function of the radius-t ball around the node."""

    model = "local"

    @abstractmethod
    def radius(self, n: int) -> int:
        """Ball radius (= rounds) needed on identifier space [n]."""
        pass

    @abstractmethod
    def evaluate(self, view: "LocalView") -> Any:
        """Output label for view.center computed from the ball alone."""
        pass

    def complexity(self, n: int) -> int:
        return self.radius(n)


class ProbeAlgorithm(AlgorithmHandle):
    """
    A probe-query algorithm: a decision tree (partree) or an LCA.

    `answer` receives the probe oracle, the queried identifier and the LCA
    context. Partree handles must not touch `ctx.state`.
    """

    model = "lca"

    @abstractmethod
    def answer(self, oracle: "ProbeOracle", query: int, ctx: "LcaContext") -> Any:
        pass

    def initial_state(self) -> bytes:
        return b""

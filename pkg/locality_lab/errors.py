"""Exception types shared across the lab."""

from __future__ import annotations

from typing import Optional


class LabError(RuntimeError):
    """Base class for run-time failures that abort an experiment."""

    kind = "lab-error"


class ScaleGuardError(LabError):
    """Parameters exceed a desk-scale guard (enumeration, materialisation)."""

    kind = "scale-guard"


class ProbeBudgetExceeded(LabError):
    """A decision tree or LCA query issued more probes than its budget."""

    kind = "probe-budget"

    def __init__(self, vertex: int, budget: int):
        super().__init__(f"vertex {vertex} exceeded probe budget {budget}")
        self.vertex = vertex
        self.budget = budget


class StateCapacityExceeded(LabError):
    """An LCA wrote more bytes to its state than it declared."""

    kind = "state-capacity"

    def __init__(self, requested: int, capacity: int):
        super().__init__(f"state write of {requested} bytes exceeds capacity {capacity}")
        self.requested = requested
        self.capacity = capacity


class SamplingBudgetExhausted(LabError):
    """A rejection sampler ran out of attempts."""

    kind = "sampling-budget"

    def __init__(self, message: str, attempts: int):
        super().__init__(f"{message} (after {attempts} attempts)")
        self.attempts = attempts


class InvariantViolation(LabError):
    """The discovered-set invariant broke; always an internal bug."""

    kind = "invariant"


class LocalizationFailure(LabError):
    """Every retry of a localized LCA run had at least one failed query."""

    kind = "localization"

    def __init__(self, message: str, attempts: int, report: Optional[dict] = None):
        super().__init__(message)
        self.attempts = attempts
        self.report = report


class AcceptanceError(LabError):
    """An experiment's built-in check did not hold."""

    kind = "acceptance"


class ConfigError(ValueError):
    """Experiment configuration does not match the schema."""

    kind = "config"


class GraphFormatError(ValueError):
    """A graph file violates the text format."""

    kind = "graph-format"

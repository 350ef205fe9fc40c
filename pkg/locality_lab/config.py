from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from locality_lab.errors import ConfigError

COMMANDS = (
    "gen-graph",
    "run-local",
    "run-lca",
    "run-partree",
    "localize",
    "estimate-failure",
    "derandomize-search",
    "lowerbound",
    "perm-test",
    "two-path-gap",
)

H_CHOICES = ("default", "empty", "cycle")
MODES = ("exact", "sampled")

THREADS_ENV = "LOCALITY_LAB_THREADS"

# Execution-only fields; they do not change what an experiment computes.
RUNTIME_FIELDS = ("out_dir", "db_url", "threads", "transcripts")


def _maybe_load_yaml(path: Path) -> Optional[dict]:
    try:
        import yaml  # type: ignore

        with path.open("r", encoding="utf-8") as f:
            return yaml.safe_load(f)
    except ModuleNotFoundError:  # pragma: no cover - optional dependency
        raise RuntimeError(
            "YAML config requested but PyYAML is not installed. Install pyyaml or use JSON."
        )


def _load_json(path: Path) -> dict:
    with path.open("r", encoding="utf-8") as f:
        return json.load(f)


@dataclass
class FamilyConfig:
    kind: str = "kwise"
    k: Optional[int] = None
    epsilon: Optional[str] = None  # rational as text, e.g. "1/1024"
    rounds: Optional[int] = None

    def epsilon_fraction(self) -> Optional[Fraction]:
        return None if self.epsilon is None else Fraction(self.epsilon)


@dataclass
class ModelConfig:
    t: Optional[int] = None
    n_rule: str = "n^4"
    h: str = "default"
    budget: int = 1
    target: int = 0
    delta: Optional[int] = None
    max_retries: int = 0
    guard_constant: float = 64.0

    def domain(self, n: int) -> int:
        """Identifier space N for a graph on n vertices."""
        return n ** 4 if self.n_rule == "n^4" else int(self.n_rule)


@dataclass
class ExperimentConfig:
    command: str = "run-lca"
    graph: str = "cycle:8"
    graph_file: Optional[str] = None
    algorithm: str = "coloring3"
    model: ModelConfig = field(default_factory=ModelConfig)
    family: FamilyConfig = field(default_factory=FamilyConfig)
    trials: int = 1
    seed: int = 0
    mode: str = "exact"
    samples: int = 10_000
    sizes: List[int] = field(default_factory=list)
    queries: Optional[List[int]] = None
    out_dir: str = "reports"
    transcripts: bool = False
    db_url: Optional[str] = None
    threads: Optional[int] = None

    def worker_count(self) -> int:
        if self.threads is not None:
            return max(1, self.threads)
        return max(1, int(os.environ.get(THREADS_ENV, "1")))


def config_from_mapping(raw: Mapping[str, Any]) -> ExperimentConfig:
    """Normalise a raw mapping (config file or CLI flags) and validate it."""
    raw = dict(raw or {})
    try:
        cfg = _build_config(raw)
    except (AttributeError, TypeError, ValueError) as e:
        raise ConfigError(f"malformed config value: {e}") from e
    _validate_config(cfg)
    return cfg


def _build_config(raw: Dict[str, Any]) -> ExperimentConfig:
    m = raw.get("model") or {}
    model = ModelConfig(
        t=None if m.get("t") is None else int(m["t"]),
        n_rule=str(m.get("n_rule", "n^4")),
        h=str(m.get("h", "default")),
        budget=int(m.get("budget", 1)),
        target=int(m.get("target", 0)),
        delta=None if m.get("delta") is None else int(m["delta"]),
        max_retries=int(m.get("max_retries", 0)),
        guard_constant=float(m.get("guard_constant", 64.0)),
    )
    f = raw.get("family") or {}
    family = FamilyConfig(
        kind=str(f.get("kind", "kwise")),
        k=None if f.get("k") is None else int(f["k"]),
        epsilon=None if f.get("epsilon", f.get("eps")) is None else str(f.get("epsilon", f.get("eps"))),
        rounds=None if f.get("rounds") is None else int(f["rounds"]),
    )
    queries = raw.get("queries")
    return ExperimentConfig(
        command=str(raw.get("command", "run-lca")),
        graph=str(raw.get("graph", "cycle:8")),
        graph_file=raw.get("graph_file"),
        algorithm=str(raw.get("algorithm", raw.get("alg", "coloring3"))),
        model=model,
        family=family,
        trials=int(raw.get("trials", 1)),
        seed=int(raw.get("seed", 0)),
        mode=str(raw.get("mode", "exact")),
        samples=int(raw.get("samples", 10_000)),
        sizes=[int(s) for s in raw.get("sizes") or []],
        queries=None if queries is None else [int(q) for q in queries],
        out_dir=str(raw.get("out_dir", "reports")),
        transcripts=bool(raw.get("transcripts", False)),
        db_url=raw.get("db_url"),
        threads=None if raw.get("threads") is None else int(raw["threads"]),
    )


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {path}")

    if path.suffix.lower() in {".yaml", ".yml"}:
        raw = _maybe_load_yaml(path)
    elif path.suffix.lower() == ".json":
        raw = _load_json(path)
    else:
        raise ValueError("Unsupported config extension. Use .yaml/.yml or .json")
    if raw is not None and not isinstance(raw, dict):
        raise ConfigError("config file must hold a mapping at the top level")
    return config_from_mapping(raw or {})


def _validate_config(cfg: ExperimentConfig) -> None:
    """
    Raises:
        ConfigError: On any schema violation
    """
    from locality_lab.algorithms.registry import resolve
    from locality_lab.graphs.core import GraphSpec
    from locality_lab.permutations.base import FAMILIES

    if cfg.command not in COMMANDS:
        raise ConfigError(f"unknown command {cfg.command!r}; expected one of {COMMANDS}")
    try:
        resolve(cfg.algorithm)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    if cfg.family.kind not in FAMILIES:
        raise ConfigError(f"unknown permutation family {cfg.family.kind!r}")
    if cfg.model.h not in H_CHOICES:
        raise ConfigError(f"unknown H kind {cfg.model.h!r}; expected one of {H_CHOICES}")
    if cfg.mode not in MODES:
        raise ConfigError(f"unknown mode {cfg.mode!r}")
    if cfg.trials < 1:
        raise ConfigError("trials must be >= 1")
    if cfg.samples < 1:
        raise ConfigError("samples must be >= 1")
    if cfg.seed < 0:
        raise ConfigError("seed must be non-negative")
    if cfg.model.n_rule != "n^4":
        if not cfg.model.n_rule.isdigit():
            raise ConfigError(f"N-rule must be 'n^4' or an integer, got {cfg.model.n_rule!r}")
    if cfg.model.t is not None and cfg.model.t < 0:
        raise ConfigError("t must be non-negative")
    if cfg.model.max_retries < 0:
        raise ConfigError("max_retries must be non-negative")
    if cfg.family.epsilon is not None:
        try:
            eps = Fraction(cfg.family.epsilon)
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigError(f"epsilon {cfg.family.epsilon!r} is not a rational number") from e
        if not 0 < eps < 1:
            raise ConfigError("epsilon must lie in (0, 1)")
    if any(s < 1 for s in cfg.sizes):
        raise ConfigError("sizes must be positive")
    if cfg.graph_file is None:
        try:
            GraphSpec.parse(cfg.graph)
        except ValueError as e:
            raise ConfigError(str(e)) from e


def config_to_dict(cfg: ExperimentConfig, runtime: bool = True) -> Dict[str, Any]:
    """Plain dict of the config; `runtime=False` drops the execution-only fields."""
    raw = asdict(cfg)
    return raw if runtime else {k: v for k, v in raw.items() if k not in RUNTIME_FIELDS}


def config_hash(cfg: ExperimentConfig) -> str:
    """sha256 of the canonical JSON of every field that affects results."""
    payload = config_to_dict(cfg, runtime=False)
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()

"""two-path-gap: one-probe state-full leader election against the stateless scan."""

from __future__ import annotations

from typing import Any, Dict, List

import numpy as np

from locality_lab.algorithms.two_path import (
    adversarial_two_path_paths,
    two_path_stateless_baseline,
    two_path_statefull,
)
from locality_lab.algorithms.verifiers import verify_solution
from locality_lab.config import ExperimentConfig
from locality_lab.engine.lca import LcaContext, run_lca
from locality_lab.graphs.generators import two_path_graph
from locality_lab.services.seeding import derive_seed

from .base import BaseExperiment, ExperimentResult

DEFAULT_SIZES = (10, 50, 100, 200)
LINEAR_FRACTION = 0.5


def _size_row(n: int, trials: int, seed: int) -> Dict[str, Any]:
    statefull = two_path_statefull(n)
    baseline = two_path_stateless_baseline()
    max_statefull = 0
    min_statefull = None
    leader_failures = 0
    for i in range(trials):
        s = derive_seed(seed, f"two-path:{n}", i)
        g = two_path_graph(n, seed=s)
        order = [int(q) for q in np.random.default_rng(s).permutation(n)]
        run = run_lca(statefull, g, order, LcaContext.for_algorithm(statefull, n))
        probes = [t.total_probes for t in run.transcripts]
        max_statefull = max(max_statefull, *probes)
        min_statefull = min(probes) if min_statefull is None else min(min_statefull, *probes)
        if not verify_solution("two-path-leader", g, dict(zip(order, run.answers))).valid:
            leader_failures += 1
    adversarial = two_path_graph(n, paths=adversarial_two_path_paths(n))
    base_run = run_lca(baseline, adversarial, list(range(n)), LcaContext.for_algorithm(baseline, n))
    worst = max(t.total_probes for t in base_run.transcripts)
    baseline_valid = verify_solution("two-path-leader", adversarial, dict(enumerate(base_run.answers))).valid
    return {
        "n": n,
        "trials": trials,
        "statefull_min_probes": min_statefull,
        "statefull_max_probes": max_statefull,
        "leader_failures": leader_failures,
        "stateless_worst_probes": worst,
        "stateless_ratio": worst / n,
        "stateless_valid": baseline_valid,
    }


class TwoPathGapExperiment(BaseExperiment):
    command = "two-path-gap"

    def run(self, cfg: ExperimentConfig) -> ExperimentResult:
        sizes = cfg.sizes or list(DEFAULT_SIZES)
        print(f"[INFO] Two-path gap at n in {sizes}, {cfg.trials} seeded instance(s) each")
        rows: List[Dict[str, Any]] = self.parallel_map(lambda n: _size_row(n, cfg.trials, cfg.seed), sizes)
        problems = []
        for row in rows:
            if row["statefull_min_probes"] != 1 or row["statefull_max_probes"] != 1:
                problems.append(f"n={row['n']}: state-full probes not exactly 1")
            if row["leader_failures"]:
                problems.append(f"n={row['n']}: {row['leader_failures']} instance(s) without exactly one leader")
            if row["stateless_worst_probes"] < LINEAR_FRACTION * row["n"]:
                problems.append(f"n={row['n']}: stateless worst case below {LINEAR_FRACTION}·n")
        summary = {
            "sizes": sizes,
            "rows": rows,
            "linear_fraction": LINEAR_FRACTION,
            "seed_accounting": {"algorithm_bits": 0, "family_bits": 0, "total_bits": 0},
        }
        return ExperimentResult(summary=summary, rows=rows, failed_check="; ".join(problems) or None)

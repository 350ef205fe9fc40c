"""perm-test: k-tuple uniformity of a permutation family."""

from __future__ import annotations

from fractions import Fraction

from locality_lab.config import ExperimentConfig
from locality_lab.permutations import make_family
from locality_lab.permutations.quality import tuple_uniformity_test

from .base import BaseExperiment, ExperimentResult

DEFAULT_K = 2
DEFAULT_EPSILON = Fraction(1, 16)


class PermTestExperiment(BaseExperiment):
    """
    N is the integer N-rule; the graph is not used. Exact mode runs the
    exhaustive test over the family's whole law, sampled mode draws `trials`
    seeds.
    """

    command = "perm-test"

    def run(self, cfg: ExperimentConfig) -> ExperimentResult:
        if cfg.model.n_rule == "n^4":
            raise ValueError("perm-test needs an explicit N-rule (the domain size)")
        N = int(cfg.model.n_rule)
        k = cfg.family.k if cfg.family.k is not None else DEFAULT_K
        eps = cfg.family.epsilon_fraction() or DEFAULT_EPSILON
        family = make_family(cfg.family.kind, N, k=k, epsilon=eps, rounds=cfg.family.rounds)
        mode = "exhaustive" if cfg.mode == "exact" else "sampled"
        print(f"[INFO] {mode} {k}-tuple test of the {family.family} family on [{N}]")
        quality = tuple_uniformity_test(family, N, k, mode=mode, trials=cfg.trials, seed=cfg.seed)
        record = quality.to_record()
        rows = [
            {"tuple": " ".join(map(str, xs)), "distance": str(d) if isinstance(d, Fraction) else d}
            for xs, d in sorted(quality.per_tuple.items())
        ]
        summary = {
            "quality": record,
            "certified": getattr(family, "certified", None),
            "seed_accounting": {"algorithm_bits": 0, "family_bits": family.seed_bits, "total_bits": family.seed_bits},
        }
        failed = None
        if mode == "exhaustive" and not quality.within_epsilon:
            failed = f"measured distance {quality.measured_distance} exceeds declared ε {quality.epsilon}"
        return ExperimentResult(summary=summary, rows=rows, columns=("tuple", "distance"), failed_check=failed)

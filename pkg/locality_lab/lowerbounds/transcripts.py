"""Exact and sampled probe-transcript distributions under the pair-swap perturbation."""

from __future__ import annotations

import hashlib
import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from locality_lab.engine.base import ProbeAlgorithm
from locality_lab.engine.lca import LcaContext, StateBuffer, run_query
from locality_lab.graphs.core import LabeledGraph
from locality_lab.services.stats import chi_square

from .pairs import InstancePair, PerturbationSpace, build_pair

MODES = ("exact", "sampled")

TranscriptKey = Tuple[Tuple[int, Tuple[int, ...]], ...]
Probability = Union[Fraction, float]


def transcript_hash(key: TranscriptKey) -> str:
    """Short stable digest of a canonical transcript."""
    payload = json.dumps([[p, list(nbrs)] for p, nbrs in key], separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass
class TranscriptDistribution:
    """Canonical transcript -> probability, with the answer each transcript leads to."""

    probabilities: Dict[TranscriptKey, Probability]
    answers: Dict[TranscriptKey, Any]
    mode: str
    outcomes: int
    counts: Dict[TranscriptKey, int] = field(default_factory=dict)

    def expected_ones(self) -> Probability:
        """Probability that the tree answers 1."""
        return sum((p for key, p in self.probabilities.items() if self.answers[key] == 1), Fraction(0))

    def total(self) -> Probability:
        return sum(self.probabilities.values(), Fraction(0))


def _perturbed_adjacency(graph: LabeledGraph, sigma):
    def neighbors(w: int) -> List[int]:
        return [int(sigma[x]) for x in graph.neighbors(int(sigma[w]))]

    return neighbors


def _run_tree(tree: ProbeAlgorithm, graph: LabeledGraph, v: int, sigma, budget: int):
    ctx = LcaContext(seed=0, seed_bits=0, state=StateBuffer(0), probe_budget=budget)
    return run_query(tree, _perturbed_adjacency(graph, sigma), graph.n, graph.delta, v, ctx)


def transcript_distribution(
    tree: ProbeAlgorithm,
    graph: LabeledGraph,
    v: int,
    pspace: PerturbationSpace,
    mode: str = "exact",
    samples: int = 10_000,
    seed: int = 0,
    budget: Optional[int] = None,
) -> TranscriptDistribution:
    """
    Law of tree T_v's transcript on the perturbed graph p(graph).

    No perturbed graph is built: probes go through σ on the fly.

    Raises:
        ValueError: Unknown mode, stateful tree or graph/space mismatch
        ScaleGuardError: Exact mode with more than 12 pairs
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if not tree.is_stateless:
        raise ValueError("decision trees are stateless")
    if graph.n != 2 * pspace.n:
        raise ValueError("graph must live on the 2n identifiers of the perturbation space")
    limit = budget if budget is not None else tree.complexity(graph.n)
    masks = list(pspace.masks()) if mode == "exact" else pspace.sample_masks(samples, seed)
    counts: Dict[TranscriptKey, int] = defaultdict(int)
    answers: Dict[TranscriptKey, Any] = {}
    for mask in masks:
        answer, transcript = _run_tree(tree, graph, v, pspace.swap_map(mask), limit)
        key = transcript.key()
        counts[key] += 1
        answers[key] = answer
    total = len(masks)
    if mode == "exact":
        probabilities: Dict[TranscriptKey, Probability] = {k: Fraction(c, total) for k, c in counts.items()}
    else:
        probabilities = {k: c / total for k, c in counts.items()}
    return TranscriptDistribution(
        probabilities=probabilities, answers=answers, mode=mode, outcomes=total, counts=dict(counts)
    )


@dataclass
class QueryComparison:
    vertex: int
    equal: bool
    witness: Optional[TranscriptKey] = None
    prob_a: Probability = 0
    prob_b: Probability = 0
    chi2: Optional[float] = None
    p_value: Optional[float] = None

    def to_record(self) -> Dict[str, Any]:
        return {
            "vertex": self.vertex,
            "verdict": "equal" if self.equal else "distinguished",
            "witness_hash": None if self.witness is None else transcript_hash(self.witness),
            "prob_a": str(self.prob_a),
            "prob_b": str(self.prob_b),
            "chi2": self.chi2,
            "p_value": self.p_value,
        }


@dataclass
class IndistinguishabilityVerdict:
    tree: str
    mode: str
    queries: List[QueryComparison]
    expected_ones_a: Probability
    expected_ones_b: Probability

    @property
    def equal(self) -> bool:
        return all(q.equal for q in self.queries)

    @property
    def witness(self) -> Optional[QueryComparison]:
        return next((q for q in self.queries if not q.equal), None)


def compare_distributions(v: int, dist_a: TranscriptDistribution, dist_b: TranscriptDistribution) -> QueryComparison:
    """Exact comparison; the witness is the first differing transcript in canonical order."""
    for key in sorted(set(dist_a.probabilities) | set(dist_b.probabilities)):
        pa = dist_a.probabilities.get(key, Fraction(0))
        pb = dist_b.probabilities.get(key, Fraction(0))
        if pa != pb:
            return QueryComparison(vertex=v, equal=False, witness=key, prob_a=pa, prob_b=pb)
    return QueryComparison(vertex=v, equal=True)


def _chi_square_comparison(v: int, dist_a: TranscriptDistribution, dist_b: TranscriptDistribution) -> QueryComparison:
    keys = sorted(set(dist_a.counts) | set(dist_b.counts))
    observed = [dist_b.counts.get(k, 0) for k in keys]
    expected = [dist_a.counts.get(k, 0) for k in keys]
    stat, p_value = chi_square(observed, expected)
    # sampled mode reports only; equality is not claimed
    return QueryComparison(vertex=v, equal=True, chi2=stat, p_value=p_value)


def indistinguishability_check(
    g: LabeledGraph,
    tree: ProbeAlgorithm,
    t: Optional[int] = None,
    mode: str = "exact",
    samples: int = 10_000,
    seed: int = 0,
    queries: Optional[Sequence[int]] = None,
    pair: Optional[InstancePair] = None,
) -> IndistinguishabilityVerdict:
    """
    Compare T_v's transcript laws on p(A_G) and p(B_G) for every query v in [2n].

    Exact mode decides equality with rational arithmetic and returns a
    witness transcript on the first difference. Sampled mode reports a
    chi-square statistic per query and makes no pass/fail claim.
    """
    pair = pair or build_pair(g)
    pspace = PerturbationSpace(g.n)
    budget = t if t is not None else tree.complexity(2 * g.n)
    comparisons: List[QueryComparison] = []
    ones_a: Probability = Fraction(0) if mode == "exact" else 0.0
    ones_b: Probability = Fraction(0) if mode == "exact" else 0.0
    for v in queries if queries is not None else range(2 * g.n):
        dist_a = transcript_distribution(tree, pair.a, v, pspace, mode, samples, seed, budget)
        dist_b = transcript_distribution(tree, pair.b, v, pspace, mode, samples, seed + 1, budget)
        ones_a += dist_a.expected_ones()
        ones_b += dist_b.expected_ones()
        if mode == "exact":
            comparisons.append(compare_distributions(v, dist_a, dist_b))
        else:
            comparisons.append(_chi_square_comparison(v, dist_a, dist_b))
    return IndistinguishabilityVerdict(
        tree=tree.name, mode=mode, queries=comparisons, expected_ones_a=ones_a, expected_ones_b=ones_b
    )

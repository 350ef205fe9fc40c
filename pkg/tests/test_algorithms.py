"""Tests for the algorithm library, verifiers and exact optimisers."""

import numpy as np
import pytest

from locality_lab.algorithms.coloring import ForestDecompositionColoring, cole_vishkin_cycle, cv_iterations
from locality_lab.algorithms.conversions import ball_probe_bound, local_to_lca
from locality_lab.algorithms.mis_matching import ColorSweepMis, ProposalMatching
from locality_lab.algorithms.optimum import (
    CPSatOptimizer,
    brute_force_independent_set,
    brute_force_max_cut,
)
from locality_lab.algorithms.probes import BallWalker, FarProber, TriangleWalker
from locality_lab.algorithms.registry import (
    AlgorithmParams,
    build_lca,
    build_local,
    problem_for,
    registered_trees,
    resolve,
)
from locality_lab.algorithms.two_path import adversarial_two_path_paths, two_path_stateless_baseline
from locality_lab.algorithms.verifiers import UNMATCHED, verify_solution
from locality_lab.engine.lca import LcaContext, run_lca
from locality_lab.engine.local import run_local
from locality_lab.engine.partree import run_partree
from locality_lab.graphs.core import LabeledGraph
from locality_lab.graphs.generators import cycle_graph, disjoint_union, random_regular_graph, two_path_graph


def test_cv_iterations_small_n():
    assert cv_iterations(6) == 0
    assert cv_iterations(8) == 1
    assert cv_iterations(9) == 2


def test_ball_probe_bound():
    assert ball_probe_bound(2, 0) == 1
    assert ball_probe_bound(2, 3) == 7
    assert ball_probe_bound(3, 2) == 10


def test_cycle_colouring_on_union_and_relabel():
    """Labels stay valid on disjoint unions and after relabelling."""
    g = disjoint_union(cycle_graph(3), cycle_graph(4))
    alg = cole_vishkin_cycle(g.n)
    assert verify_solution("coloring3-cycle", g, run_local(alg, g)).valid
    h = g.relabel([6, 2, 4, 0, 5, 1, 3])
    assert verify_solution("coloring3-cycle", h, run_local(alg, h)).valid


def test_deltaplus1_colouring_on_cubic_graph():
    g = random_regular_graph(12, 3, seed=2)
    labeling = run_local(ForestDecompositionColoring(3), g)
    assert verify_solution("coloring-deltaplus1", g, labeling).valid


def test_mis_and_matching_local():
    g = random_regular_graph(10, 3, seed=5)
    coloring = ForestDecompositionColoring(3)
    assert verify_solution("mis", g, run_local(ColorSweepMis(coloring), g)).valid
    assert verify_solution("maximal-matching", g, run_local(ProposalMatching(coloring), g)).valid


def test_matching_lca_agrees_with_local(cycle9):
    local = build_local("matching", AlgorithmParams(delta=2))
    lca = build_lca("matching", AlgorithmParams(delta=2))
    run = run_lca(lca, cycle9, list(range(9)), LcaContext.for_algorithm(lca, 9))
    assert dict(enumerate(run.answers)) == run_local(local, cycle9)
    assert verify_solution("maximal-matching", cycle9, dict(enumerate(run.answers))).valid


def test_verifier_rejections(cycle8):
    alternating = {v: v % 2 for v in range(8)}
    assert verify_solution("coloring3-cycle", cycle8, alternating).valid

    clash = {**alternating, 1: 0}
    verdict = verify_solution("coloring3-cycle", cycle8, clash)
    assert not verdict.valid
    assert "monochromatic" in verdict.reason

    sparse = {v: 1 if v == 0 else 0 for v in range(8)}
    assert "maximal" in verify_solution("mis", cycle8, sparse).reason

    broken = {v: -1 for v in range(8)}
    broken[0] = 1
    assert "disagree" in verify_solution("maximal-matching", cycle8, broken).reason


def test_verifier_rejects_bad_input(cycle8):
    with pytest.raises(ValueError):
        verify_solution("vertex-cover", cycle8, {v: 0 for v in range(8)})
    with pytest.raises(ValueError):
        verify_solution("mis", cycle8, {0: 1})


def test_optimisation_verdicts_carry_optimum(cycle9):
    labeling = {v: 1 if v in (0, 2, 4, 6) else 0 for v in range(9)}
    verdict = verify_solution("independent-set-value", cycle9, labeling)
    assert verdict.value == 4
    assert verdict.optimum == 4

    sides = {v: v % 2 for v in range(9)}
    verdict = verify_solution("max-cut-value", cycle9, sides)
    # the edge (0, 8) has both ends on side 0
    assert verdict.value == 8
    assert verdict.optimum == 8


def test_cp_sat_matches_brute_force():
    g = random_regular_graph(12, 3, seed=9)
    solver = CPSatOptimizer(time_limit=10.0)
    assert solver.independent_set(g).value == brute_force_independent_set(g).value
    assert solver.max_cut(g).value == brute_force_max_cut(g).value


def test_triangle_walker_detects_triangles(cycle8):
    assert set(run_partree(TriangleWalker(), cycle_graph(3)).labeling.values()) == {1}
    assert set(run_partree(TriangleWalker(), cycle8).labeling.values()) == {0}


def test_far_prober_uses_its_count(cycle8):
    run = run_partree(FarProber(target=11, count=2), cycle8)
    assert all(t.probed_ids() == [3, 3] for t in run.transcripts.values())
    with pytest.raises(ValueError):
        FarProber(0, count=0)


def test_ball_walker_picks_local_minimum(cycle8):
    labeling = run_partree(BallWalker(3), cycle8).labeling
    # each vertex sees itself and both neighbours
    assert [v for v, a in labeling.items() if a == 1] == [0]


def test_stateless_two_path_baseline_scans():
    paths = adversarial_two_path_paths(10)
    g = two_path_graph(10, paths=paths)
    alg = two_path_stateless_baseline()
    run = run_lca(alg, g, list(range(10)), LcaContext.for_algorithm(alg, 10))
    assert verify_solution("two-path-leader", g, dict(enumerate(run.answers))).valid
    assert run.answers[5] == 1
    assert max(t.total_probes for t in run.transcripts) == 9


def test_registry_aliases_and_errors():
    assert resolve("mm").alg_id == "maximal-matching"
    assert resolve("coloring3").alg_id == "coloring3-cycle"
    assert problem_for("two-path-statefull") == "two-path-leader"
    assert problem_for("degree") is None
    with pytest.raises(ValueError):
        resolve("no-such-algorithm")
    with pytest.raises(ValueError):
        build_local("two-path-statefull")


def test_registered_trees_respect_budget():
    assert len(registered_trees(1)) == 6
    trees = registered_trees(3)
    assert len(trees) == 7
    assert all(t.complexity(0) <= 3 for t in trees)
    assert all(t.is_stateless for t in trees)


def test_local_to_lca_rejects_negative_rounds():
    with pytest.raises(ValueError):
        local_to_lca(cole_vishkin_cycle(), r=-1)


def _component(seed):
    """A seeded connected graph of maximum degree at most 3, declared with Δ = 3."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6)) * 2
    g = random_regular_graph(n, 3, seed=seed) if seed % 2 else cycle_graph(n)
    return LabeledGraph.from_edges(n, g.edges(), delta=3)


def _carry(label, mapping, vertex_valued):
    return mapping[label] if vertex_valued and label != UNMATCHED else label


CLOSURE_PROBLEMS = [
    ("mis", "mis", False),
    ("matching", "maximal-matching", True),
    ("coloring", "coloring-deltaplus1", False),
]


@pytest.mark.slow
@pytest.mark.parametrize("alg_id,problem,vertex_valued", CLOSURE_PROBLEMS)
def test_solutions_restrict_to_components_and_survive_relabelling(alg_id, problem, vertex_valued):
    """167 seeded disjoint unions per problem, each also relabelled at random."""
    local = build_local(alg_id, AlgorithmParams(delta=3))
    for seed in range(167):
        parts = [_component(2 * seed), _component(2 * seed + 1)]
        g = disjoint_union(*parts)
        labeling = run_local(local, g)
        assert verify_solution(problem, g, labeling).valid, seed

        offset = 0
        for part in parts:
            shift = {v + offset: v for v in range(part.n)}
            restricted = {v: _carry(labeling[v + offset], shift, vertex_valued) for v in range(part.n)}
            assert verify_solution(problem, part, restricted).valid, seed
            offset += part.n

        mapping = [int(x) for x in np.random.default_rng(seed).permutation(g.n)]
        h = g.relabel(mapping)
        moved = {mapping[v]: _carry(label, mapping, vertex_valued) for v, label in labeling.items()}
        assert verify_solution(problem, h, moved).valid, seed
        assert verify_solution(problem, h, run_local(local, h)).valid, seed

        spoiled = {v: UNMATCHED if vertex_valued else 0 for v in range(g.n)}
        assert not verify_solution(problem, g, spoiled).valid
        assert not verify_solution(problem, h, {mapping[v]: x for v, x in spoiled.items()}).valid

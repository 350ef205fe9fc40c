"""Tests for the LOCAL, partree and LCA runtimes."""

import numpy as np
import pytest

from locality_lab.algorithms.coloring import ERROR_LABEL, cole_vishkin_cycle
from locality_lab.algorithms.conversions import local_to_lca
from locality_lab.algorithms.probes import BallWalker, DegreeTree, StateCachingWrapper
from locality_lab.algorithms.registry import AlgorithmParams, build_lca
from locality_lab.algorithms.two_path import adversarial_two_path_paths, two_path_stateless_baseline, two_path_statefull
from locality_lab.algorithms.verifiers import verify_solution
from locality_lab.engine.lca import (
    LcaContext,
    StateBuffer,
    StatelessSimulation,
    check_consistency,
    replay_state_trace,
    run_lca,
    statelessify,
)
from locality_lab.engine.local import collect_ball, run_local
from locality_lab.engine.partree import run_partree
from locality_lab.engine.transcript import ProbeOracle, ProbeTranscript
from locality_lab.errors import ProbeBudgetExceeded, StateCapacityExceeded
from locality_lab.graphs.generators import cycle_graph, path_graph, random_regular_graph, two_path_graph


def test_oracle_enforces_budget(cycle8):
    oracle = ProbeOracle(cycle8.neighbors, n=8, delta=2, vertex=0, budget=1)
    assert oracle.probe(1) == (0, 2)
    with pytest.raises(ProbeBudgetExceeded) as exc:
        oracle.probe(2)
    assert exc.value.vertex == 0
    assert oracle.probes_used == 1


def test_oracle_rejects_out_of_range(cycle8):
    oracle = ProbeOracle(cycle8.neighbors, n=8, delta=2, vertex=0)
    with pytest.raises(ValueError):
        oracle.probe(8)


def test_transcript_records(cycle8):
    oracle = ProbeOracle(cycle8.neighbors, n=8, delta=2, vertex=3)
    oracle.probe(3)
    oracle.probe(4)
    records = oracle.transcript.to_records()
    assert records[0] == {"probed": 3, "neighbors": [2, 4]}
    assert ProbeTranscript.from_records(records).key() == oracle.transcript.key()


def test_ball_of_radius_zero_is_lone_center(cycle8):
    view = collect_ball(cycle8, 3, 0)
    assert view.vertices == [3]
    assert view.num_edges == 0


def test_ball_is_induced(cycle8):
    """Boundary vertices keep only the edges inside the ball."""
    view = collect_ball(cycle8, 0, 2)
    assert view.vertices == [0, 1, 2, 6, 7]
    assert view.neighbors(0) == (1, 7)
    assert view.neighbors(2) == (1,)
    assert view.distance(6) == 2
    with pytest.raises(ValueError):
        view.sub_view(1, 2)


def test_run_local_colours_cycle(cycle8):
    alg = cole_vishkin_cycle(8)
    labeling = run_local(alg, cycle8)
    assert verify_solution("coloring3-cycle", cycle8, labeling).valid


def test_run_local_ignores_order(cycle9):
    alg = cole_vishkin_cycle(9)
    assert run_local(alg, cycle9, order=reversed(range(9))) == run_local(alg, cycle9)


def test_run_local_needs_full_radius(cycle8):
    alg = cole_vishkin_cycle(8)
    with pytest.raises(ValueError):
        run_local(alg, cycle8, t=alg.radius(8) - 1)


def test_cycle_colouring_flags_paths(path5):
    labeling = run_local(cole_vishkin_cycle(5), path5)
    assert set(labeling.values()) == {ERROR_LABEL}
    assert verify_solution("coloring3-cycle", path5, labeling).valid


def test_local_to_lca_agrees_with_local(cycle8):
    local = cole_vishkin_cycle(8)
    lca = local_to_lca(local, delta=2)
    run = run_lca(lca, cycle8, list(range(8)), LcaContext.for_algorithm(lca, 8))
    assert dict(enumerate(run.answers)) == run_local(local, cycle8)
    assert all(t.total_probes <= lca.complexity(8) for t in run.transcripts)


def test_partree_matches_stateless_lca(cycle9):
    """A stateless LCA and its per-vertex trees give the same labeling."""
    lca = local_to_lca(cole_vishkin_cycle(9), delta=2)
    trees = run_partree(lca, cycle9)
    run = run_lca(lca, cycle9, list(range(9)), LcaContext.for_algorithm(lca, 9))
    assert list(trees.labeling.values()) == run.answers
    assert [t.key() for t in trees.transcripts.values()] == [t.key() for t in run.transcripts]


def test_partree_rejects_stateful_tree(two_path10):
    with pytest.raises(ValueError):
        run_partree(two_path_statefull(10), two_path10)


def test_partree_budget_names_first_vertex(cycle8):
    with pytest.raises(ProbeBudgetExceeded) as exc:
        run_partree(DegreeTree(), cycle8, budget=0)
    assert exc.value.vertex == 0


def test_state_buffer_capacity():
    buf = StateBuffer(2)
    assert buf.read_int() is None
    buf.write_int(513)
    assert buf.read_int() == 513
    with pytest.raises(StateCapacityExceeded):
        buf.write(b"abc")
    with pytest.raises(ValueError):
        StateBuffer(-1)


def test_context_seed_must_fit():
    with pytest.raises(ValueError):
        LcaContext(seed=4, seed_bits=2)


def test_run_lca_refuses_undersized_state(two_path10):
    with pytest.raises(StateCapacityExceeded):
        run_lca(two_path_statefull(10), two_path10, [0], LcaContext())


def test_run_lca_rejects_foreign_query(cycle8):
    lca = DegreeTree()
    with pytest.raises(ValueError):
        run_lca(lca, cycle8, [8], LcaContext.for_algorithm(lca, 8))


def test_statefull_two_path_and_replay(two_path10):
    alg = two_path_statefull(10)
    queries = list(range(10))
    run = run_lca(alg, two_path10, queries, LcaContext.for_algorithm(alg, 10))
    assert verify_solution("two-path-leader", two_path10, dict(enumerate(run.answers))).valid
    assert all(t.total_probes == 1 for t in run.transcripts)
    assert replay_state_trace(alg, two_path10, queries, run) == run.answers


def test_cached_wrapper_answers_repeat_from_state(cycle8):
    alg = StateCachingWrapper(BallWalker(3))
    run = run_lca(alg, cycle8, [0, 0, 1], LcaContext.for_algorithm(alg, 8))
    assert run.answers[:2] == [1, 1]
    assert run.transcripts[0].total_probes == 3
    assert run.transcripts[1].total_probes == 0


def test_statelessify_keeps_answers(cycle8):
    inner = BallWalker(3)
    wrapped = statelessify(StateCachingWrapper(inner))
    assert isinstance(wrapped, StatelessSimulation)
    assert wrapped.is_stateless
    assert wrapped.complexity(8) == inner.complexity(8)
    order = [5, 2, 5, 0, 7, 1, 3, 6, 4]
    got = run_lca(wrapped, cycle8, order, LcaContext.for_algorithm(wrapped, 8)).answers
    want = run_lca(inner, cycle8, order, LcaContext.for_algorithm(inner, 8)).answers
    assert got == want


def test_statelessify_passes_stateless_through():
    tree = DegreeTree()
    assert statelessify(tree) is tree


@pytest.mark.parametrize("n", [8, 9])
def test_mis_lca_is_consistent(n):
    g = cycle_graph(n)
    alg = build_lca("mis", AlgorithmParams(delta=2))
    assert check_consistency(alg, g, LcaContext.for_algorithm(alg, n), "mis")


def _seeded_case(seed):
    """A seeded (algorithm, graph) pair with n <= 10."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 11))
    kind = ("cycle", "path", "cubic")[seed % 3]
    if kind == "cubic" and n % 2 == 0:
        g = random_regular_graph(n, 3, seed=seed)
    elif kind == "path":
        g = path_graph(n)
    else:
        g = cycle_graph(n)
    alg_ids = ["coloring-deltaplus1", "mis", "maximal-matching", "degree", "ball-walker", "random-prober", "far-prober"]
    if g.delta == 2:
        alg_ids.append("coloring3-cycle")
    alg_id = alg_ids[int(rng.integers(len(alg_ids)))]
    params = AlgorithmParams(delta=g.delta, budget=int(rng.integers(1, 5)), target=seed, salt=seed)
    return build_lca(alg_id, params), g


@pytest.mark.slow
def test_partree_matches_stateless_lca_on_seeded_pairs():
    for seed in range(200):
        lca, g = _seeded_case(seed)
        trees = run_partree(lca, g)
        run = run_lca(lca, g, list(range(g.n)), LcaContext.for_algorithm(lca, g.n))
        assert list(trees.labeling.values()) == run.answers, (seed, lca.name)
        assert [t.key() for t in trees.transcripts.values()] == [t.key() for t in run.transcripts], (seed, lca.name)


@pytest.mark.parametrize("seed", range(6))
def test_statelessify_keeps_answers_in_any_order(seed):
    g = random_regular_graph(10, 3, seed=seed)
    inner = build_lca("mis", AlgorithmParams(delta=3))
    cached = StateCachingWrapper(inner)
    wrapped = statelessify(cached)
    rng = np.random.default_rng(seed)
    order = [int(v) for v in rng.permutation(10)] + [int(v) for v in rng.integers(0, 10, size=5)]
    want = run_lca(inner, g, order, LcaContext.for_algorithm(inner, 10)).answers
    assert run_lca(wrapped, g, order, LcaContext.for_algorithm(wrapped, 10)).answers == want
    assert run_lca(cached, g, order, LcaContext.for_algorithm(cached, 10)).answers == want


@pytest.mark.slow
@pytest.mark.parametrize("n", [10, 50, 100, 200])
def test_statefull_two_path_elects_one_leader_on_seeded_instances(n):
    """250 placements per size, each queried in its own random order."""
    for seed in range(250):
        g = two_path_graph(n, seed=seed)
        alg = two_path_statefull(n)
        order = [int(v) for v in np.random.default_rng(seed).permutation(n)]
        run = run_lca(alg, g, order, LcaContext.for_algorithm(alg, n))
        labeling = dict(zip(order, run.answers))
        assert verify_solution("two-path-leader", g, labeling).valid, (n, seed)
        assert all(t.total_probes == 1 for t in run.transcripts)


@pytest.mark.parametrize("n", [10, 50, 100, 200])
def test_stateless_two_path_scan_is_linear(n):
    g = two_path_graph(n, paths=adversarial_two_path_paths(n))
    alg = two_path_stateless_baseline()
    run = run_lca(alg, g, list(range(n)), LcaContext.for_algorithm(alg, n))
    assert verify_solution("two-path-leader", g, dict(enumerate(run.answers))).valid
    assert max(t.total_probes for t in run.transcripts) >= 0.5 * n

"""Tests for the two-copies vs double-cover indistinguishability machinery."""

from fractions import Fraction

import pytest

from locality_lab.algorithms.probes import BallWalker, DegreeTree, TriangleWalker
from locality_lab.algorithms.registry import registered_trees
from locality_lab.algorithms.two_path import two_path_statefull
from locality_lab.errors import ScaleGuardError
from locality_lab.graphs.generators import cycle_graph, path_graph, two_copies
from locality_lab.lowerbounds import (
    PerturbationSpace,
    build_pair,
    gap_report,
    indistinguishability_check,
    transcript_distribution,
    transcript_hash,
)


def test_swap_map_is_an_involution():
    space = PerturbationSpace(3)
    sigma = space.swap_map(0b101)
    assert sigma.tolist() == [3, 1, 5, 0, 4, 2]
    assert sigma[sigma].tolist() == list(range(6))
    assert space.size == 8
    assert len(space.sample_masks(50, seed=2)) == 50


def test_perturbation_keeps_two_copies_isomorphic():
    space = PerturbationSpace(3)
    a = two_copies(cycle_graph(3))
    p = space.perturb(a, 0b001)
    assert p.num_edges == a.num_edges
    assert p.neighbors(3) == (1, 2)


def test_enumeration_guard():
    with pytest.raises(ScaleGuardError):
        PerturbationSpace(13).masks()


def test_exact_distribution_sums_to_one(cycle9):
    pair = build_pair(cycle9)
    dist = transcript_distribution(DegreeTree(), pair.b, 4, PerturbationSpace(9))
    assert dist.total() == 1
    assert dist.outcomes == 512
    # one probe, two neighbours, each in either copy
    assert len(dist.probabilities) == 4
    assert all(p == Fraction(1, 4) for p in dist.probabilities.values())


def test_distribution_argument_errors(cycle9):
    pair = build_pair(cycle9)
    space = PerturbationSpace(9)
    with pytest.raises(ValueError):
        transcript_distribution(DegreeTree(), pair.a, 0, space, mode="approximate")
    with pytest.raises(ValueError):
        transcript_distribution(two_path_statefull(18), pair.a, 0, space)
    with pytest.raises(ValueError):
        transcript_distribution(DegreeTree(), cycle9, 0, space)


def test_ball_walker_cannot_tell_on_cycle9(cycle9):
    verdict = indistinguishability_check(cycle9, BallWalker(2), t=2)
    assert len(verdict.queries) == 18
    assert verdict.equal
    assert verdict.witness is None
    assert verdict.expected_ones_a == verdict.expected_ones_b


@pytest.mark.slow
def test_every_registered_tree_equal_on_cycle9(cycle9):
    """Two probes reveal at most four edges of C9, never a whole cycle."""
    for tree in registered_trees(2):
        verdict = indistinguishability_check(cycle9, tree, t=2)
        assert verdict.equal, tree.name
        assert all(q.to_record()["verdict"] == "equal" for q in verdict.queries)


def test_triangle_walker_distinguishes_on_triangle():
    verdict = indistinguishability_check(cycle_graph(3), TriangleWalker(), t=3)
    assert not verdict.equal
    witness = verdict.witness
    assert witness.vertex == 0
    assert witness.prob_a != witness.prob_b
    record = witness.to_record()
    assert record["verdict"] == "distinguished"
    assert record["witness_hash"] == transcript_hash(witness.witness)
    assert len(record["witness_hash"]) == 16
    # A is two triangles, B a hexagon
    assert verdict.expected_ones_a == 6
    assert verdict.expected_ones_b == 0


def test_sampled_mode_reports_chi_square(cycle9):
    verdict = indistinguishability_check(cycle9, DegreeTree(), t=1, mode="sampled", samples=200, queries=[0, 9])
    assert verdict.mode == "sampled"
    assert [q.vertex for q in verdict.queries] == [0, 9]
    assert all(q.chi2 is not None and 0.0 <= q.p_value <= 1.0 for q in verdict.queries)
    assert verdict.expected_ones_a == 0


def test_gap_report_cycle9(cycle9):
    report = gap_report(cycle9)
    assert report.girth == 9
    assert (report.alpha_a, report.alpha_b) == (8, 9)
    assert report.alpha_ratio == Fraction(8, 9)
    assert report.cut_fraction_a == Fraction(8, 9)
    assert report.cut_fraction_b == 1
    assert report.color_lower_bound == 3
    assert report.to_record()["alpha_fraction_b"] == "1/2"


def test_gap_report_forest_and_guard():
    report = gap_report(path_graph(4))
    assert report.girth is None
    assert report.cut_fraction_a == report.cut_fraction_b == 1
    with pytest.raises(ScaleGuardError):
        gap_report(cycle_graph(13))

"""Tests for permutation families and the k-tuple uniformity test."""

from fractions import Fraction

import numpy as np
import pytest

from locality_lab.errors import ScaleGuardError
from locality_lab.permutations import (
    ExplicitFamily,
    ExplicitPermutation,
    IdentityFamily,
    KwiseFamily,
    KwisePermutation,
    LazyFamily,
    LazyPermutation,
    Law,
    RecordingPermutation,
    agrees_with,
    block_distance,
    composed_epsilon,
    composed_tuple_distances,
    declared_epsilon,
    exact_tuple_distance,
    field,
    half_bits,
    make_family,
    positive_sequence,
    rounds_for,
    tuple_uniformity_test,
)
from locality_lab.permutations.kwise import blocks_for, ceil_log2_inverse, seed_budget_blocks, three_round_bound


def _is_permutation(table, size):
    return sorted(int(v) for v in table) == list(range(size))


def test_explicit_forward_inverse():
    p = ExplicitPermutation(50, seed=7)
    assert _is_permutation(p.table(), 50)
    assert all(p.inverse(p.forward(x)) == x for x in range(50))
    with pytest.raises(ValueError):
        p.forward(50)


def test_explicit_from_table_validates():
    assert ExplicitPermutation.from_table([2, 0, 1]).inverse(0) == 1
    with pytest.raises(ValueError):
        ExplicitPermutation.from_table([0, 0, 1])


def test_lazy_is_consistent_and_replayable():
    p = LazyPermutation(100, seed=3)
    y = p.forward(17)
    assert p.inverse(y) == 17
    x = p.inverse(42)
    assert p.forward(x) == 42
    assert p.evaluations == (1 if x == 17 else 2)

    q = LazyPermutation(100, seed=3)
    assert q.forward(17) == y
    assert q.inverse(42) == x


def test_lazy_exact_law_is_uniform():
    """Full tape enumeration at N = 4 yields every permutation exactly once."""
    law = LazyFamily(4).exact_law()
    assert law.outcomes == 24
    assert len({tuple(row) for row in law.table.tolist()}) == 24
    for k in (1, 2, 3):
        assert tuple_uniformity_test(LazyFamily(4), 4, k).measured_distance == 0


def test_explicit_family_exact_law_is_uniform():
    quality = tuple_uniformity_test(ExplicitFamily(4), 4, 2)
    assert quality.measured_distance == 0
    assert quality.within_epsilon
    assert quality.tuples_checked == 12


def test_block_composition_formula():
    assert ceil_log2_inverse(Fraction(1, 16)) == 4
    assert ceil_log2_inverse(Fraction(1, 10)) == 4
    assert composed_epsilon(Fraction(1, 4), 1) == Fraction(1, 4)
    assert composed_epsilon(Fraction(1, 4), 3) == Fraction(1, 16)
    assert composed_epsilon(Fraction(3, 4), 2) == 1
    assert three_round_bound(2, 16) == Fraction(1, 1024)
    assert three_round_bound(2, 2) == 1
    # (2/1024)^b / 2 = 2^-(9b+1)
    assert blocks_for(2, 16, Fraction(1, 1024), Fraction(1, 2 ** 18)) == 2
    # 2^-40 needs five blocks; the seed budget allows 1 + ceil(40/32) = 3
    assert blocks_for(2, 16, Fraction(1, 1024), Fraction(1, 2 ** 40)) == 3
    # 2δ >= 1: one block per k·m bits of log2(1/ε)
    assert blocks_for(106, 6, Fraction(1), Fraction(1, 2 ** 100)) == 2


@pytest.mark.parametrize("size", [2 ** 20, 2 ** 32])
@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("eps", [Fraction(1, 2), Fraction(1, 2 ** 20), Fraction(1, 2 ** 64)])
def test_declared_epsilon_is_a_real_bound(size, k, eps):
    """Whenever the three-round bound is below 1/2 the declared distance is below 1."""
    m = half_bits(size)
    delta = three_round_bound(k, m)
    family = KwiseFamily(size, k, eps)
    assert 2 * delta < 1
    assert family.rounds == rounds_for(size, k, eps)
    assert family.rounds % 3 == 0
    assert 0 < family.epsilon <= delta < 1
    assert family.epsilon == composed_epsilon(delta, family.blocks)
    assert family.blocks <= seed_budget_blocks(k, m, eps)
    assert family.seed_bits == family.rounds * k * m


def test_certified_only_when_the_budget_reaches_epsilon():
    reached = KwiseFamily(2 ** 32, 2, Fraction(1, 2 ** 18))
    assert (reached.blocks, reached.epsilon) == (2, Fraction(1, 2 ** 19))
    assert reached.certified

    capped = KwiseFamily(2 ** 32, 2, Fraction(1, 2 ** 40))
    assert (capped.blocks, capped.epsilon) == (3, Fraction(1, 2 ** 28))
    assert not capped.certified

    assert all(KwiseFamily(2 ** 20, k, Fraction(1, 2)).certified for k in (1, 2, 3))


def test_unreachable_epsilon_is_not_certified():
    """k = 106 on [8^4]: q^2/2^m >= 1, so nothing is claimed."""
    family = KwiseFamily(8 ** 4, 106, Fraction(1, 2 ** 100))
    assert family.rounds == 6
    assert family.epsilon == 1
    assert not family.certified


def test_more_blocks_never_declare_more_distance():
    family_eps = [declared_epsilon(2 ** 20, 2, r) for r in (3, 6, 9, 12)]
    assert family_eps == sorted(family_eps, reverse=True)
    assert family_eps[-1] < family_eps[0]


def test_kwise_rounds_are_not_affine():
    """
    Round 0 is x -> 1/x on GF(8) (seed 1 << 3 sets its linear coefficient),
    the other rounds are zero: the map on [64] is not GF(2)-affine.
    """
    table = KwisePermutation(64, k=2, epsilon=Fraction(1, 2), seed=1 << 3, rounds=3).table()
    assert _is_permutation(table, 64)
    origin = int(table[0])
    assert any(
        int(table[a ^ b]) ^ int(table[a]) ^ int(table[b]) ^ origin for a in range(64) for b in range(64)
    )


def test_kwise_bijection_with_cycle_walking():
    """N = 10 is not a power of four, so each block walks outputs back into [10]."""
    p = KwisePermutation(10, k=2, epsilon=Fraction(1, 16), seed=123456, rounds=6)
    assert _is_permutation(p.table(), 10)
    assert all(p.forward(p.inverse(y)) == y for y in range(10))
    assert p.seed_bits == 6 * 2 * 2
    assert p.blocks == 2
    assert p.epsilon == composed_epsilon(block_distance(10, 2), 2)


def test_kwise_seed_and_round_guards():
    with pytest.raises(ValueError):
        KwisePermutation(10, k=2, epsilon=Fraction(1, 16), seed=1 << 24, rounds=6)
    with pytest.raises(ValueError):
        KwisePermutation(10, k=2, epsilon=Fraction(1, 16), rounds=2)
    with pytest.raises(ValueError):
        KwisePermutation(10, k=2, epsilon=Fraction(1, 16), rounds=4)
    with pytest.raises(ValueError):
        KwisePermutation(10, k=2, epsilon=Fraction(3, 2))


def test_kwise_batch_tables_match_handles():
    family = KwiseFamily(10, 2, Fraction(1, 16), rounds=6)
    seeds = [0, 1, 99, 4095, 1 << 20]
    batch = family.sample_tables(seeds)
    for row, s in zip(batch, seeds):
        assert np.array_equal(row, family.sample(s).table())


@pytest.mark.slow
@pytest.mark.parametrize("k", [2, 3])
def test_single_block_distance_is_exact(k):
    """One block: the declared distance is the exhaustively measured one."""
    family = KwiseFamily(8, k, Fraction(1, 2), rounds=3)
    quality = tuple_uniformity_test(family, 8, k)
    assert quality.measured_distance == family.epsilon == block_distance(8, k)
    assert quality.samples == 1 << family.seed_bits


@pytest.mark.slow
@pytest.mark.parametrize("k,rounds", [(2, 6), (2, 9), (3, 6)])
def test_kwise_exhaustive_within_declared_epsilon(k, rounds):
    """Composed blocks, enumerated block by block: measured <= (2δ)^b / 2."""
    family = KwiseFamily(8, k, Fraction(1, 2), rounds=rounds)
    quality = tuple_uniformity_test(family, 8, k)
    assert quality.samples == 1 << family.seed_bits
    assert quality.measured_distance <= family.epsilon
    assert quality.within_epsilon
    identity = tuple_uniformity_test(IdentityFamily(8), 8, k)
    assert quality.measured_distance < identity.measured_distance


@pytest.mark.slow
def test_kwise_pairs_at_toy_size_meet_a_real_bound():
    """N = 8, k = 2: two composed blocks already declare a distance below 1."""
    family = KwiseFamily(8, 2, Fraction(1, 2), rounds=6)
    assert family.epsilon < 1
    assert family.epsilon == 2 * block_distance(8, 2) ** 2
    assert tuple_uniformity_test(family, 8, 2).measured_distance <= family.epsilon


@pytest.mark.parametrize("k", [1, 2])
def test_composed_law_matches_brute_force(k):
    """Kernel composition equals enumerating every seed of the composed family."""
    family = KwiseFamily(5, 1, Fraction(1, 2), rounds=6)
    law = family.exact_law()
    assert law.blocks == 2
    seeds = np.arange(1 << family.seed_bits)
    brute = Law(table=family.sample_tables(seeds), weights=np.ones(len(seeds), dtype=np.int64))
    composed = composed_tuple_distances(law, k)
    assert len(composed) == (5 if k == 1 else 20)
    assert composed == {xs: exact_tuple_distance(brute, xs) for xs in composed}


def test_identity_family_is_far_from_uniform():
    quality = tuple_uniformity_test(IdentityFamily(5), 5, 2)
    assert quality.measured_distance == Fraction(19, 20)
    assert not quality.within_epsilon


def test_sampled_mode_is_close_for_uniform_family():
    quality = tuple_uniformity_test(ExplicitFamily(6), 6, 2, mode="sampled", trials=2000, seed=1)
    assert quality.mode == "sampled"
    assert quality.samples == 2000
    assert quality.measured_distance < 0.2


def test_uniformity_argument_errors():
    with pytest.raises(ValueError):
        tuple_uniformity_test(ExplicitFamily(6), 7, 2)
    with pytest.raises(ValueError):
        tuple_uniformity_test(ExplicitFamily(6), 6, 7)
    with pytest.raises(ValueError):
        tuple_uniformity_test(ExplicitFamily(6), 6, 2, mode="approximate")
    with pytest.raises(ScaleGuardError):
        tuple_uniformity_test(ExplicitFamily(9), 9, 2)
    with pytest.raises(ScaleGuardError):
        tuple_uniformity_test(ExplicitFamily(13), 13, 2)


def test_positive_sequence_rewrites_inverses():
    p = RecordingPermutation(KwisePermutation(16, k=2, epsilon=Fraction(1, 4), seed=77))
    p.forward(1)
    p.inverse(5)
    p.forward(3)
    positive = positive_sequence(p.log)
    assert all(d == 1 for _, _, d in positive)
    assert positive[1] == (p.inner.inverse(5), 5, 1)
    assert agrees_with(p.inner, p.log)
    assert agrees_with(p.inner, positive)


def test_gf2_arithmetic():
    gf = field(4)
    assert gf.mul(2, 2) == 4
    assert gf.mul(0, 9) == 0
    # x^4 = x + 1 modulo the primitive polynomial
    assert gf.mul(8, 2) == 3
    assert int(gf.poly_eval([1, 1], 0)) == 1
    assert int(gf.poly_eval([0, 1], 5)) == 5
    assert all(gf.mul(x, int(gf.inv(x))) == 1 for x in range(1, 16))
    assert int(gf.inv(0)) == 0
    # in GF(4) inversion is squaring, a linear map
    assert [int(v) for v in field(2).inv(np.arange(4))] == [0, 1, 3, 2]
    with pytest.raises(ScaleGuardError):
        field(17)


def test_make_family():
    assert make_family("lazy", 8).family == "lazy"
    assert make_family("kwise", 8, k=2, epsilon=Fraction(1, 4)).k == 2
    with pytest.raises(ValueError):
        make_family("kwise", 8, k=2)
    with pytest.raises(ValueError):
        make_family("feistel", 8)


def test_samplers_are_seeded_bijections():
    """Same seed, same permutation; every sampler is a bijection on [N]."""
    from locality_lab.permutations import sample_explicit, sample_kwise, sample_lazy

    for sample in (sample_explicit, sample_lazy):
        a, b = sample(9, seed=4), sample(9, seed=4)
        assert [a.forward(x) for x in range(9)] == [b.forward(x) for x in range(9)]
        assert sorted(a.forward(x) for x in range(9)) == list(range(9))

    pi = sample_kwise(9, 2, Fraction(1, 2), seed=6)
    images = [pi.forward(x) for x in range(9)]
    assert sorted(images) == list(range(9))
    assert all(pi.inverse(y) == x for x, y in enumerate(images))

"""
Compact-seed k-wise ε-dependent permutations: composed Feistel blocks.

The domain [N] is embedded in [4^m] with m = ceil(bitlen(N-1) / 2). A round
maps (L, R) to (R, L xor F(R)) with F(x) = S(p(x)): p is a random polynomial
of degree < k over GF(2^m), hence k-wise independent, and S is inversion in
GF(2^m) (0 fixed). S is a fixed bijection, so F stays k-wise independent.
For m >= 3 inversion is not GF(2)-affine, so no round is affine whatever
k is; for m <= 2 every bijection of GF(2^m) is affine and the declared
distance below rests on the block composition alone.

Three rounds form a block. Each block is cycle-walked back into [N] on its
own, so it is a permutation of [N], and the family is the composition of
b independently seeded blocks.

Declared distance. Let δ be the k-wise distance of one block (max over
input tuples). Composing independent permutations with distances δ1, δ2
gives at most 2·δ1·δ2, so b blocks are within min(1, (2δ)^b / 2). δ is:

  - exact, from every block seed and every distinct k-tuple, when N <= 12
    and one block has at most 2^20 seeds;
  - otherwise the three-round bound q^2 / 2^m with q = 4k queries, the
    allowance covering the expected cycle-walk length (4^m < 4N).

The round count is the fewest blocks whose bound meets the target ε, capped
at one block per k·m bits of log2(1/ε) so the seed stays O(k·m + log(1/ε)).
A block buys only about m - 2·log2(4k) bits of distance under the bound, so
the cap binds for small ε or large k; when 2δ >= 1 nothing is certified at
all. The family always declares the bound for the blocks it has and
reports certified = False when that misses the target.

Seed layout: rounds * k coefficients of m bits each; coefficient j of round i
sits at bits [(i*k + j)*m, (i*k + j + 1)*m) of the seed. Round i belongs to
block i // 3.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Sequence, Union

import numpy as np

from locality_lab.errors import ScaleGuardError

from .base import Law, PermutationFamily, PermutationHandle
from .gf2 import MAX_DEGREE, field
from .quality import EXHAUSTIVE_MAX_N, exact_tuple_distance

BLOCK_ROUNDS = 3
WALK_ALLOWANCE = 4
BATCH_SEED_BITS = 62
EXACT_LAW_MAX_SEED_BITS = 20

Epsilon = Union[Fraction, float, int]


def half_bits(size: int) -> int:
    """m such that [size] fits in [4^m]."""
    return max(1, math.ceil((size - 1).bit_length() / 2))


def ceil_log2_inverse(epsilon: Fraction) -> int:
    """ceil(log2(1/ε)), computed exactly."""
    q = -(-epsilon.denominator // epsilon.numerator)
    return (q - 1).bit_length()


def as_fraction(epsilon: Epsilon) -> Fraction:
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    return eps


def three_round_bound(k: int, m: int) -> Fraction:
    q = WALK_ALLOWANCE * k
    return min(Fraction(1), Fraction(q * q, 1 << m))


def composed_epsilon(delta: Fraction, blocks: int) -> Fraction:
    """min(1, (2δ)^b / 2): distance after composing b independent δ-blocks."""
    return min(Fraction(1), (2 * Fraction(delta)) ** blocks / 2)


def _log(value: Fraction) -> float:
    return math.log(value.numerator) - math.log(value.denominator)


def seed_budget_blocks(k: int, m: int, epsilon: Fraction) -> int:
    """One block per k·m bits of log2(1/ε): seed length O(k·m + log(1/ε))."""
    return 1 + math.ceil(ceil_log2_inverse(epsilon) / (k * m))


def blocks_for(k: int, m: int, delta: Fraction, epsilon: Epsilon) -> int:
    """Fewest blocks whose bound meets ε, capped at the seed budget."""
    eps = as_fraction(epsilon)
    budget = seed_budget_blocks(k, m, eps)
    if delta == 0:
        return 1
    if 2 * delta >= 1:
        return budget
    # float estimate, then settle exactly
    b = max(1, math.ceil(_log(2 * eps) / _log(2 * delta)))
    while composed_epsilon(delta, b) > eps:
        b += 1
    while b > 1 and composed_epsilon(delta, b - 1) <= eps:
        b -= 1
    return min(b, budget)


def block_is_enumerable(size: int, k: int) -> bool:
    return size <= EXHAUSTIVE_MAX_N and k <= size and BLOCK_ROUNDS * k * half_bits(size) <= EXACT_LAW_MAX_SEED_BITS


def feistel_tables(size: int, k: int, rounds: int, seeds: Sequence[int]) -> np.ndarray:
    """forward(x) for every x in [size] and every seed, vectorised over seeds."""
    seeds = np.asarray(seeds, dtype=np.int64)
    m = half_bits(size)
    gf = field(m)
    mask = (1 << m) - 1
    shifts = (np.arange(rounds * k, dtype=np.int64) * m).reshape(rounds, k)
    coeffs = (seeds[:, None, None] >> shifts[None, :, :]) & mask

    def encrypt(block: int, x: np.ndarray) -> np.ndarray:
        left, right = x >> m, x & mask
        for i in range(block * BLOCK_ROUNDS, (block + 1) * BLOCK_ROUNDS):
            left, right = right, left ^ gf.inv(gf.poly_eval(coeffs[:, i, :], right))
        return (left << m) | right

    table = np.empty((len(seeds), size), dtype=np.int64)
    for x in range(size):
        y = np.full(len(seeds), x, dtype=np.int64)
        for block in range(rounds // BLOCK_ROUNDS):
            y = encrypt(block, y)
            outside = y >= size
            while outside.any():
                y = np.where(outside, encrypt(block, y), y)
                outside = y >= size
        table[:, x] = y
    return table


@lru_cache(maxsize=None)
def block_distance(size: int, k: int) -> Fraction:
    """
    k-wise distance δ of a single cycle-walked block on [size].

    Exact when block_is_enumerable(size, k), the three-round bound otherwise.
    """
    if not block_is_enumerable(size, k):
        return three_round_bound(k, half_bits(size))
    bits = BLOCK_ROUNDS * k * half_bits(size)
    table = feistel_tables(size, k, BLOCK_ROUNDS, np.arange(1 << bits, dtype=np.int64))
    law = Law(table=table, weights=np.ones(len(table), dtype=np.int64))
    return max(exact_tuple_distance(law, xs) for xs in itertools.permutations(range(size), k))


def resolve_rounds(size: int, k: int, epsilon: Fraction, rounds: Optional[int]) -> int:
    """
    Round count for (N, k, ε), or the explicit one after validation.

    Raises:
        ValueError: rounds is not a positive multiple of three
    """
    if rounds is not None:
        if rounds < BLOCK_ROUNDS or rounds % BLOCK_ROUNDS:
            raise ValueError(f"rounds must be a positive multiple of {BLOCK_ROUNDS}, got {rounds}")
        return rounds
    return BLOCK_ROUNDS * blocks_for(k, half_bits(size), block_distance(size, k), epsilon)


def rounds_for(size: int, k: int, epsilon: Epsilon) -> int:
    return resolve_rounds(size, k, as_fraction(epsilon), None)


def declared_epsilon(size: int, k: int, rounds: int) -> Fraction:
    return composed_epsilon(block_distance(size, k), rounds // BLOCK_ROUNDS)


def kwise_seed_bits(size: int, k: int, epsilon: Epsilon, rounds: Optional[int] = None) -> int:
    return resolve_rounds(size, k, as_fraction(epsilon), rounds) * k * half_bits(size)


class KwisePermutation(PermutationHandle):
    """
    One member of the Feistel family; forward and inverse run natively.

    Evaluations are memoised, so repeated lookups cost a dict access.
    """

    family = "kwise"

    def __init__(
        self,
        size: int,
        k: int,
        epsilon: Epsilon,
        seed: int = 0,
        rounds: Optional[int] = None,
    ):
        super().__init__(size, seed)
        if k < 1:
            raise ValueError("k must be at least 1")
        self._k = k
        self.m = half_bits(size)
        if self.m > MAX_DEGREE:
            raise ScaleGuardError(f"Feistel halves of {self.m} bits exceed {MAX_DEGREE}; N must be <= 2^32")
        self.target_epsilon = as_fraction(epsilon)
        self.rounds = resolve_rounds(size, k, self.target_epsilon, rounds)
        if seed >> self.seed_bits:
            raise ValueError(f"seed does not fit in {self.seed_bits} bits")
        self.gf = field(self.m)
        self.mask = (1 << self.m) - 1
        self.coeffs = np.array(
            [
                [(seed >> ((i * k + j) * self.m)) & self.mask for j in range(k)]
                for i in range(self.rounds)
            ],
            dtype=np.int64,
        )
        self._fwd: Dict[int, int] = {}
        self._inv: Dict[int, int] = {}

    @property
    def k(self) -> int:
        return self._k

    @property
    def blocks(self) -> int:
        return self.rounds // BLOCK_ROUNDS

    @property
    def seed_bits(self) -> int:
        return self.rounds * self._k * self.m

    @property
    def epsilon(self) -> Fraction:
        return declared_epsilon(self.size, self._k, self.rounds)

    def _round(self, i: int, half: int) -> int:
        return int(self.gf.inv(self.gf.poly_eval(self.coeffs[i], half)))

    def _encrypt(self, block: int, x: int) -> int:
        left, right = x >> self.m, x & self.mask
        for i in range(block * BLOCK_ROUNDS, (block + 1) * BLOCK_ROUNDS):
            left, right = right, left ^ self._round(i, right)
        return (left << self.m) | right

    def _decrypt(self, block: int, y: int) -> int:
        left, right = y >> self.m, y & self.mask
        for i in reversed(range(block * BLOCK_ROUNDS, (block + 1) * BLOCK_ROUNDS)):
            left, right = right ^ self._round(i, left), left
        return (left << self.m) | right

    def _forward(self, x: int) -> int:
        if x not in self._fwd:
            y = x
            for block in range(self.blocks):
                y = self._encrypt(block, y)
                while y >= self.size:
                    y = self._encrypt(block, y)
            self._fwd[x] = y
            self._inv[y] = x
        return self._fwd[x]

    def _inverse(self, y: int) -> int:
        if y not in self._inv:
            x = y
            for block in reversed(range(self.blocks)):
                x = self._decrypt(block, x)
                while x >= self.size:
                    x = self._decrypt(block, x)
            self._inv[y] = x
            self._fwd[x] = y
        return self._inv[y]


class KwiseFamily(PermutationFamily):
    """The Feistel family for (N, k, ε), optionally with a fixed round count."""

    family = "kwise"

    def __init__(self, size: int, k: int, epsilon: Epsilon, rounds: Optional[int] = None):
        super().__init__(size)
        self._k = k
        self.target_epsilon = as_fraction(epsilon)
        self.m = half_bits(size)
        self.rounds = resolve_rounds(size, k, self.target_epsilon, rounds)

    @property
    def k(self) -> int:
        return self._k

    @property
    def blocks(self) -> int:
        return self.rounds // BLOCK_ROUNDS

    @property
    def seed_bits(self) -> int:
        return self.rounds * self._k * self.m

    @property
    def block_seed_bits(self) -> int:
        return BLOCK_ROUNDS * self._k * self.m

    @property
    def epsilon(self) -> Fraction:
        return declared_epsilon(self.size, self._k, self.rounds)

    @property
    def certified(self) -> bool:
        """True iff the declared distance meets the requested one."""
        return self.epsilon <= self.target_epsilon

    def sample(self, seed: int) -> KwisePermutation:
        return KwisePermutation(
            self.size, self._k, self.target_epsilon, seed % (1 << self.seed_bits), rounds=self.rounds
        )

    def sample_tables(self, seeds: Sequence[int]) -> np.ndarray:
        """Vectorised over seeds when the seed fits in a machine word."""
        if self.seed_bits > BATCH_SEED_BITS:
            return super().sample_tables(seeds)
        return feistel_tables(self.size, self._k, self.rounds, seeds)

    def exact_law(self) -> Law:
        """
        Every seed of one block, each with weight 1, composed `blocks` times.

        Raises:
            ScaleGuardError: A block has more than 2^20 seeds
        """
        if self.block_seed_bits > EXACT_LAW_MAX_SEED_BITS:
            raise ScaleGuardError(
                f"block seed space of {self.block_seed_bits} bits exceeds the exhaustive limit of {EXACT_LAW_MAX_SEED_BITS}"
            )
        seeds = np.arange(1 << self.block_seed_bits, dtype=np.int64)
        table = feistel_tables(self.size, self._k, BLOCK_ROUNDS, seeds)
        return Law(table=table, weights=np.ones(len(table), dtype=np.int64), blocks=self.blocks)


def sample_kwise(N: int, k: int, epsilon: Epsilon, seed: int, rounds: Optional[int] = None) -> KwisePermutation:
    return KwisePermutation(N, k, epsilon, seed, rounds=rounds)

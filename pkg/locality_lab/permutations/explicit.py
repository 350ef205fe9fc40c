"""Materialised uniform permutations."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

import numpy as np

from locality_lab.errors import ScaleGuardError

from .base import TABLE_MAX_N, Law, PermutationFamily, PermutationHandle

SEED_BITS = 64
EXACT_LAW_MAX_N = 8


class ExplicitPermutation(PermutationHandle):
    """Forward and inverse tables of a seeded shuffle; O(1) lookups."""

    family = "explicit"

    def __init__(self, size: int, seed: int = 0, max_size: int = TABLE_MAX_N):
        if size > max_size:
            raise ScaleGuardError(f"explicit permutation of {size} points exceeds guard {max_size}")
        super().__init__(size, seed)
        self._table = np.random.default_rng(seed).permutation(size).astype(np.int64)
        self._inv = np.argsort(self._table)

    @classmethod
    def from_table(cls, table: Sequence[int]) -> "ExplicitPermutation":
        """Handle for a given permutation; used when enumerating all of S_N."""
        arr = np.asarray(table, dtype=np.int64)
        if sorted(arr.tolist()) != list(range(len(arr))):
            raise ValueError("table is not a permutation of 0..N-1")
        handle = cls.__new__(cls)
        PermutationHandle.__init__(handle, len(arr), 0)
        handle._table = arr
        handle._inv = np.argsort(arr)
        return handle

    @property
    def seed_bits(self) -> int:
        return SEED_BITS

    def _forward(self, x: int) -> int:
        return int(self._table[x])

    def _inverse(self, y: int) -> int:
        return int(self._inv[y])

    def table(self) -> np.ndarray:
        return self._table.copy()


class ExplicitFamily(PermutationFamily):
    """Uniform permutations from a 64-bit seed."""

    family = "explicit"

    @property
    def epsilon(self) -> Fraction:
        return Fraction(0)

    @property
    def seed_bits(self) -> int:
        return SEED_BITS

    def sample(self, seed: int) -> ExplicitPermutation:
        return ExplicitPermutation(self.size, seed % (1 << SEED_BITS))

    def exact_law(self) -> Law:
        """All N! permutations, each with weight 1."""
        if self.size > EXACT_LAW_MAX_N:
            raise ScaleGuardError(f"enumerating S_N needs N <= {EXACT_LAW_MAX_N}")
        table = np.array(list(itertools.permutations(range(self.size))), dtype=np.int64)
        return Law(table=table, weights=np.ones(len(table), dtype=np.int64))


def sample_explicit(N: int, seed: int) -> ExplicitPermutation:
    return ExplicitPermutation(N, seed)

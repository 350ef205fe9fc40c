"""
Lazily sampled uniform permutations (principle of deferred decisions).

Only the pairs evaluated so far are stored. A fresh forward(x) is uniform over
the outputs not yet used, a fresh inverse(y) over the inputs not yet used,
which gives the law of a uniform permutation whatever the call order.
"""

from __future__ import annotations

import bisect
import itertools
from fractions import Fraction
from hashlib import blake2b
from typing import Callable, Dict, Iterator, List, Optional, Sequence

import numpy as np

from locality_lab.errors import ScaleGuardError

from .base import Law, PermutationFamily, PermutationHandle

KEY_BITS = 128
EXACT_LAW_MAX_N = 8

Chooser = Callable[[int], int]


def stream_key(seed: int) -> int:
    """128-bit Philox key: BLAKE2b-128 of the seed's big-endian bytes."""
    raw = seed.to_bytes(max(1, (seed.bit_length() + 7) // 8), "big")
    return int.from_bytes(blake2b(raw, digest_size=KEY_BITS // 8).digest(), "big")


def _nth_unused(c: int, used: List[int]) -> int:
    """The c-th smallest value missing from the sorted list `used`."""
    y = c
    for u in used:
        if u <= y:
            y += 1
        else:
            break
    return y


class LazyPermutation(PermutationHandle):
    """
    Partial injection grown on demand.

    Draw number i uses a Philox generator keyed by stream_key(seed) with
    counter i, so a replay with the same seed and the same call sequence
    returns the same answers. A `chooser` replaces the generator: it receives
    the number of admissible values and returns the index of the one to take.
    """

    family = "lazy"

    def __init__(self, size: int, seed: int = 0, chooser: Optional[Chooser] = None):
        super().__init__(size, seed)
        self._key = stream_key(seed)
        self._chooser = chooser
        self._draws = 0
        self._fwd: Dict[int, int] = {}
        self._inv: Dict[int, int] = {}
        self._used_out: List[int] = []
        self._used_in: List[int] = []

    @property
    def seed_bits(self) -> int:
        return KEY_BITS

    @property
    def evaluations(self) -> int:
        return len(self._fwd)

    def _draw(self, bound: int) -> int:
        index = self._draws
        self._draws += 1
        if self._chooser is not None:
            c = self._chooser(bound)
            if not 0 <= c < bound:
                raise ValueError(f"chooser returned {c} outside [0, {bound})")
            return c
        if bound == 1:
            return 0
        rng = np.random.Generator(np.random.Philox(key=self._key, counter=index))
        nbits = (bound - 1).bit_length()
        nbytes = (nbits + 7) // 8
        while True:
            c = int.from_bytes(rng.bytes(nbytes), "big") >> (8 * nbytes - nbits)
            if c < bound:
                return c

    def _bind(self, x: int, y: int) -> None:
        self._fwd[x] = y
        self._inv[y] = x
        bisect.insort(self._used_in, x)
        bisect.insort(self._used_out, y)

    def _forward(self, x: int) -> int:
        if x not in self._fwd:
            c = self._draw(self.size - len(self._fwd))
            self._bind(x, _nth_unused(c, self._used_out))
        return self._fwd[x]

    def _inverse(self, y: int) -> int:
        if y not in self._inv:
            c = self._draw(self.size - len(self._inv))
            self._bind(_nth_unused(c, self._used_in), y)
        return self._inv[y]


def enumerate_tapes(size: int) -> Iterator[Sequence[int]]:
    """Every choice sequence of a full evaluation; all are equally likely."""
    return itertools.product(*(range(b) for b in range(size, 0, -1)))


def scripted_chooser(tape: Sequence[int]) -> Chooser:
    it = iter(tape)

    def choose(bound: int) -> int:
        return next(it)

    return choose


class LazyFamily(PermutationFamily):
    family = "lazy"

    @property
    def epsilon(self) -> Fraction:
        return Fraction(0)

    @property
    def seed_bits(self) -> int:
        return KEY_BITS

    def sample(self, seed: int) -> LazyPermutation:
        return LazyPermutation(self.size, seed)

    def exact_law(self) -> Law:
        """Law of forward(0), ..., forward(N-1) under full tape enumeration."""
        if self.size > EXACT_LAW_MAX_N:
            raise ScaleGuardError(f"tape enumeration needs N <= {EXACT_LAW_MAX_N}")
        rows = []
        for tape in enumerate_tapes(self.size):
            handle = LazyPermutation(self.size, 0, chooser=scripted_chooser(tape))
            rows.append([handle.forward(x) for x in range(self.size)])
        table = np.array(rows, dtype=np.int64)
        return Law(table=table, weights=np.ones(len(table), dtype=np.int64))


def sample_lazy(N: int, seed: int) -> LazyPermutation:
    return LazyPermutation(N, seed)

"""Permutation handles, families and inspection logs."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from locality_lab.errors import ScaleGuardError

FAMILIES = ("explicit", "lazy", "kwise", "identity")

# Full tables are only built for domains this small.
TABLE_MAX_N = 1 << 24


class PermutationHandle(ABC):
    """
    A permutation of {0, ..., N-1} with forward and inverse access.

    Subclasses answer `_forward`/`_inverse`; range checks live here.
    """

    family: str = "unknown"

    def __init__(self, size: int, seed: int = 0):
        if size < 1:
            raise ValueError("permutation domain must be non-empty")
        if seed < 0:
            raise ValueError("seed must be non-negative")
        self.size = size
        self.seed = seed

    @property
    @abstractmethod
    def seed_bits(self) -> int:
        """Exact seed length in bits this handle was built from."""
        pass

    @abstractmethod
    def _forward(self, x: int) -> int:
        pass

    @abstractmethod
    def _inverse(self, y: int) -> int:
        pass

    def forward(self, x: int) -> int:
        self._check(x)
        return self._forward(x)

    def inverse(self, y: int) -> int:
        self._check(y)
        return self._inverse(y)

    def _check(self, x: int) -> None:
        if not 0 <= x < self.size:
            raise ValueError(f"{x} outside permutation domain [0, {self.size})")

    def table(self) -> np.ndarray:
        """forward(x) for every x; only for small domains."""
        if self.size > TABLE_MAX_N:
            raise ScaleGuardError(f"refusing to tabulate a permutation of {self.size} points")
        return np.array([self.forward(x) for x in range(self.size)], dtype=np.int64)

    @property
    def epsilon(self) -> Optional[Fraction]:
        return None

    @property
    def k(self) -> Optional[int]:
        return None

    def to_record(self) -> Dict[str, Any]:
        eps = self.epsilon
        return {
            "family": self.family,
            "N": self.size,
            "k": self.k,
            "epsilon": None if eps is None else str(eps),
            "seed_hex": hex(self.seed),
            "declared_seed_bits": self.seed_bits,
        }

    def __repr__(self) -> str:
        return f"<{type(self).__name__}(N={self.size}, seed_bits={self.seed_bits})>"


Inspection = Tuple[int, int, int]


class RecordingPermutation(PermutationHandle):
    """
    Wraps a handle and logs every inspection as (argument, result, direction).

    direction is +1 for forward(argument) = result and -1 for
    inverse(argument) = result.
    """

    def __init__(self, inner: PermutationHandle):
        super().__init__(inner.size, inner.seed)
        self.inner = inner
        self.family = inner.family
        self.log: List[Inspection] = []

    @property
    def seed_bits(self) -> int:
        return self.inner.seed_bits

    @property
    def epsilon(self) -> Optional[Fraction]:
        return self.inner.epsilon

    @property
    def k(self) -> Optional[int]:
        return self.inner.k

    def _forward(self, x: int) -> int:
        y = self.inner.forward(x)
        self.log.append((x, y, 1))
        return y

    def _inverse(self, y: int) -> int:
        x = self.inner.inverse(y)
        self.log.append((y, x, -1))
        return x


def positive_sequence(inspections: Sequence[Inspection]) -> List[Inspection]:
    """Rewrite every inverse inspection (v, u, -1) as the forward one (u, v, 1)."""
    return [(u, v, 1) if d == -1 else (v, u, 1) for v, u, d in inspections]


def agrees_with(handle: PermutationHandle, inspections: Sequence[Inspection]) -> bool:
    """True iff the handle reproduces every inspection, forward or inverse."""
    for a, b, d in inspections:
        got = handle.forward(a) if d == 1 else handle.inverse(a)
        if got != b:
            return False
    return True


@dataclass
class Law:
    """
    Exact distribution of a family: equiprobable-up-to-weight outcome rows.

    table[i] is the permutation (as forward values) of outcome i and
    weights[i] its integer weight; probabilities are weights / total. With
    blocks > 1 the family is the composition of `blocks` independent draws
    from these rows.
    """

    table: np.ndarray
    weights: np.ndarray
    blocks: int = 1

    @property
    def total(self) -> int:
        return int(self.weights.sum())

    @property
    def outcomes(self) -> int:
        return int(self.table.shape[0])

    @property
    def seeds(self) -> int:
        """Total weight of the composed family."""
        return self.total ** self.blocks


class PermutationFamily(ABC):
    """A seeded sampler of permutations of [N]."""

    family: str = "unknown"

    def __init__(self, size: int):
        if size < 1:
            raise ValueError("permutation domain must be non-empty")
        self.size = size

    @property
    @abstractmethod
    def seed_bits(self) -> int:
        pass

    @abstractmethod
    def sample(self, seed: int) -> PermutationHandle:
        pass

    @abstractmethod
    def exact_law(self) -> Law:
        """Every outcome of the family with its weight (toy sizes only)."""
        pass

    @property
    def epsilon(self) -> Optional[Fraction]:
        return None

    @property
    def k(self) -> Optional[int]:
        return None

    def sample_tables(self, seeds: Sequence[int]) -> np.ndarray:
        if not len(seeds):
            return np.zeros((0, self.size), dtype=np.int64)
        return np.stack([self.sample(int(s)).table() for s in seeds])

    def __repr__(self) -> str:
        return f"<{type(self).__name__}(N={self.size}, seed_bits={self.seed_bits})>"


class IdentityPermutation(PermutationHandle):
    family = "identity"

    @property
    def seed_bits(self) -> int:
        return 0

    def _forward(self, x: int) -> int:
        return x

    def _inverse(self, y: int) -> int:
        return y


class IdentityFamily(PermutationFamily):
    """Degenerate reference family holding only the identity."""

    family = "identity"

    @property
    def seed_bits(self) -> int:
        return 0

    def sample(self, seed: int) -> PermutationHandle:
        return IdentityPermutation(self.size, 0)

    def exact_law(self) -> Law:
        return Law(table=np.arange(self.size, dtype=np.int64)[None, :], weights=np.ones(1, dtype=np.int64))

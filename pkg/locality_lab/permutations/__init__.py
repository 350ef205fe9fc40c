"""Seeded permutation families over [N] with forward and inverse access."""

from typing import Optional

from .base import (
    FAMILIES,
    IdentityFamily,
    IdentityPermutation,
    Inspection,
    Law,
    PermutationFamily,
    PermutationHandle,
    RecordingPermutation,
    agrees_with,
    positive_sequence,
)
from .explicit import ExplicitFamily, ExplicitPermutation, sample_explicit
from .gf2 import GF2Field, field
from .kwise import (
    KwiseFamily,
    KwisePermutation,
    block_distance,
    composed_epsilon,
    declared_epsilon,
    half_bits,
    kwise_seed_bits,
    rounds_for,
    sample_kwise,
)
from .lazy import LazyFamily, LazyPermutation, enumerate_tapes, sample_lazy, scripted_chooser
from .quality import FamilyQuality, composed_tuple_distances, exact_tuple_distance, tuple_uniformity_test


def make_family(
    name: str,
    size: int,
    k: int = 1,
    epsilon=None,
    rounds: Optional[int] = None,
) -> PermutationFamily:
    """
    Family by name.

    Raises:
        ValueError: Unknown family, or kwise without epsilon
    """
    if name == "explicit":
        return ExplicitFamily(size)
    if name == "lazy":
        return LazyFamily(size)
    if name == "identity":
        return IdentityFamily(size)
    if name == "kwise":
        if epsilon is None:
            raise ValueError("kwise family needs epsilon")
        return KwiseFamily(size, k, epsilon, rounds=rounds)
    raise ValueError(f"unknown permutation family {name!r}; expected one of {FAMILIES}")


__all__ = [
    "FAMILIES",
    "IdentityFamily",
    "IdentityPermutation",
    "Inspection",
    "Law",
    "PermutationFamily",
    "PermutationHandle",
    "RecordingPermutation",
    "agrees_with",
    "positive_sequence",
    "ExplicitFamily",
    "ExplicitPermutation",
    "sample_explicit",
    "GF2Field",
    "field",
    "KwiseFamily",
    "KwisePermutation",
    "block_distance",
    "composed_epsilon",
    "declared_epsilon",
    "half_bits",
    "kwise_seed_bits",
    "rounds_for",
    "sample_kwise",
    "LazyFamily",
    "LazyPermutation",
    "enumerate_tapes",
    "sample_lazy",
    "scripted_chooser",
    "FamilyQuality",
    "composed_tuple_distances",
    "exact_tuple_distance",
    "tuple_uniformity_test",
    "make_family",
]

"""Double-cover indistinguishability and the gaps it implies."""

from .gap import GAP_MAX_VERTICES, GapReport, gap_report
from .pairs import ENUMERATION_MAX_PAIRS, InstancePair, PerturbationSpace, build_pair
from .transcripts import (
    IndistinguishabilityVerdict,
    QueryComparison,
    TranscriptDistribution,
    compare_distributions,
    indistinguishability_check,
    transcript_distribution,
    transcript_hash,
)

__all__ = [
    "GAP_MAX_VERTICES",
    "GapReport",
    "gap_report",
    "ENUMERATION_MAX_PAIRS",
    "InstancePair",
    "PerturbationSpace",
    "build_pair",
    "IndistinguishabilityVerdict",
    "QueryComparison",
    "TranscriptDistribution",
    "compare_distributions",
    "indistinguishability_check",
    "transcript_distribution",
    "transcript_hash",
]

"""Relabelling simulation, failure accounting, derandomization and the localizer."""

from .derandomize import DerandomizationResult, derandomize_search, permutation_is_good, union_bound_prediction
from .failure import (
    FailureBound,
    FailureEstimate,
    estimate_failure,
    failure_bound,
    merge_estimates,
    superpolynomial_domain,
)
from .localizer import (
    LocalityCertificate,
    SeedAccounting,
    SimulationReport,
    certify,
    check_regime,
    default_epsilon,
    localizer_domain,
    probe_locality_certificate,
    run_localized_lca,
)
from .world import (
    H_KINDS,
    DiscoveredSet,
    HSpec,
    ProbeStep,
    QueryOutcome,
    VirtualWorld,
    default_hspec,
    discovered_bound,
    make_world,
    relabeled_probe,
    simulate_query,
)

__all__ = [
    "DerandomizationResult",
    "derandomize_search",
    "permutation_is_good",
    "union_bound_prediction",
    "FailureBound",
    "FailureEstimate",
    "estimate_failure",
    "failure_bound",
    "merge_estimates",
    "superpolynomial_domain",
    "LocalityCertificate",
    "SeedAccounting",
    "SimulationReport",
    "certify",
    "check_regime",
    "default_epsilon",
    "localizer_domain",
    "probe_locality_certificate",
    "run_localized_lca",
    "H_KINDS",
    "DiscoveredSet",
    "HSpec",
    "ProbeStep",
    "QueryOutcome",
    "VirtualWorld",
    "default_hspec",
    "discovered_bound",
    "make_world",
    "relabeled_probe",
    "simulate_query",
]

"""Locality lab: executable models of local graph computation.

Subpackages:
- graphs: labeled bounded-degree graphs, generators and measurements
- engine: LOCAL rounds, parallel decision trees and the LCA runtime
- permutations: explicit, lazy and k-wise dependent permutation families
- simulation: relabelled virtual worlds and the probe-localizing simulation
- algorithms: colouring, MIS, matching, two-path leader election, verifiers
- lowerbounds: double-cover indistinguishability and approximation gaps
- experiments: one experiment per CLI command plus the runner
- domain / io / services: run ledger, file formats, seeding and statistics
"""

__all__ = [
    "graphs",
    "engine",
    "permutations",
    "simulation",
    "algorithms",
    "lowerbounds",
    "experiments",
    "config",
    "errors",
    "cli",
]

__version__ = "0.1.0"

"""Graph core: labeled graphs, generators and measurements."""

from .core import GRAPH_KINDS, GraphSpec, LabeledGraph, VertexId, validate_graph
from .generators import (
    HighGirthSample,
    cycle_graph,
    disjoint_union,
    double_cover,
    enumerate_graphs,
    generate,
    pad_isolated,
    path_graph,
    random_regular_graph,
    sample_high_girth_regular,
    two_copies,
    two_path_graph,
)
from .measures import connected_components, distances_from, girth, induces_connected, is_bipartite

__all__ = [
    "GRAPH_KINDS",
    "GraphSpec",
    "LabeledGraph",
    "VertexId",
    "validate_graph",
    "HighGirthSample",
    "cycle_graph",
    "disjoint_union",
    "double_cover",
    "enumerate_graphs",
    "generate",
    "pad_isolated",
    "path_graph",
    "random_regular_graph",
    "sample_high_girth_regular",
    "two_copies",
    "two_path_graph",
    "connected_components",
    "distances_from",
    "girth",
    "induces_connected",
    "is_bipartite",
]

"""linetrees — Exact spanning-tree counts for line graphs, subdivisions and clique insertions.

Modules:
    core        Loop-free multigraphs and their structural operations.
    transforms  Line graph, subdivisions, pendant splits, clique insertion.
    treecount   Matrix-Tree (Bareiss), enumeration and deletion-contraction counters.
    formulas    Exact evaluators for the closed-form identities.
    partitions  Boundary-edge transversals, exchanges and the clique partition map.
    graph_io    Plain-text graph files.
    generators  Seeded random instances.
    checks      Formula-versus-oracle reports and fuzzing.
"""

from .core import Edge, MultiGraph, SpanningSubset, SubsetRole
from .errors import (
    DomainError,
    GraphArgumentError,
    GraphParseError,
    LineTreeError,
    NonIntegralResultError,
    ResourceLimitError,
)
from .graph_io import emit_graph, parse_graph, read_graph_file
from .treecount import count_matrix_tree

__all__ = [
    "DomainError",
    "Edge",
    "GraphArgumentError",
    "GraphParseError",
    "LineTreeError",
    "MultiGraph",
    "NonIntegralResultError",
    "ResourceLimitError",
    "SpanningSubset",
    "SubsetRole",
    "count_matrix_tree",
    "emit_graph",
    "parse_graph",
    "read_graph_file",
]

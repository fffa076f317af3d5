"""Named graph families used as fixtures and CLI instances."""

from itertools import combinations

from .core import Edge, MultiGraph, VertexId
from .errors import GraphArgumentError


def complete_graph(k: int) -> MultiGraph:
    return MultiGraph.from_pairs(k, combinations(range(k), 2))


def cycle_graph(n: int) -> MultiGraph:
    """C_n for n >= 3; n = 2 gives a parallel pair."""
    if n < 2:
        raise GraphArgumentError(f"cycle needs at least 2 vertices, got {n}")
    return MultiGraph.from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> MultiGraph:
    """Path on n vertices (n-1 edges)."""
    return MultiGraph.from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> MultiGraph:
    """K_{1,leaves} with centre 0."""
    return MultiGraph.from_pairs(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite_graph(a: int, b: int) -> MultiGraph:
    """K_{a,b} with sides 0..a-1 and a..a+b-1."""
    return MultiGraph.from_pairs(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def bond_graph(multiplicity: int) -> MultiGraph:
    """Two vertices joined by `multiplicity` parallel edges."""
    return MultiGraph.from_pairs(2, [(0, 1)] * multiplicity)


def petersen_graph() -> MultiGraph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return MultiGraph.from_pairs(10, outer + spokes + inner)


def with_pendants(g: MultiGraph, at: list[VertexId]) -> MultiGraph:
    """Attach one fresh pendant vertex to each vertex listed in `at` (repeats allowed)."""
    n = g.n
    next_id = g.next_edge_id()
    edges = list(g.edges)
    for offset, v in enumerate(at):
        if not 0 <= v < g.n:
            raise GraphArgumentError(f"vertex {v} out of range 0..{g.n - 1}")
        edges.append(Edge(next_id + offset, v, n + offset))
    return MultiGraph(n + len(at), tuple(edges))


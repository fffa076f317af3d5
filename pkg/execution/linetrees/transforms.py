"""linetrees.transforms
---------------------

Graph constructions: line graph, r-fold subdivision (whole graph or an edge
subset), vertex insertion on an edge, pendant split, clique insertion, and
the clique quotient Q* of a graph whose matching removal leaves cliques.

Fresh vertices are appended after the existing ids and fresh edges receive
ids above the current maximum, always in edge-id (or vertex-then-slot) order,
so every construction is deterministic.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, pairwise
from math import comb

from .core import (
    Edge,
    EdgeId,
    MultiGraph,
    VertexId,
    check_edge_ids,
    components,
    degree,
    delete_edges,
    incident_edges,
    is_matching,
)
from .errors import DomainError, GraphArgumentError

logger = logging.getLogger("linetrees.transforms")


@dataclass(frozen=True)
class LineGraphResult:
    """L(G) together with the edge-to-vertex correspondence."""

    graph: MultiGraph
    vertex_of_edge: dict[EdgeId, VertexId]


@dataclass(frozen=True)
class SubdivisionResult:
    """A subdivided graph and the path replacing each original edge.

    Attributes:
        graph: The subdivided graph.
        path_of_edge: Original edge id -> ids of its replacing path, ordered u-end first.
            The first path edge keeps the original id.
        r: Number of inserted vertices per replaced edge.
    """

    graph: MultiGraph
    path_of_edge: dict[EdgeId, list[EdgeId]]
    r: int


@dataclass(frozen=True)
class CliqueInsertResult:
    """C(G) with its distinguished matching and the clique replacing each vertex."""

    graph: MultiGraph
    matching_M: frozenset[EdgeId]
    clique_of_vertex: dict[VertexId, frozenset[VertexId]]


@dataclass(frozen=True)
class CliqueStructure:
    """Decomposition of Q into the complete components of Q - M.

    Attributes:
        cliques: Vertex tuples (v_{i,1}, ..., v_{i,k_i}) with M-incident vertices first.
        matching: Edge ids of M.
        quotient: Q*, one vertex per clique, edge set M (ids preserved).
        clique_of: Vertex of Q -> clique index.
    """

    cliques: tuple[tuple[VertexId, ...], ...]
    matching: frozenset[EdgeId]
    quotient: MultiGraph
    clique_of: dict[VertexId, int]

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cliques)

    @property
    def matching_degrees(self) -> tuple[int, ...]:
        return tuple(degree(self.quotient, i) for i in range(len(self.cliques)))

    @property
    def anchors(self) -> tuple[VertexId, ...]:
        """The highest-indexed vertex v_{i,k_i} of every clique."""
        return tuple(c[-1] for c in self.cliques)

    def has_free_vertices(self) -> bool:
        """True when k_i > m_i for every clique."""
        return all(k > m for k, m in zip(self.orders, self.matching_degrees))


# ---------------------------------------------------------------------------
# Line graph
# ---------------------------------------------------------------------------


def line_graph(g: MultiGraph) -> LineGraphResult:
    """L(G): one vertex per edge, one edge per pair of edge slots sharing an end.

    A parallel pair of G shares both ends and so yields two parallel edges.
    """
    vertex_of_edge = {eid: i for i, eid in enumerate(g.edge_ids)}
    pairs = []
    for w in g.vertices:
        for a, b in combinations(incident_edges(g, w), 2):
            pairs.append((vertex_of_edge[a], vertex_of_edge[b]))
    return LineGraphResult(MultiGraph.from_pairs(g.m, pairs), vertex_of_edge)


# ---------------------------------------------------------------------------
# Subdivisions and pendant splits
# ---------------------------------------------------------------------------


def subdivide_subset(
    g: MultiGraph, subset: set[EdgeId] | frozenset[EdgeId], r: int
) -> SubdivisionResult:
    """G_{r•F}: replace every edge of F by a path of length r+1."""
    if r < 0:
        raise GraphArgumentError(f"r must be non-negative, got {r}")
    subset = check_edge_ids(g, subset)
    n = g.n
    next_id = g.next_edge_id()
    edges: list[Edge] = []
    paths: dict[EdgeId, list[EdgeId]] = {}
    for e in g.edges:
        if e.id not in subset or r == 0:
            edges.append(e)
            paths[e.id] = [e.id]
            continue
        chain = [e.u, *range(n, n + r), e.v]
        ids = [e.id, *range(next_id, next_id + r)]
        n += r
        next_id += r
        edges.extend(Edge(eid, a, b) for eid, (a, b) in zip(ids, pairwise(chain)))
        paths[e.id] = ids
    return SubdivisionResult(MultiGraph(n, tuple(edges)), paths, r)


def subdivide(g: MultiGraph, r: int) -> SubdivisionResult:
    """S_r(G): every edge replaced by a path of length r+1; S_0(G) is G."""
    return subdivide_subset(g, frozenset(g.edge_ids), r)


def insert_vertex_on_edge(g: MultiGraph, eid: EdgeId) -> MultiGraph:
    """G_{•e}: one new vertex inserted on e."""
    return subdivide_subset(g, frozenset([eid]), 1).graph


def pendant_split(g: MultiGraph, removed: set[EdgeId] | frozenset[EdgeId]) -> MultiGraph:
    """G_{-E'}: delete each e in E' and hang a fresh pendant vertex on both of its ends."""
    removed = check_edge_ids(g, removed)
    n = g.n
    next_id = g.next_edge_id()
    edges = [e for e in g.edges if e.id not in removed]
    for eid in sorted(removed):
        e = g.edge(eid)
        edges.append(Edge(next_id, e.u, n))
        edges.append(Edge(next_id + 1, e.v, n + 1))
        n += 2
        next_id += 2
    return MultiGraph(n, tuple(edges))


# ---------------------------------------------------------------------------
# Clique insertion and clique quotients
# ---------------------------------------------------------------------------


def clique_insert(g: MultiGraph) -> CliqueInsertResult:
    """C(G): every vertex of degree s replaced by a K_s absorbing its edge slots.

    Slot i of a vertex (its i-th incident edge by id) attaches to the i-th clique
    vertex. The images of the original edges keep their ids and form M.
    """
    slot_vertex: dict[tuple[VertexId, EdgeId], VertexId] = {}
    clique_of_vertex: dict[VertexId, frozenset[VertexId]] = {}
    base = 0
    for u in g.vertices:
        slots = incident_edges(g, u)
        for i, eid in enumerate(slots):
            slot_vertex[(u, eid)] = base + i
        clique_of_vertex[u] = frozenset(range(base, base + len(slots)))
        base += len(slots)

    edges = [Edge(e.id, slot_vertex[(e.u, e.id)], slot_vertex[(e.v, e.id)]) for e in g.edges]
    next_id = g.next_edge_id()
    for u in g.vertices:
        for a, b in combinations(sorted(clique_of_vertex[u]), 2):
            edges.append(Edge(next_id, a, b))
            next_id += 1
    return CliqueInsertResult(
        MultiGraph(base, tuple(edges)), frozenset(g.edge_ids), clique_of_vertex
    )


def quotient_by_cliques(
    q: MultiGraph, matching: set[EdgeId] | frozenset[EdgeId]
) -> CliqueStructure:
    """Validate (Q, M) and build Q* by contracting every component of Q - M.

    Raises:
        DomainError: Q is not simple, M is not a matching, or a component of
            Q - M is not complete.
    """
    matching = check_edge_ids(q, matching)
    multiplicity = Counter(tuple(sorted(e.ends)) for e in q.edges)
    parallel = [pair for pair, count in multiplicity.items() if count > 1]
    if parallel:
        raise DomainError("Q must be simple", component=frozenset(parallel[0]))
    if not is_matching(q, matching):
        raise DomainError(f"edge set {sorted(matching)} is not a matching of Q")

    rest = delete_edges(q, matching)
    parts = components(rest)
    clique_of: dict[VertexId, int] = {}
    for i, part in enumerate(parts):
        internal = sum(1 for e in rest.edges if e.u in part)
        if internal != comb(len(part), 2):
            raise DomainError("component of Q - M is not a complete graph", component=part)
        for v in part:
            clique_of[v] = i

    matched = {x for eid in matching for x in q.edge(eid).ends}
    cliques = tuple(
        tuple(sorted(part, key=lambda v: (v not in matched, v))) for part in parts
    )
    quotient_edges = []
    for eid in sorted(matching):
        e = q.edge(eid)
        a, b = clique_of[e.u], clique_of[e.v]
        if a == b:
            raise DomainError(f"matching edge {eid} lies inside a clique", component=parts[a])
        quotient_edges.append(Edge(eid, a, b))
    quotient = MultiGraph(len(parts), tuple(quotient_edges))
    logger.debug(
        "Q*: %d cliques of orders %s, |M|=%d", len(parts), [len(c) for c in cliques], len(matching)
    )
    return CliqueStructure(cliques, matching, quotient, clique_of)

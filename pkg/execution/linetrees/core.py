"""linetrees.core
---------------

Loop-free undirected multigraphs with stable edge identifiers.

Vertices are the dense range 0..n-1. Edges carry an integer id that never
changes under deletion or contraction; the canonical edge order everywhere
in the package is ascending id (for parsed graphs: line order).
Graphs are immutable, every operation returns a new graph.
"""

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from .errors import DomainError, GraphArgumentError

VertexId = int
EdgeId = int


@dataclass(frozen=True)
class Edge:
    """One edge slot pair (u, v) with its stable id."""

    id: EdgeId
    u: VertexId
    v: VertexId

    @property
    def ends(self) -> tuple[VertexId, VertexId]:
        return (self.u, self.v)

    def other(self, x: VertexId) -> VertexId:
        """Return the end of this edge that is not `x`."""
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise GraphArgumentError(f"vertex {x} is not an end of edge {self.id}")


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph without loops.

    Attributes:
        n: Number of vertices; vertex ids are 0..n-1.
        edges: Edges sorted by id. Parallel edges allowed, loops rejected.
    """

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphArgumentError(f"vertex count must be non-negative, got {self.n}")
        ordered = tuple(sorted(self.edges, key=lambda e: e.id))
        seen: set[int] = set()
        for e in ordered:
            if e.id < 0 or e.id in seen:
                raise GraphArgumentError(f"edge id {e.id} is negative or duplicated")
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise GraphArgumentError(f"edge {e.id}=({e.u},{e.v}) leaves range 0..{self.n - 1}")
            if e.u == e.v:
                raise GraphArgumentError(f"edge {e.id} is a loop at vertex {e.u}")
            seen.add(e.id)
        object.__setattr__(self, "edges", ordered)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "MultiGraph":
        """Build a graph whose edge ids follow the order of `pairs`."""
        return cls(n, tuple(Edge(i, u, v) for i, (u, v) in enumerate(pairs)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def edge_ids(self) -> tuple[EdgeId, ...]:
        return tuple(e.id for e in self.edges)

    @cached_property
    def _by_id(self) -> dict[EdgeId, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _incidence(self) -> tuple[tuple[EdgeId, ...], ...]:
        slots: list[list[EdgeId]] = [[] for _ in range(self.n)]
        for e in self.edges:
            slots[e.u].append(e.id)
            slots[e.v].append(e.id)
        return tuple(tuple(s) for s in slots)

    def edge(self, eid: EdgeId) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise GraphArgumentError(f"unknown edge id {eid}") from None

    def has_edge(self, eid: EdgeId) -> bool:
        return eid in self._by_id

    def next_edge_id(self) -> EdgeId:
        """Smallest id above every existing id (fresh ids are allocated from here)."""
        return self.edges[-1].id + 1 if self.edges else 0

    def pairs(self) -> list[tuple[VertexId, VertexId]]:
        return [e.ends for e in self.edges]


class SubsetRole(str, Enum):
    """What an edge subset stands for in the host graph."""

    TREE = "tree"
    FOREST = "forest"
    MATCHING = "matching"
    DELETION_SET = "deletion-set"


@dataclass(frozen=True)
class SpanningSubset:
    """An edge subset of a host graph tagged with its role.

    Construction validates the role: a tree must have n-1 acyclic edges,
    a forest must be acyclic and a matching must be vertex-disjoint.
    """

    host: MultiGraph
    edge_ids: frozenset[EdgeId]
    role: SubsetRole = SubsetRole.FOREST

    def __post_init__(self) -> None:
        ids = frozenset(self.edge_ids)
        object.__setattr__(self, "edge_ids", ids)
        check_edge_ids(self.host, ids)
        if self.role in (SubsetRole.TREE, SubsetRole.FOREST) and not is_acyclic(self.host, ids):
            raise DomainError(f"edge set {sorted(ids)} contains a cycle")
        if self.role is SubsetRole.TREE and len(ids) != self.host.n - 1:
            raise DomainError(
                f"{len(ids)} edges cannot span a tree on {self.host.n} vertices"
            )
        if self.role is SubsetRole.MATCHING and not is_matching(self.host, ids):
            raise DomainError(f"edge set {sorted(ids)} is not a matching")

    @property
    def sorted_ids(self) -> tuple[EdgeId, ...]:
        return tuple(sorted(self.edge_ids))

    def as_graph(self) -> MultiGraph:
        return spanning_subgraph(self.host, self.edge_ids)


class _DisjointSet:
    """Union-find over 0..n-1 (path halving, union by smaller root id)."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


# ---------------------------------------------------------------------------
# Validation helpers
# ---------------------------------------------------------------------------


def check_vertex(g: MultiGraph, v: VertexId) -> None:
    if not 0 <= v < g.n:
        raise GraphArgumentError(f"vertex {v} out of range 0..{g.n - 1}")


def check_vertices(g: MultiGraph, vertices: Iterable[VertexId]) -> frozenset[VertexId]:
    found = frozenset(vertices)
    for v in found:
        check_vertex(g, v)
    return found


def check_edge_ids(g: MultiGraph, ids: Iterable[EdgeId]) -> frozenset[EdgeId]:
    found = frozenset(ids)
    missing = sorted(eid for eid in found if not g.has_edge(eid))
    if missing:
        raise GraphArgumentError(f"unknown edge id(s) {missing}")
    return found


# ---------------------------------------------------------------------------
# Local structure
# ---------------------------------------------------------------------------


def degree(g: MultiGraph, v: VertexId) -> int:
    """Degree of `v`, counting parallel edges with multiplicity."""
    check_vertex(g, v)
    return len(g._incidence[v])


def degrees(g: MultiGraph) -> list[int]:
    return [len(slots) for slots in g._incidence]


def incident_edges(g: MultiGraph, v: VertexId) -> tuple[EdgeId, ...]:
    """Edge ids incident to `v`, ascending."""
    check_vertex(g, v)
    return g._incidence[v]


def neighbors(g: MultiGraph, v: VertexId) -> list[VertexId]:
    """Neighbours of `v`, one entry per incident edge (parallel edges repeat)."""
    return [g.edge(eid).other(v) for eid in incident_edges(g, v)]


def is_regular(g: MultiGraph) -> int | None:
    """Return k if every vertex has degree k, else None (None for the null graph)."""
    degs = set(degrees(g))
    return degs.pop() if len(degs) == 1 else None


def is_acyclic(g: MultiGraph, ids: Iterable[EdgeId]) -> bool:
    dsu = _DisjointSet(g.n)
    return all(dsu.union(g.edge(eid).u, g.edge(eid).v) for eid in ids)


def is_matching(g: MultiGraph, ids: Iterable[EdgeId]) -> bool:
    covered: set[VertexId] = set()
    for eid in ids:
        e = g.edge(eid)
        if e.u in covered or e.v in covered:
            return False
        covered.update(e.ends)
    return True


# ---------------------------------------------------------------------------
# Subgraphs
# ---------------------------------------------------------------------------


def delete_edges(g: MultiGraph, removed: Iterable[EdgeId]) -> MultiGraph:
    """G - E': same vertices, surviving edges keep their ids."""
    removed = check_edge_ids(g, removed)
    if not removed:
        return g
    return MultiGraph(g.n, tuple(e for e in g.edges if e.id not in removed))


def spanning_subgraph(g: MultiGraph, kept: Iterable[EdgeId]) -> MultiGraph:
    """G[E']: all vertices of g, exactly the edges in E'."""
    kept = check_edge_ids(g, kept)
    return MultiGraph(g.n, tuple(e for e in g.edges if e.id in kept))


def induced_subgraph(
    g: MultiGraph, vertices: Iterable[VertexId]
) -> tuple[MultiGraph, dict[VertexId, VertexId]]:
    """G[U] with U re-indexed densely in ascending order.

    Returns:
        (subgraph, old-to-new vertex map). Edge ids are preserved.
    """
    keep = sorted(check_vertices(g, vertices))
    remap = {old: new for new, old in enumerate(keep)}
    edges = tuple(
        Edge(e.id, remap[e.u], remap[e.v]) for e in g.edges if e.u in remap and e.v in remap
    )
    return MultiGraph(len(keep), edges), remap


def _merge_classes(
    g: MultiGraph, dsu: _DisjointSet, dropped: frozenset[EdgeId]
) -> tuple[MultiGraph, dict[VertexId, VertexId]]:
    # Each class is represented by its minimum vertex; classes keep the relative
    # order of their representatives.
    roots = sorted({dsu.find(v) for v in range(g.n)})
    rank = {root: i for i, root in enumerate(roots)}
    vmap = {v: rank[dsu.find(v)] for v in range(g.n)}
    edges = []
    for e in g.edges:
        if e.id in dropped:
            continue
        a, b = vmap[e.u], vmap[e.v]
        if a != b:
            edges.append(Edge(e.id, a, b))
    return MultiGraph(len(roots), tuple(edges)), vmap


def contract_edges(
    g: MultiGraph, contracted: Iterable[EdgeId]
) -> tuple[MultiGraph, dict[VertexId, VertexId]]:
    """G/E': merge the ends of every edge in E'; loops are discarded.

    Returns:
        (contracted graph, surjective old-to-new vertex map).
    """
    contracted = check_edge_ids(g, contracted)
    dsu = _DisjointSet(g.n)
    for eid in contracted:
        e = g.edge(eid)
        dsu.union(e.u, e.v)
    return _merge_classes(g, dsu, contracted)


def identify_vertices(
    g: MultiGraph, merged: Iterable[VertexId]
) -> tuple[MultiGraph, dict[VertexId, VertexId]]:
    """Identify all vertices of U into one vertex; edges inside U become loops and vanish."""
    merged = sorted(check_vertices(g, merged))
    dsu = _DisjointSet(g.n)
    for v in merged[1:]:
        dsu.union(merged[0], v)
    return _merge_classes(g, dsu, frozenset())


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------


def components(g: MultiGraph) -> list[frozenset[VertexId]]:
    """Connected components as vertex sets, in a fixed order.

    Components with edges come first, ordered by their smallest edge id;
    isolated vertices follow in vertex order.
    """
    seen = [False] * g.n
    with_edges: list[tuple[int, frozenset[VertexId]]] = []
    isolated: list[frozenset[VertexId]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        members = [start]
        queue = deque([start])
        min_edge: int | None = None
        while queue:
            x = queue.popleft()
            for eid in g._incidence[x]:
                min_edge = eid if min_edge is None else min(min_edge, eid)
                y = g._by_id[eid].other(x)
                if not seen[y]:
                    seen[y] = True
                    members.append(y)
                    queue.append(y)
        if min_edge is None:
            isolated.append(frozenset(members))
        else:
            with_edges.append((min_edge, frozenset(members)))
    with_edges.sort(key=lambda item: item[0])
    return [comp for _, comp in with_edges] + isolated


def is_connected(g: MultiGraph) -> bool:
    """True iff g has exactly one component (the null graph is not connected)."""
    return len(components(g)) == 1


def is_tree(g: MultiGraph) -> bool:
    return g.m == g.n - 1 and is_connected(g)


def boundary_edges(
    g: MultiGraph, side: Iterable[VertexId], other: Iterable[VertexId] | None = None
) -> frozenset[EdgeId]:
    """E_G(V1, V2): edges with one end in V1 and the other in V2.

    With V2 omitted, V2 = V(G) - V1.
    """
    v1 = check_vertices(g, side)
    v2 = frozenset(g.vertices) - v1 if other is None else check_vertices(g, other)
    if v1 & v2:
        raise GraphArgumentError(f"vertex sets overlap on {sorted(v1 & v2)}")
    return frozenset(
        e.id
        for e in g.edges
        if (e.u in v1 and e.v in v2) or (e.v in v1 and e.u in v2)
    )


def bipartition(g: MultiGraph) -> tuple[frozenset[VertexId], frozenset[VertexId]] | None:
    """2-colour g; colour class of each component's first vertex goes to the first set.

    Returns:
        (A, B) or None when g has an odd cycle.
    """
    colour: dict[VertexId, int] = {}
    for comp in components(g):
        start = min(comp)
        colour[start] = 0
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for eid in g._incidence[x]:
                y = g._by_id[eid].other(x)
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    queue.append(y)
                elif colour[y] == colour[x]:
                    return None
    side_a = frozenset(v for v, c in colour.items() if c == 0)
    return side_a, frozenset(g.vertices) - side_a


def degree_sequence(g: MultiGraph) -> tuple[int, ...]:
    return tuple(sorted(degrees(g), reverse=True))

"""linetrees.partitions
--------------------

The constructive side of the clique counting argument.

- `phi_select`: the canonical boundary-edge transversal Phi(T, V0, v).
- `exchange`: the neighbour swap T(e <-> e') inside a clique V0.
- `algorithm_b`: the map psi from T_Q(M) to labels (T0, f).
- `reconstruct_fiber`: the forward enumeration of psi^{-1}(T0, f).
- `verify_partition` / `verify_clique_forest`: exhaustive checks of the
  partition sizes, returned as report objects rather than raised.
"""

import logging
from collections import Counter, defaultdict, deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, prod

from .core import (
    EdgeId,
    MultiGraph,
    SpanningSubset,
    SubsetRole,
    VertexId,
    boundary_edges,
    check_vertices,
    components,
    contract_edges,
    delete_edges,
    identify_vertices,
    incident_edges,
    induced_subgraph,
    is_tree,
    neighbors,
    spanning_subgraph,
)
from .errors import DomainError
from .formulas import (
    EndpointMap,
    enumerate_gamma,
    eval_clique_boundary_count,
    eval_gen_result,
    preimage_profile,
)
from .transforms import CliqueStructure, quotient_by_cliques
from .treecount import (
    ConstrainedFamily,
    count_trees_containing,
    enumerate_spanning_trees,
    enumerate_trees_containing,
)

logger = logging.getLogger("linetrees.partitions")


# ---------------------------------------------------------------------------
# Algorithm A
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PhiSelection:
    """Phi(T, V0, v) with the ordered components of T - V0 it was built from.

    Attributes:
        tree: The spanning tree T.
        V0: The vertex set being collapsed.
        anchor_v: The vertex v (used only when T - V0 is connected).
        selected: One boundary edge of T per component of T - V0.
        parts: Components F_1..F_t of T - V0, sorted by minimum boundary edge id.
    """

    tree: SpanningSubset
    V0: frozenset[VertexId]
    anchor_v: VertexId
    selected: frozenset[EdgeId]
    parts: tuple[frozenset[VertexId], ...] = ()

    @property
    def t(self) -> int:
        return len(self.parts)


def _outside_parts(
    tg: MultiGraph, V0: frozenset[VertexId]
) -> tuple[list[frozenset[VertexId]], dict[VertexId, int]]:
    outside = [x for x in tg.vertices if x not in V0]
    sub, remap = induced_subgraph(tg, outside)
    back = {new: old for old, new in remap.items()}
    parts = [frozenset(back[x] for x in comp) for comp in components(sub)]
    part_of = {x: j for j, part in enumerate(parts) for x in part}
    return parts, part_of


def _check_collapse_args(tree: SpanningSubset, V0: Iterable[VertexId]) -> frozenset[VertexId]:
    if tree.role is not SubsetRole.TREE:
        raise DomainError(f"expected a spanning tree, got role {tree.role.value}")
    V0 = check_vertices(tree.host, V0)
    if not V0 or len(V0) >= tree.host.n:
        raise DomainError("V0 must be a non-empty proper subset of the vertices", component=V0)
    return V0


def phi_select(
    tree: SpanningSubset, V0: Iterable[VertexId], v: VertexId, strict: bool = True
) -> PhiSelection:
    """Select one boundary edge of T per component of T - V0.

    With t = 1 the edge is the unique boundary edge whose V0-end lies in the
    component of T[V0] containing v. With t >= 2 the components are sorted by
    their minimum boundary edge id and the selection is read off the tree paths
    P_j from F_1 to F_j: the F_1-edge of P_2 and the F_j-edge of every P_j.

    Args:
        tree: A spanning tree of its host.
        V0: Non-empty proper vertex subset.
        v: Anchor vertex in V0.
        strict: Require N_T(v) to lie in V0 when t = 1.

    Raises:
        DomainError: A precondition fails.
    """
    V0 = _check_collapse_args(tree, V0)
    if v not in V0:
        raise DomainError(f"anchor {v} is not in V0", component=V0)
    tg = tree.as_graph()
    parts, part_of = _outside_parts(tg, V0)
    crossing = boundary_edges(tg, V0)
    by_part: dict[int, list[EdgeId]] = defaultdict(list)
    for eid in sorted(crossing):
        e = tg.edge(eid)
        outer = e.v if e.u in V0 else e.u
        by_part[part_of[outer]].append(eid)
    order = sorted(range(len(parts)), key=lambda j: by_part[j][0])
    parts = [parts[j] for j in order]
    part_of = {x: rank for rank, j in enumerate(order) for x in parts[rank]}

    if len(parts) == 1:
        if strict and any(w not in V0 for w in neighbors(tg, v)):
            raise DomainError(f"anchor {v} has a tree neighbour outside V0", component=V0)
        inner, remap = induced_subgraph(tg, V0)
        back = {new: old for old, new in remap.items()}
        reach = next(
            frozenset(back[x] for x in comp) for comp in components(inner) if remap[v] in comp
        )
        picked = [
            eid for eid in crossing if tg.edge(eid).u in reach or tg.edge(eid).v in reach
        ]
        if len(picked) != 1:
            raise DomainError(f"expected one boundary edge next to {v}, found {picked}")
        selected = frozenset(picked)
    else:
        selected = frozenset(_path_selection(tg, parts, part_of))
    return PhiSelection(tree, V0, v, selected, tuple(parts))


def _path_selection(
    tg: MultiGraph, parts: list[frozenset[VertexId]], part_of: dict[VertexId, int]
) -> list[EdgeId]:
    # Root the tree at F_1: every walk towards F_1 follows the unique tree path.
    parent: dict[VertexId, EdgeId | None] = {x: None for x in parts[0]}
    queue = deque(parts[0])
    while queue:
        x = queue.popleft()
        for eid in incident_edges(tg, x):
            y = tg.edge(eid).other(x)
            if y not in parent:
                parent[y] = eid
                queue.append(y)

    picked = []
    for j in range(1, len(parts)):
        x = min(parts[j])
        leave: EdgeId | None = None
        last: EdgeId | None = None
        while parent[x] is not None:
            eid = parent[x]
            y = tg.edge(eid).other(x)
            if leave is None and part_of.get(y) != j:
                leave = eid
            last = eid
            x = y
        picked.append(leave)
        if j == 1:
            picked.append(last)
    return picked


def collapses_to_tree(
    tree: SpanningSubset, V0: Iterable[VertexId], kept: Iterable[EdgeId]
) -> bool:
    """True if removing E_T(V0) - S and identifying V0 leaves a tree."""
    V0 = _check_collapse_args(tree, V0)
    tg = tree.as_graph()
    crossing = boundary_edges(tg, V0)
    reduced = delete_edges(tg, crossing - frozenset(kept))
    collapsed, _ = identify_vertices(reduced, V0)
    return is_tree(collapsed)


# ---------------------------------------------------------------------------
# Neighbour exchange
# ---------------------------------------------------------------------------


def _joining_edge(host: MultiGraph, a: VertexId, b: VertexId) -> EdgeId:
    found = [eid for eid in incident_edges(host, a) if host.edge(eid).other(a) == b]
    if len(found) != 1:
        raise DomainError(f"need exactly one host edge joining {a} and {b}, found {found}")
    return found[0]


def exchange(
    tree: SpanningSubset, V0: Iterable[VertexId], e: EdgeId, e_prime: EdgeId
) -> SpanningSubset:
    """T(e <-> e'): swap the V0-neighbourhoods of the V0-ends u and u' inside T[V0].

    Every T[V0] edge (u, w) with w != u' becomes (u', w) and vice versa; the
    edge (u, u') stays. e is replaced by e' (when e' is already in T the two
    are simply exchanged, leaving the boundary unchanged).

    Raises:
        DomainError: e and e' are not distinct boundary edges into the same
            component of T - V0, e is not in T, or the result is not a tree.
    """
    V0 = _check_collapse_args(tree, V0)
    host = tree.host
    if e == e_prime:
        raise DomainError(f"exchange needs two distinct edges, got {e} twice")
    crossing = boundary_edges(host, V0)
    if e not in crossing or e_prime not in crossing:
        raise DomainError(f"edges {e} and {e_prime} must both leave V0", component=V0)
    if e not in tree.edge_ids:
        raise DomainError(f"edge {e} is not in the tree")

    def split(eid: EdgeId) -> tuple[VertexId, VertexId]:
        edge = host.edge(eid)
        return (edge.u, edge.v) if edge.u in V0 else (edge.v, edge.u)

    u, x = split(e)
    u2, x2 = split(e_prime)
    if u == u2:
        raise DomainError(f"edges {e} and {e_prime} share their V0-end {u}")
    _, part_of = _outside_parts(tree.as_graph(), V0)
    if part_of[x] != part_of[x2]:
        raise DomainError(f"edges {e} and {e_prime} reach different components of T - V0")

    swap = {u: u2, u2: u}
    result = set()
    for eid in tree.edge_ids:
        edge = host.edge(eid)
        if edge.u in V0 and edge.v in V0:
            a, b = swap.get(edge.u, edge.u), swap.get(edge.v, edge.v)
            if {edge.u, edge.v} == {u, u2} or (a, b) == edge.ends:
                result.add(eid)
            else:
                result.add(_joining_edge(host, a, b))
        elif eid == e:
            result.add(e_prime)
        elif eid == e_prime:
            result.add(e)
        else:
            result.add(eid)
    return SpanningSubset(host, frozenset(result), SubsetRole.TREE)


# ---------------------------------------------------------------------------
# Algorithm B
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartitionLabel:
    """The label (T0, f) of a tree of T_Q(M)."""

    base_tree: SpanningSubset
    endpoint_map: EndpointMap

    @property
    def key(self) -> tuple[tuple[EdgeId, ...], tuple[tuple[EdgeId, VertexId], ...]]:
        return self.base_tree.sorted_ids, self.endpoint_map.assignment

    def predicted_size(self, orders: tuple[int, ...]) -> Fraction:
        """prod_i k_i^{k_i-2-|f^{-1}(v_i)|}."""
        profile = preimage_profile(self.endpoint_map)
        return prod(
            (Fraction(k) ** (k - 2 - profile[i]) for i, k in enumerate(orders)),
            start=Fraction(1),
        )


@dataclass(frozen=True)
class StageHosts:
    """The host graphs Q_n, ..., Q_1 in which the cliques are collapsed.

    Clique c (a vertex of Q*) is collapsed in `hosts[c]`; cliques are processed
    from the last index down to 0. Vertex numbering in every host depends only
    on Q, so tree edge sets of each stage can be read against it.

    Attributes:
        structure: The clique decomposition of (Q, M).
        hosts: hosts[c] is the graph in which clique c is collapsed.
        cliques: Vertex set of clique c inside hosts[c].
        anchors: Anchor vertex of clique c inside hosts[c].
        merged: Vertex representing clique c after its collapse.
        collapsed: Q_0, isomorphic to Q* with identical edge ids.
    """

    structure: CliqueStructure
    hosts: tuple[MultiGraph, ...]
    cliques: tuple[frozenset[VertexId], ...]
    anchors: tuple[VertexId, ...]
    merged: tuple[VertexId, ...]
    collapsed: MultiGraph

    def after(self, c: int) -> MultiGraph:
        """The host left once clique c has been collapsed."""
        return self.hosts[c - 1] if c > 0 else self.collapsed

    def strict(self, c: int) -> bool:
        s = self.structure
        return s.orders[c] > s.matching_degrees[c]


def build_stage_hosts(structure: CliqueStructure, q: MultiGraph) -> StageHosts:
    n = len(structure.cliques)
    hosts: list[MultiGraph] = [q] * n
    cliques: list[frozenset[VertexId]] = [frozenset()] * n
    anchors: list[VertexId] = [0] * n
    merged: list[VertexId] = [0] * n
    g = q
    vmap = {x: x for x in q.vertices}
    for c in reversed(range(n)):
        local = frozenset(vmap[x] for x in structure.cliques[c])
        hosts[c], cliques[c] = g, local
        anchors[c] = vmap[structure.cliques[c][-1]]
        internal = [eid for eid in g.edge_ids if set(g.edge(eid).ends) <= local]
        g, step = identify_vertices(delete_edges(g, internal), local)
        merged[c] = step[min(local)]
        vmap = {x: step[y] for x, y in vmap.items()}
    return StageHosts(structure, tuple(hosts), tuple(cliques), tuple(anchors), tuple(merged), g)


@dataclass(frozen=True)
class AlgorithmBTrace:
    """One run of Algorithm B.

    Attributes:
        label: The output (T0, f).
        removed: removed[c] is D for clique c.
        stage_trees: stage_trees[c] is the tree edge set before clique c is collapsed.
    """

    label: PartitionLabel
    removed: tuple[frozenset[EdgeId], ...]
    stage_trees: tuple[frozenset[EdgeId], ...]


def run_algorithm_b(tree: SpanningSubset, stages: StageHosts) -> AlgorithmBTrace:
    """Collapse the cliques of T one by one, recording the dropped boundary edges.

    For each clique V_c (last index first): D_c = E_T(V_c) - Phi(T, V_c, anchor),
    then D_c and T[V_c] are deleted and V_c identified to a single vertex.

    Raises:
        DomainError: T does not contain M or an intermediate graph is not a tree.
    """
    structure = stages.structure
    if not structure.matching <= tree.edge_ids:
        raise DomainError("the tree does not contain the matching M")
    n = len(structure.cliques)
    ids = tree.edge_ids
    removed: list[frozenset[EdgeId]] = [frozenset()] * n
    stage_trees: list[frozenset[EdgeId]] = [frozenset()] * n
    assignment: dict[EdgeId, VertexId] = {}
    for c in reversed(range(n)):
        host, local = stages.hosts[c], stages.cliques[c]
        stage_trees[c] = ids
        current = SpanningSubset(host, ids, SubsetRole.TREE)
        crossing = boundary_edges(host, local) & ids
        if len(local) == host.n:
            kept: frozenset[EdgeId] = frozenset()
        else:
            kept = phi_select(current, local, stages.anchors[c], stages.strict(c)).selected
        dropped = crossing - kept
        internal = {eid for eid in ids if set(host.edge(eid).ends) <= local}
        removed[c] = dropped
        assignment.update((eid, c) for eid in dropped)
        ids = ids - dropped - internal
    base = SpanningSubset(structure.quotient, ids, SubsetRole.TREE)
    label = PartitionLabel(base, EndpointMap.from_dict(assignment))
    return AlgorithmBTrace(label, tuple(removed), tuple(stage_trees))


def algorithm_b(tree: SpanningSubset, stages: StageHosts) -> PartitionLabel:
    """psi(T) = (T0, f)."""
    return run_algorithm_b(tree, stages).label


def reconstruct_fiber(stages: StageHosts, label: PartitionLabel) -> list[SpanningSubset]:
    """Enumerate psi^{-1}(T0, f) forward from T0, one clique at a time.

    At the stage of clique c, each partial tree T' of the collapsed host grows
    to the trees of H_c (T' plus D_c plus the clique edges of V_c) that contain
    T' and D_c and whose Phi equals the edges of T' at the collapsed vertex.
    """
    structure = stages.structure
    label.endpoint_map.validate(structure.quotient)
    wanted: dict[int, set[EdgeId]] = defaultdict(set)
    for eid, c in label.endpoint_map.assignment:
        wanted[c].add(eid)

    frontier = {label.base_tree.edge_ids}
    for c in range(len(structure.cliques)):
        host, local = stages.hosts[c], stages.cliques[c]
        after, centre = stages.after(c), stages.merged[c]
        internal = frozenset(eid for eid in host.edge_ids if set(host.edge(eid).ends) <= local)
        dropped = frozenset(wanted[c])
        grown: set[frozenset[EdgeId]] = set()
        for prev in frontier:
            at_centre = frozenset(eid for eid in prev if centre in after.edge(eid).ends)
            stage_host = spanning_subgraph(host, prev | dropped | internal)
            family = ConstrainedFamily(stage_host, prev | dropped)
            for t in enumerate_trees_containing(family):
                if len(local) == host.n:
                    grown.add(t.edge_ids)
                    continue
                sel = phi_select(t, local, stages.anchors[c], stages.strict(c)).selected
                if sel == at_centre:
                    grown.add(t.edge_ids)
        frontier = grown
    q = stages.hosts[-1] if stages.hosts else stages.collapsed
    return [
        SpanningSubset(q, ids, SubsetRole.TREE) for ids in sorted(frontier, key=sorted)
    ]


# ---------------------------------------------------------------------------
# Verification reports
# ---------------------------------------------------------------------------


@dataclass
class LabelMismatch:
    """A label whose observed fibre size differs from the predicted one."""

    base_tree: tuple[EdgeId, ...]
    assignment: tuple[tuple[EdgeId, VertexId], ...]
    observed: int
    predicted: Fraction

    def __str__(self) -> str:
        return (
            f"T0={list(self.base_tree)} f={dict(self.assignment)}: "
            f"{self.observed} != {self.predicted}"
        )


@dataclass
class PartitionReport:
    """Outcome of `verify_partition`.

    Attributes:
        tree_count: |T_Q(M)| by enumeration.
        formula_count: The clique quotient sum.
        free_vertices: True when k_i > m_i for every clique (per-label sizes checked).
        histogram: Observed fibre size per realised label.
        labels_checked: Number of labels whose size was compared.
        mismatches: Labels whose observed size differs from the prediction.
        reconstruction_failures: Labels whose forward enumeration disagreed with psi.
    """

    tree_count: int
    formula_count: int
    free_vertices: bool
    histogram: dict = field(default_factory=dict)
    labels_checked: int = 0
    predicted_total: Fraction = Fraction(0)
    mismatches: list[LabelMismatch] = field(default_factory=list)
    reconstruction_failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.tree_count == self.formula_count
            and not self.mismatches
            and not self.reconstruction_failures
        )


def verify_partition(
    q: MultiGraph, matching: SpanningSubset, reconstruct: bool = True
) -> PartitionReport:
    """Run Algorithm B over all of T_Q(M) and compare fibre sizes with their prediction.

    When every clique has a vertex outside M, every label (T0, f) is checked,
    including labels that no tree reaches. Otherwise only the total is compared.
    """
    structure = quotient_by_cliques(q, matching.edge_ids)
    stages = build_stage_hosts(structure, q)
    trees = enumerate_trees_containing(ConstrainedFamily(q, matching.edge_ids))
    fibres: dict = defaultdict(list)
    labels: dict = {}
    for tree in trees:
        label = algorithm_b(tree, stages)
        fibres[label.key].append(tree.edge_ids)
        labels[label.key] = label

    report = PartitionReport(
        tree_count=len(trees),
        formula_count=eval_gen_result(q, matching),
        free_vertices=structure.has_free_vertices(),
        histogram={key: len(members) for key, members in fibres.items()},
    )
    if report.free_vertices:
        quotient = structure.quotient
        for base in enumerate_spanning_trees(quotient):
            rest = [eid for eid in quotient.edge_ids if eid not in base.edge_ids]
            for emap in enumerate_gamma(quotient, rest):
                label = PartitionLabel(base, emap)
                predicted = label.predicted_size(structure.orders)
                observed = report.histogram.get(label.key, 0)
                report.labels_checked += 1
                report.predicted_total += predicted
                if observed != predicted:
                    report.mismatches.append(
                        LabelMismatch(base.sorted_ids, emap.assignment, observed, predicted)
                    )

    if reconstruct:
        for key, members in fibres.items():
            rebuilt = {t.edge_ids for t in reconstruct_fiber(stages, labels[key])}
            if rebuilt != set(members):
                report.reconstruction_failures.append(
                    f"T0={list(key[0])} f={dict(key[1])}: "
                    f"{len(rebuilt)} rebuilt vs {len(members)} mapped"
                )
    logger.info(
        "Partition check: %d trees, %d labels realised, %d mismatches",
        report.tree_count,
        len(report.histogram),
        len(report.mismatches),
    )
    return report


@dataclass
class ExtensionCount:
    """Observed and predicted size of one (T', D) extension class."""

    quotient_tree: tuple[EdgeId, ...]
    extra: tuple[EdgeId, ...]
    observed: int
    predicted: int


@dataclass
class CliqueForestReport:
    """Outcome of `verify_clique_forest` for a k-clique V0 with forest F = G - E(G[V0]).

    Attributes:
        k: |V0|.
        d: Number of boundary edges of V0.
        boundary_sizes: |E(V0, F_j)| per component of G - V0.
        total_formula: k^{k-2+t-d} prod |E(V0, F_j)|.
        total_observed: |T_G(F)|.
        fibre_sizes: |T_G(F, S, v)| per transversal S (sorted edge ids).
        fibre_expected: k^{k-2+t-d}.
        exchange_checks: Number of (S, e, e') exchanges tested.
        exchange_failures: Exchanges whose image was not the target fibre.
        extensions: Extension counts for every (T', D).
    """

    k: int
    d: int
    boundary_sizes: list[int]
    total_formula: int
    total_observed: int
    fibre_sizes: dict[tuple[EdgeId, ...], int] = field(default_factory=dict)
    fibre_expected: int = 0
    exchange_checks: int = 0
    exchange_failures: list[str] = field(default_factory=list)
    extensions: list[ExtensionCount] = field(default_factory=list)

    @property
    def t(self) -> int:
        return len(self.boundary_sizes)

    @property
    def passed(self) -> bool:
        return (
            self.total_formula == self.total_observed
            and all(size == self.fibre_expected for size in self.fibre_sizes.values())
            and not self.exchange_failures
            and all(x.observed == x.predicted for x in self.extensions)
        )


def verify_clique_forest(
    g: MultiGraph, V0: Iterable[VertexId], v: VertexId
) -> CliqueForestReport:
    """Check the clique-plus-forest counts, fibre sizes, exchanges and extensions.

    Preconditions: G is connected, V0 induces a simple complete graph,
    F = G - E(G[V0]) is a forest, every vertex of V0 has at most one F-edge,
    and the anchor v in V0 has no F-edge.

    Raises:
        DomainError: A precondition fails.
    """
    V0 = check_vertices(g, V0)
    k = len(V0)
    if not V0 or k >= g.n:
        raise DomainError("V0 must be a non-empty proper subset of the vertices", component=V0)
    internal = frozenset(eid for eid in g.edge_ids if set(g.edge(eid).ends) <= V0)
    pairs = {frozenset(g.edge(eid).ends) for eid in internal}
    if len(internal) != comb(k, 2) or len(pairs) != comb(k, 2):
        raise DomainError("V0 does not induce a simple complete graph", component=V0)
    forest_ids = frozenset(g.edge_ids) - internal
    family = ConstrainedFamily(g, forest_ids)
    if not family.is_feasible:
        raise DomainError("G - E(G[V0]) is not a forest")
    crossing = boundary_edges(g, V0)
    ends = Counter(x for eid in crossing for x in g.edge(eid).ends if x in V0)
    if any(count > 1 for count in ends.values()):
        raise DomainError("a vertex of V0 carries more than one forest edge", component=V0)
    if v not in V0 or ends[v]:
        raise DomainError(f"anchor {v} must lie in V0 with no forest edge", component=V0)

    outside = [x for x in g.vertices if x not in V0]
    sub, remap = induced_subgraph(g, outside)
    back = {new: old for old, new in remap.items()}
    parts = [frozenset(back[x] for x in comp) for comp in components(sub)]
    per_part: list[list[EdgeId]] = []
    for part in parts:
        edges = sorted(eid for eid in crossing if set(g.edge(eid).ends) & part)
        if not edges:
            raise DomainError("G is disconnected", component=part)
        per_part.append(edges)
    sizes = [len(edges) for edges in per_part]
    d, t = len(crossing), len(parts)

    trees = enumerate_trees_containing(family)
    report = CliqueForestReport(
        k=k,
        d=d,
        boundary_sizes=sizes,
        total_formula=eval_clique_boundary_count(k, d, t, sizes),
        total_observed=count_trees_containing(family),
        fibre_expected=k ** (k - 2 + t - d),
    )
    fibres: dict[frozenset[EdgeId], set[frozenset[EdgeId]]] = {
        frozenset(choice): set() for choice in product(*per_part)
    }
    for tree in trees:
        fibres.setdefault(phi_select(tree, V0, v).selected, set()).add(tree.edge_ids)
    report.fibre_sizes = {tuple(sorted(s)): len(members) for s, members in fibres.items()}

    for s, members in fibres.items():
        for old in sorted(s):
            edges = next(edges for edges in per_part if old in edges)
            for new in edges:
                if new == old:
                    continue
                target = fibres[(s - {old}) | {new}]
                image = {
                    exchange(SpanningSubset(g, ids, SubsetRole.TREE), V0, old, new).edge_ids
                    for ids in members
                }
                report.exchange_checks += 1
                if image != target:
                    report.exchange_failures.append(
                        f"S={sorted(s)} {old}->{new}: {len(image)} images, {len(target)} targets"
                    )

    report.extensions = _extension_counts(g, V0, v, internal, crossing)
    logger.info(
        "Clique-forest check: k=%d d=%d t=%d, %d trees, %d exchanges",
        k,
        d,
        t,
        len(trees),
        report.exchange_checks,
    )
    return report


def _extension_counts(
    g: MultiGraph,
    V0: frozenset[VertexId],
    v: VertexId,
    internal: frozenset[EdgeId],
    crossing: frozenset[EdgeId],
) -> list[ExtensionCount]:
    """Count the trees of G lifting each tree T' of G/E(G[V0]) with extra boundary set D."""
    k = len(V0)
    outside_ids = frozenset(g.edge_ids) - internal - crossing
    contracted, vmap = contract_edges(g, internal)
    centre = vmap[min(V0)]
    counts = []
    for base in enumerate_trees_containing(ConstrainedFamily(contracted, outside_ids)):
        at_centre = frozenset(
            eid for eid in base.edge_ids if centre in contracted.edge(eid).ends
        )
        spare = sorted(crossing - at_centre)
        for size in range(len(spare) + 1):
            for extra in combinations(spare, size):
                host = delete_edges(g, frozenset(spare) - frozenset(extra))
                required = outside_ids | at_centre | frozenset(extra)
                observed = sum(
                    1
                    for tree in enumerate_trees_containing(ConstrainedFamily(host, required))
                    if phi_select(tree, V0, v).selected == at_centre
                )
                counts.append(
                    ExtensionCount(base.sorted_ids, extra, observed, k ** (k - 2 - size))
                )
    return counts

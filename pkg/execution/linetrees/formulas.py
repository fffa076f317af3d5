"""linetrees.formulas
------------------

Exact evaluators for the closed-form spanning-tree identities of line graphs
of subdivisions, clique-inserted graphs and their special cases.

All arithmetic is done in `fractions.Fraction`; evaluators whose value must be
an integer pass through `require_integral` before returning. The combinatorial
sums (over edge subsets E' and endpoint maps in Gamma(E')) are enumerated
explicitly.
"""

import logging
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, prod

from .config import get_limits
from .core import (
    EdgeId,
    MultiGraph,
    SpanningSubset,
    VertexId,
    bipartition,
    check_edge_ids,
    degree,
    degrees,
    delete_edges,
    is_connected,
    is_regular,
    spanning_subgraph,
)
from .errors import DomainError, GraphArgumentError, NonIntegralResultError, ResourceLimitError
from .transforms import (
    insert_vertex_on_edge,
    line_graph,
    pendant_split,
    quotient_by_cliques,
    subdivide_subset,
)
from .treecount import BigCount, count_matrix_tree, enumerate_spanning_trees

logger = logging.getLogger("linetrees.formulas")

ExactRational = Fraction


@dataclass(frozen=True)
class EndpointMap:
    """A map g in Gamma(E'): each edge of the domain sent to one of its two ends.

    Attributes:
        assignment: (edge id, chosen end) pairs sorted by edge id.
    """

    assignment: tuple[tuple[EdgeId, VertexId], ...] = ()

    @classmethod
    def from_dict(cls, mapping: dict[EdgeId, VertexId]) -> "EndpointMap":
        return cls(tuple(sorted(mapping.items())))

    @property
    def domain(self) -> frozenset[EdgeId]:
        return frozenset(eid for eid, _ in self.assignment)

    def as_dict(self) -> dict[EdgeId, VertexId]:
        return dict(self.assignment)

    def __getitem__(self, eid: EdgeId) -> VertexId:
        for key, end in self.assignment:
            if key == eid:
                return end
        raise KeyError(eid)

    def __len__(self) -> int:
        return len(self.assignment)

    def validate(self, g: MultiGraph) -> None:
        """Raise DomainError unless every image is an end of its edge in g."""
        for eid, end in self.assignment:
            if end not in g.edge(eid).ends:
                raise DomainError(f"vertex {end} is not an end of edge {eid}")


@dataclass(frozen=True)
class PreimageProfile:
    """|g^{-1}(v)| for every vertex v hit by an endpoint map."""

    counts: dict[VertexId, int]

    def __getitem__(self, v: VertexId) -> int:
        return self.counts.get(v, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def preimage_profile(emap: EndpointMap) -> PreimageProfile:
    return PreimageProfile(dict(Counter(end for _, end in emap.assignment)))


def enumerate_gamma(g: MultiGraph, edges: Iterable[EdgeId]) -> Iterator[EndpointMap]:
    """Yield all 2^|E'| endpoint maps on E'.

    Binary-counter order over the id-sorted edges: bit j of the counter picks
    the u-end (0) or v-end (1) of the j-th edge.

    Raises:
        ResourceLimitError: |E'| exceeds the configured gamma_max_edges.
    """
    ordered = sorted(check_edge_ids(g, edges))
    cap = get_limits().gamma_max_edges
    if len(ordered) > cap:
        raise ResourceLimitError(f"Gamma(E') over {len(ordered)} edges exceeds the cap of {cap}")
    ends = [g.edge(eid).ends for eid in ordered]
    for mask in range(1 << len(ordered)):
        yield EndpointMap(
            tuple((eid, pair[(mask >> j) & 1]) for j, (eid, pair) in enumerate(zip(ordered, ends)))
        )


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def require_integral(value: Fraction, what: str) -> int:
    """Return `value` as an int, or raise if it is a proper fraction."""
    if value.denominator != 1:
        raise NonIntegralResultError(f"{what} evaluated to the non-integer {value}")
    return int(value)


def _integral(value: Fraction, what: str) -> ExactRational:
    # Exact counts; a proper fraction means the inputs broke a precondition.
    require_integral(value, what)
    return value


def _power(base: int, exponent: int) -> Fraction:
    # 0^0 = 1; 0 to a negative power is taken as 0 (such terms carry t = 0).
    if base == 0:
        return Fraction(1) if exponent == 0 else Fraction(0)
    return Fraction(base) ** exponent


def _require_connected(g: MultiGraph, what: str) -> None:
    if g.m == 0:
        raise DomainError(f"{what} needs a graph with at least one edge")
    if not is_connected(g):
        raise DomainError(f"{what} needs a connected graph")


def _inverse_degree_weight(g: MultiGraph, eid: EdgeId) -> Fraction:
    e = g.edge(eid)
    return Fraction(1, degree(g, e.u)) + Fraction(1, degree(g, e.v))


def _degree_prefactor(g: MultiGraph) -> Fraction:
    return prod((Fraction(d) ** (d - 2) for d in degrees(g)), start=Fraction(1))


def _profile_weight(g: MultiGraph, emap: EndpointMap) -> Fraction:
    profile = preimage_profile(emap)
    return prod(
        (Fraction(d) ** (d - 2 - profile[v]) for v, d in enumerate(degrees(g))),
        start=Fraction(1),
    )


def _spanning_edge_sets(g: MultiGraph) -> Iterator[tuple[frozenset[EdgeId], int]]:
    """Yield (E', t(G[E'])) for every E' with t(G[E']) > 0.

    Subsets with fewer than n-1 edges cannot span and are skipped.
    """
    cap = get_limits().subset_max_edges
    if g.m > cap:
        raise ResourceLimitError(f"2^{g.m} edge subsets exceeds the cap of 2^{cap}")
    for size in range(g.n - 1, g.m + 1):
        for subset in combinations(g.edge_ids, size):
            kept = frozenset(subset)
            count = count_matrix_tree(spanning_subgraph(g, kept))
            if count:
                yield kept, count


def count_line_trees(g: MultiGraph) -> BigCount:
    """t(L(G)) by Matrix-Tree on the constructed line graph."""
    return count_matrix_tree(line_graph(g).graph)


# ---------------------------------------------------------------------------
# Main identity for t(L(S_r(G)))
# ---------------------------------------------------------------------------


def eval_theorem_main(g: MultiGraph, r: int) -> ExactRational:
    """t(L(S_r(G))) from the subset sum with inverse-degree weights.

    prod_v d(v)^{d(v)-2} * sum over E' of t(G[E']) r^{|E'|-n+1}
    prod_{e not in E'} (1/d(u_e) + 1/d(v_e)).

    Raises:
        DomainError: g is disconnected or edgeless.
        GraphArgumentError: r is negative.
    """
    if r < 0:
        raise GraphArgumentError(f"r must be non-negative, got {r}")
    _require_connected(g, "the subdivision line-graph formula")
    total = Fraction(0)
    for kept, count in _spanning_edge_sets(g):
        weight = prod(
            (_inverse_degree_weight(g, eid) for eid in g.edge_ids if eid not in kept),
            start=Fraction(1),
        )
        total += count * _power(r, len(kept) - g.n + 1) * weight
    value = _degree_prefactor(g) * total
    logger.debug("main formula: n=%d m=%d r=%d -> %s", g.n, g.m, r, value)
    return _integral(value, "main formula")


def eval_theorem_main_gamma_form(g: MultiGraph, r: int) -> ExactRational:
    """The same quantity with the inverse-degree products expanded over Gamma.

    sum over E' of t(G[E']) r^{|E'|-n+1} sum over g in Gamma(E-E')
    prod_v d(v)^{d(v)-2-|g^{-1}(v)|}.
    """
    if r < 0:
        raise GraphArgumentError(f"r must be non-negative, got {r}")
    _require_connected(g, "the subdivision line-graph formula")
    total = Fraction(0)
    for kept, count in _spanning_edge_sets(g):
        coefficient = _power(r, len(kept) - g.n + 1)
        if coefficient == 0:
            continue
        rest = [eid for eid in g.edge_ids if eid not in kept]
        inner = sum((_profile_weight(g, emap) for emap in enumerate_gamma(g, rest)), Fraction(0))
        total += count * coefficient * inner
    return _integral(total, "gamma form")


def eval_line_tree_form(g: MultiGraph) -> ExactRational:
    """t(L(G)) summed over the spanning trees of G (the r = 0 case)."""
    _require_connected(g, "the line-graph tree sum")
    total = Fraction(0)
    for tree in enumerate_spanning_trees(g):
        total += prod(
            (_inverse_degree_weight(g, eid) for eid in g.edge_ids if eid not in tree.edge_ids),
            start=Fraction(1),
        )
    return _integral(_degree_prefactor(g) * total, "tree form")


def eval_line_tree_gamma_form(g: MultiGraph) -> ExactRational:
    """t(L(G)) summed over spanning trees T and endpoint maps on E(G) - E(T)."""
    _require_connected(g, "the line-graph tree sum")
    total = Fraction(0)
    for tree in enumerate_spanning_trees(g):
        rest = [eid for eid in g.edge_ids if eid not in tree.edge_ids]
        total += sum((_profile_weight(g, emap) for emap in enumerate_gamma(g, rest)), Fraction(0))
    return _integral(total, "tree gamma form")


# ---------------------------------------------------------------------------
# Special classes
# ---------------------------------------------------------------------------


def _regular_degree(g: MultiGraph) -> int:
    _require_connected(g, "the regular-graph formula")
    k = is_regular(g)
    if k is None:
        raise DomainError(f"graph is not regular (degrees {sorted(set(degrees(g)))})")
    return k


def eval_regular_line(g: MultiGraph) -> BigCount:
    """t(L(G)) = k^{m-n-1} 2^{m-n+1} t(G) for connected k-regular G."""
    k = _regular_degree(g)
    value = Fraction(k) ** (g.m - g.n - 1) * Fraction(2) ** (g.m - g.n + 1) * count_matrix_tree(g)
    return require_integral(value, "regular line-graph formula")


def eval_regular_subdiv_line(g: MultiGraph) -> BigCount:
    """t(L(S(G))) = k^{m-n-1} (k+2)^{m-n+1} t(G) for connected k-regular G."""
    k = _regular_degree(g)
    value = (
        Fraction(k) ** (g.m - g.n - 1)
        * Fraction(k + 2) ** (g.m - g.n + 1)
        * count_matrix_tree(g)
    )
    return require_integral(value, "regular subdivision line-graph formula")


def eval_pendant_regular(g: MultiGraph, r: int, k: int | None = None) -> BigCount:
    """t(L(S_r(G))) for G whose degrees are all k except s pendant vertices.

    With n core vertices, s pendants and m+s edges:
    k^{m+s-n-1} (rk+2)^{m-n+1} t(G).

    Args:
        g: Connected graph with degrees in {1, k}.
        r: Subdivision order.
        k: Core degree. Inferred from g; only needed when g has no core vertex.

    Raises:
        DomainError: The degree pattern is violated or g is disconnected.
    """
    if r < 0:
        raise GraphArgumentError(f"r must be non-negative, got {r}")
    _require_connected(g, "the pendant-regular formula")
    core = set(degrees(g)) - {1}
    if len(core) > 1:
        raise DomainError(f"degrees {sorted(set(degrees(g)))} are not of the form {{1, k}}")
    if core:
        found = core.pop()
        if k is not None and k != found:
            raise DomainError(f"core degree is {found}, not {k}")
        k = found
    k = 2 if k is None else k
    if k < 2:
        raise GraphArgumentError(f"core degree must be at least 2, got {k}")
    s = degrees(g).count(1)
    n = g.n - s
    m = g.m - s
    value = (
        Fraction(k) ** (m + s - n - 1)
        * Fraction(r * k + 2) ** (m - n + 1)
        * count_matrix_tree(g)
    )
    return require_integral(value, "pendant-regular formula")


def eval_pendant_line(g: MultiGraph, k: int | None = None) -> BigCount:
    """t(L(G)) = k^{m+s-n-1} 2^{m-n+1} t(G) for pendant-regular G."""
    return eval_pendant_regular(g, 0, k)


def eval_semiregular_bipartite(g: MultiGraph, a: int, b: int) -> BigCount:
    """t(L(G)) for bipartite G=(A,B) with degrees in {1,a} on A and {1,b} on B.

    a^{(a-2)n_1} b^{(b-2)n_2} (1/a + 1/b)^{m-n+1} t(G), where n_1 and n_2 count
    the degree-a vertices of A and the degree-b vertices of B. Either colour
    class may play the role of A.
    """
    if a < 2 or b < 2:
        raise GraphArgumentError(f"a and b must be at least 2, got a={a}, b={b}")
    _require_connected(g, "the semiregular bipartite formula")
    sides = bipartition(g)
    if sides is None:
        raise DomainError("graph is not bipartite")
    degs = degrees(g)
    for side_a, side_b in (sides, sides[::-1]):
        if all(degs[x] in (1, a) for x in side_a) and all(degs[y] in (1, b) for y in side_b):
            break
    else:
        raise DomainError(f"no colour class has degrees in {{1,{a}}} opposite {{1,{b}}}")
    n1 = sum(1 for x in side_a if degs[x] == a)
    n2 = sum(1 for y in side_b if degs[y] == b)
    value = (
        Fraction(a) ** ((a - 2) * n1)
        * Fraction(b) ** ((b - 2) * n2)
        * (Fraction(1, a) + Fraction(1, b)) ** (g.m - g.n + 1)
        * count_matrix_tree(g)
    )
    return require_integral(value, "semiregular bipartite formula")


# ---------------------------------------------------------------------------
# Cliques and forests
# ---------------------------------------------------------------------------


def eval_lovasz_forest(k: int, component_orders: list[int]) -> BigCount:
    """Spanning trees of K_k containing a forest with the given component orders."""
    if not component_orders or any(order < 1 for order in component_orders):
        raise GraphArgumentError(f"component orders must be positive, got {component_orders}")
    if sum(component_orders) != k:
        raise GraphArgumentError(f"component orders {component_orders} do not sum to {k}")
    value = Fraction(k) ** (len(component_orders) - 2) * prod(component_orders)
    return require_integral(value, "forest extension count")


def eval_clique_boundary_count(k: int, d: int, t: int, boundary_sizes: list[int]) -> BigCount:
    """|T_G(F)| for a k-clique V_0 with d boundary edges into t forest components.

    Value k^{k-2+t-d} prod_j |E(V_0, F_j)|.
    """
    if t != len(boundary_sizes) or d != sum(boundary_sizes):
        raise GraphArgumentError(f"t={t}, d={d} inconsistent with sizes {boundary_sizes}")
    if any(size < 1 for size in boundary_sizes) or not k >= d >= t >= 1:
        raise GraphArgumentError(f"need k >= d >= t >= 1, got k={k}, d={d}, t={t}")
    value = Fraction(k) ** (k - 2 + t - d) * prod(boundary_sizes)
    return require_integral(value, "clique boundary count")


def eval_gen_result(q: MultiGraph, matching: SpanningSubset) -> BigCount:
    """|T_Q(M)| for Q whose matching removal leaves complete graphs.

    Sum over T in T(Q*) and f in Gamma(E(Q*) - E(T)) of
    prod_i k_i^{k_i-2-|f^{-1}(v_i)|}. A disconnected Q gives 0.

    Raises:
        DomainError: Q is not simple, M is not a matching, or a component of
            Q - M is not complete.
    """
    structure = quotient_by_cliques(q, matching.edge_ids)
    orders = structure.orders
    total = Fraction(0)
    for tree in enumerate_spanning_trees(structure.quotient):
        rest = [eid for eid in structure.quotient.edge_ids if eid not in tree.edge_ids]
        for emap in enumerate_gamma(structure.quotient, rest):
            profile = preimage_profile(emap)
            total += prod(
                (Fraction(k) ** (k - 2 - profile[i]) for i, k in enumerate(orders)),
                start=Fraction(1),
            )
    return require_integral(total, "clique quotient sum")


# ---------------------------------------------------------------------------
# Auxiliary identities
# ---------------------------------------------------------------------------


def eval_binomial_deletion_identity(h: MultiGraph, i: int) -> tuple[BigCount, BigCount]:
    """Both sides of C(m-n+1, i) t(H) = sum over i-subsets E' of t(H - E')."""
    if not is_connected(h):
        raise DomainError("binomial deletion identity needs a connected graph")
    rank = h.m - h.n + 1
    if not 0 <= i <= rank:
        raise GraphArgumentError(f"i must lie in 0..{rank}, got {i}")
    left = comb(rank, i) * count_matrix_tree(h)
    right = sum(
        count_matrix_tree(delete_edges(h, removed)) for removed in combinations(h.edge_ids, i)
    )
    return left, right


def eval_subdivision_expansion(g: MultiGraph, subset: Iterable[EdgeId], r: int) -> BigCount:
    """sum over E' in F of r^{|E'|} t(L(G_{-E'})), with 0^0 = 1."""
    if r < 0:
        raise GraphArgumentError(f"r must be non-negative, got {r}")
    subset = sorted(check_edge_ids(g, subset))
    cap = get_limits().subset_max_edges
    if len(subset) > cap:
        raise ResourceLimitError(f"2^{len(subset)} subsets of F exceeds the cap of 2^{cap}")
    total = 0
    for size in range(len(subset) + 1):
        factor = r**size
        if factor == 0:
            continue
        for removed in combinations(subset, size):
            total += factor * count_line_trees(pendant_split(g, removed))
    return total


def eval_vertex_insertion_identity(g: MultiGraph, eid: EdgeId) -> tuple[BigCount, BigCount]:
    """Both sides of t(L(G_{.e})) = t(L(G)) + t(L(G_{-e})).

    For a bridge e the second term vanishes (G_{-e} is disconnected).
    """
    left = count_line_trees(insert_vertex_on_edge(g, eid))
    right = count_line_trees(g) + count_line_trees(pendant_split(g, [eid]))
    return left, right


def eval_single_edge_subdivision(g: MultiGraph, eid: EdgeId, r: int) -> tuple[BigCount, BigCount]:
    """Both sides of t(L(G_{r.e})) = t(L(G)) + r t(L(G_{-e}))."""
    if r < 0:
        raise GraphArgumentError(f"r must be non-negative, got {r}")
    left = count_line_trees(subdivide_subset(g, {eid}, r).graph)
    right = count_line_trees(g) + r * count_line_trees(pendant_split(g, [eid]))
    return left, right

"""linetrees.generators
--------------------

Seeded random instances for the graph classes the identities are stated for.

Every generator takes an explicit seed, draws from its own
`numpy.random.default_rng(seed)` and audits its output (degrees,
connectivity) before returning. Rejection loops are capped by
`limits.generator_retries`; exhausting the cap raises ResourceLimitError.
"""

import logging
from collections import defaultdict
from collections.abc import Callable
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .config import get_limits
from .core import Edge, EdgeId, MultiGraph, VertexId, degrees, is_connected
from .errors import GeneratorAuditError, GraphArgumentError, ResourceLimitError

logger = logging.getLogger("linetrees.generators")

Pair = tuple[int, int]


def _no_forbidden(a: int, b: int) -> bool:
    return False


def _suitable(edges: set[Pair], potential: dict[int, int], forbidden: Callable) -> bool:
    # True if some leftover stub pair could still become a new edge.
    if not potential:
        return True
    for s1, s2 in combinations(sorted(potential), 2):
        if (s1, s2) not in edges and not forbidden(s1, s2):
            return True
    return False


def _pair_stubs(
    stubs: list[int], rng: np.random.Generator, forbidden: Callable = _no_forbidden
) -> list[Pair] | None:
    """Configuration-model pairing with repair rounds; None when stuck.

    Loops, repeated pairs and forbidden pairs are sent back to the stub pool
    and re-paired, so the result is simple.
    """
    edges: set[Pair] = set()
    while stubs:
        potential: dict[int, int] = defaultdict(int)
        rng.shuffle(stubs)
        it = iter(stubs)
        for s1, s2 in zip(it, it):
            if s1 > s2:
                s1, s2 = s2, s1
            if s1 != s2 and (s1, s2) not in edges and not forbidden(s1, s2):
                edges.add((s1, s2))
            else:
                potential[s1] += 1
                potential[s2] += 1
        if not _suitable(edges, potential, forbidden):
            return None
        stubs = [node for node, count in potential.items() for _ in range(count)]
    return sorted(edges)


def _retry(build: Callable[[], MultiGraph | None], what: str) -> MultiGraph:
    retries = get_limits().generator_retries
    for attempt in range(retries):
        g = build()
        if g is not None and is_connected(g):
            logger.debug("%s accepted after %d attempt(s)", what, attempt + 1)
            return g
    raise ResourceLimitError(f"{what}: no connected sample in {retries} attempts")


def _audit_degrees(g: MultiGraph, expected: list[int], what: str) -> MultiGraph:
    if sorted(degrees(g)) != sorted(expected):
        raise GeneratorAuditError(f"{what}: sampled degrees {sorted(degrees(g))}")
    return g


# ---------------------------------------------------------------------------
# Unstructured graphs
# ---------------------------------------------------------------------------


def gen_random_multigraph(n: int, m: int, seed: int) -> MultiGraph:
    """Connected multigraph: a random recursive tree plus m-n+1 extra edges.

    Extra edges may duplicate existing ones. Edge order is shuffled.
    """
    if n < 1 or m < n - 1:
        raise GraphArgumentError(f"need n >= 1 and m >= n-1, got n={n}, m={m}")
    if n == 1 and m > 0:
        raise GraphArgumentError("a single vertex cannot carry loop-free edges")
    rng = np.random.default_rng(seed)
    pairs = [(int(rng.integers(0, i)), i) for i in range(1, n)]
    for _ in range(m - n + 1):
        u, v = rng.choice(n, size=2, replace=False)
        pairs.append((int(u), int(v)))
    order = rng.permutation(len(pairs))
    return MultiGraph.from_pairs(n, [pairs[i] for i in order])


def gen_regular(k: int, n: int, seed: int) -> MultiGraph:
    """Connected simple k-regular graph on n vertices."""
    if (k * n) % 2 or not 1 <= k < n:
        raise GraphArgumentError(f"no simple {k}-regular graph on {n} vertices")
    rng = np.random.default_rng(seed)

    def build() -> MultiGraph | None:
        pairs = _pair_stubs(list(range(n)) * k, rng)
        return None if pairs is None else MultiGraph.from_pairs(n, pairs)

    what = f"{k}-regular graph on {n} vertices"
    return _audit_degrees(_retry(build, what), [k] * n, what)


# ---------------------------------------------------------------------------
# Pendant-regular and semiregular bipartite graphs
# ---------------------------------------------------------------------------


def pendant_regular_obstruction(k: int, core_n: int, s: int) -> str | None:
    """Why no connected simple (k, core_n, s) pendant-regular graph exists, or None.

    The core carries (k*core_n - s)/2 edges among its own vertices. A
    balanced split of the pendants over the core is realizable exactly when
    that number fits in K_core_n and can still connect the core.
    """
    if k < 2 or core_n < 1 or s < 0:
        return f"need k >= 2, core_n >= 1, s >= 0; got {k}, {core_n}, {s}"
    if (k * core_n + s) % 2:
        return f"k*core_n + s = {k * core_n + s} must be even"
    core_edges = (k * core_n - s) // 2
    if core_edges < 0:
        return f"{s} pendants exceed the {k * core_n} core edge ends"
    if core_edges > comb(core_n, 2):
        return f"{core_edges} core-core edges do not fit on {core_n} core vertices"
    if core_edges < core_n - 1:
        return f"{core_edges} core-core edges cannot connect {core_n} core vertices"
    return None


def gen_pendant_regular(k: int, core_n: int, s: int, seed: int) -> MultiGraph:
    """Connected simple graph with core_n vertices of degree k and s of degree 1.

    Core vertices are 0..core_n-1, pendants follow. Pendant edges consume
    core degree, so the handshake condition is k*core_n + s even.

    Raises:
        GraphArgumentError: No such graph exists (see pendant_regular_obstruction).
    """
    problem = pendant_regular_obstruction(k, core_n, s)
    if problem:
        raise GraphArgumentError(problem)
    rng = np.random.default_rng(seed)
    stubs = list(range(core_n)) * k + list(range(core_n, core_n + s))

    def pendant_pair(a: int, b: int) -> bool:
        return a >= core_n and b >= core_n

    def build() -> MultiGraph | None:
        pairs = _pair_stubs(list(stubs), rng, pendant_pair)
        return None if pairs is None else MultiGraph.from_pairs(core_n + s, pairs)

    what = f"pendant-regular graph k={k} core_n={core_n} s={s}"
    return _audit_degrees(_retry(build, what), [1] * s + [k] * core_n, what)


def _semiregular_sides(a: int, b: int, n1: int, n2: int) -> tuple[int, int]:
    # The side with fewer edge ends is padded with degree-1 vertices.
    return n1 + max(0, b * n2 - a * n1), n2 + max(0, a * n1 - b * n2)


def semiregular_obstruction(a: int, b: int, n1: int, n2: int) -> str | None:
    """Why no connected simple (a, b) semiregular bipartite graph exists, or None."""
    if a < 2 or b < 2 or n1 < 1 or n2 < 1:
        return f"need a, b >= 2 and n1, n2 >= 1; got {a}, {b}, {n1}, {n2}"
    size_a, size_b = _semiregular_sides(a, b, n1, n2)
    if a > size_b or b > size_a:
        return f"a={a}, b={b} cannot be met on sides of {size_a} and {size_b}"
    m = max(a * n1, b * n2)
    if m < size_a + size_b - 1:
        return f"{m} edges cannot connect {size_a + size_b} vertices"
    return None


def gen_semiregular_bipartite(a: int, b: int, n1: int, n2: int, seed: int) -> MultiGraph:
    """Connected simple bipartite graph with n1 degree-a and n2 degree-b vertices.

    Side A holds the degree-a vertices, side B the degree-b ones; the side
    with fewer edge ends is padded with degree-1 vertices. A comes first in
    the vertex numbering.

    Raises:
        GraphArgumentError: No such graph exists (see semiregular_obstruction).
    """
    problem = semiregular_obstruction(a, b, n1, n2)
    if problem:
        raise GraphArgumentError(problem)
    size_a, size_b = _semiregular_sides(a, b, n1, n2)
    rng = np.random.default_rng(seed)
    ends_a = [x for x in range(n1) for _ in range(a)] + list(range(n1, size_a))
    ends_b = [size_a + y for y in range(n2) for _ in range(b)]
    ends_b += list(range(size_a + n2, size_a + size_b))

    def build() -> MultiGraph | None:
        shuffled = list(ends_b)
        rng.shuffle(shuffled)
        pairs = list(zip(ends_a, shuffled))
        if len(set(pairs)) != len(pairs):
            return None
        return MultiGraph.from_pairs(size_a + size_b, sorted(pairs))

    what = f"({a},{b})-semiregular bipartite graph n1={n1} n2={n2}"
    expected = [a] * n1 + [b] * n2 + [1] * (size_a + size_b - n1 - n2)
    return _audit_degrees(_retry(build, what), expected, what)


# ---------------------------------------------------------------------------
# Clique structures
# ---------------------------------------------------------------------------


def gen_clique_matching(
    n_cliques: int, extra_edges: int, slack: int, seed: int, free: bool = True
) -> tuple[MultiGraph, frozenset[EdgeId]]:
    """Random (Q, M) with Q - M a disjoint union of cliques and M a matching.

    The clique quotient is a random recursive tree plus `extra_edges` random
    edges. Clique i gets m_i matching slots plus up to `slack` further vertices,
    and at least one M-free vertex when `free` is set.

    Returns:
        (Q, edge ids of M). M edges carry ids 0..|M|-1.
    """
    if n_cliques < 1 or extra_edges < 0 or slack < 0:
        raise GraphArgumentError("need n_cliques >= 1, extra_edges >= 0, slack >= 0")
    if n_cliques == 1 and extra_edges:
        raise GraphArgumentError("a single clique cannot carry matching edges")
    rng = np.random.default_rng(seed)
    quotient = [(int(rng.integers(0, i)), i) for i in range(1, n_cliques)]
    for _ in range(extra_edges):
        i, j = rng.choice(n_cliques, size=2, replace=False)
        quotient.append((int(i), int(j)))

    slots = [0] * n_cliques
    for i, j in quotient:
        slots[i] += 1
        slots[j] += 1
    orders = [
        max(1, m + int(free) + int(rng.integers(0, slack + 1))) for m in slots
    ]
    offsets = np.concatenate(([0], np.cumsum(orders))).astype(int).tolist()

    used = [0] * n_cliques
    edges: list[Edge] = []
    for i, j in quotient:
        u, v = offsets[i] + used[i], offsets[j] + used[j]
        used[i] += 1
        used[j] += 1
        edges.append(Edge(len(edges), u, v))
    matching = frozenset(e.id for e in edges)
    for i in range(n_cliques):
        for u, v in combinations(range(offsets[i], offsets[i + 1]), 2):
            edges.append(Edge(len(edges), u, v))
    return MultiGraph(offsets[-1], tuple(edges)), matching


@dataclass(frozen=True)
class CliqueForestHost:
    """A k-clique V0 with forest components hanging off distinct clique vertices.

    `anchor` is None when every clique vertex carries a forest edge (d = k).
    """

    graph: MultiGraph
    clique: frozenset[VertexId]
    anchor: VertexId | None

    @property
    def forest_edges(self) -> frozenset[EdgeId]:
        """Edge ids of F = G - E(G[V0])."""
        return frozenset(e.id for e in self.graph.edges if not set(e.ends) <= self.clique)


def gen_clique_forest_host(k: int, boundary_sizes: list[int], tail: int = 0) -> CliqueForestHost:
    """K_k on 0..k-1 plus one outside vertex per entry of `boundary_sizes`.

    Outside vertex j is joined to boundary_sizes[j] distinct clique vertices
    and carries a path of `tail` further vertices. Clique vertices are used
    in order, so the anchor k-1 is free of forest edges when the sizes sum
    to less than k.
    """
    if not boundary_sizes or any(size < 1 for size in boundary_sizes):
        raise GraphArgumentError(f"sizes {boundary_sizes} must be non-empty and positive")
    if sum(boundary_sizes) > k:
        raise GraphArgumentError(f"sizes {boundary_sizes} need more than {k} clique vertices")
    if tail < 0:
        raise GraphArgumentError(f"tail must be non-negative, got {tail}")
    pairs: list[Pair] = list(combinations(range(k), 2))
    n = k
    attach = 0
    for size in boundary_sizes:
        hub = n
        n += 1
        for _ in range(size):
            pairs.append((attach, hub))
            attach += 1
        prev = hub
        for _ in range(tail):
            pairs.append((prev, n))
            prev = n
            n += 1
    anchor = k - 1 if attach < k else None
    return CliqueForestHost(MultiGraph.from_pairs(n, pairs), frozenset(range(k)), anchor)

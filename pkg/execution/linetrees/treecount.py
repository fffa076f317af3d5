"""linetrees.treecount
--------------------

Exact spanning-tree counters.

Three independent oracles:
- Matrix-Tree: cofactor of the Laplacian, evaluated with fraction-free
  (Bareiss) elimination on an object-dtype numpy array of Python ints.
- Explicit enumeration by deletion-contraction branching.
- The deletion-contraction recurrence t(G) = t(G-e) + t(G/e).

No floating point is used anywhere in this module.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .config import get_limits
from .core import (
    EdgeId,
    MultiGraph,
    SpanningSubset,
    SubsetRole,
    check_edge_ids,
    check_vertex,
    components,
    contract_edges,
    delete_edges,
    is_acyclic,
    is_connected,
)
from .errors import ResourceLimitError

logger = logging.getLogger("linetrees.treecount")

BigCount = int


@dataclass(frozen=True)
class ConstrainedFamily:
    """The spanning trees of `host` that contain every edge of `required`.

    Attributes:
        host: The host graph H.
        required: Edge ids of F.
        role: How F is interpreted (forest or matching).
    """

    host: MultiGraph
    required: frozenset[EdgeId]
    role: SubsetRole = SubsetRole.FOREST

    def __post_init__(self) -> None:
        object.__setattr__(self, "required", check_edge_ids(self.host, self.required))

    @property
    def is_feasible(self) -> bool:
        """False when F contains a cycle (the family is then empty)."""
        return is_acyclic(self.host, self.required)


# ---------------------------------------------------------------------------
# Matrix-Tree
# ---------------------------------------------------------------------------


def laplacian(g: MultiGraph) -> np.ndarray:
    """Laplacian D - A with multiplicities, as an object array of Python ints."""
    lap = np.zeros((g.n, g.n), dtype=object)
    for e in g.edges:
        lap[e.u, e.u] += 1
        lap[e.v, e.v] += 1
        lap[e.u, e.v] -= 1
        lap[e.v, e.u] -= 1
    return lap


def bareiss_determinant(matrix: np.ndarray) -> int:
    """Determinant of a square integer matrix by fraction-free elimination.

    Every division in the Bareiss update is exact, so intermediate entries stay
    integers bounded by minors of the input.
    """
    a = np.array(matrix, dtype=object)
    size = a.shape[0]
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k, k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i, k] != 0), None)
            if swap is None:
                return 0
            a[[k, swap]] = a[[swap, k]]
            sign = -sign
        pivot = a[k, k]
        a[k + 1 :, k + 1 :] = (
            a[k + 1 :, k + 1 :] * pivot - np.outer(a[k + 1 :, k], a[k, k + 1 :])
        ) // prev
        prev = pivot
    return sign * int(a[size - 1, size - 1])


def laplacian_cofactor(g: MultiGraph, root: int = 0) -> BigCount:
    """Determinant of the Laplacian with row and column `root` removed."""
    check_vertex(g, root)
    keep = [i for i in range(g.n) if i != root]
    return bareiss_determinant(laplacian(g)[np.ix_(keep, keep)])


def count_matrix_tree(g: MultiGraph) -> BigCount:
    """t(G) by the Matrix-Tree theorem.

    Returns:
        0 for the null graph or a disconnected graph, 1 for a single vertex.
    """
    if g.n == 0 or not is_connected(g):
        return 0
    if g.n == 1:
        return 1
    count = laplacian_cofactor(g, 0)
    logger.debug("Matrix-Tree: n=%d m=%d t=%d", g.n, g.m, count)
    return count


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _branch(
    h: MultiGraph, chosen: tuple[EdgeId, ...], out: list[tuple[EdgeId, ...]], limit: int
) -> None:
    # h is connected on entry; contraction keeps it connected.
    if h.n == 1:
        out.append(chosen)
        if len(out) > limit:
            raise ResourceLimitError(f"more than {limit} spanning trees; raise the cap")
        return
    e = h.edges[0]
    contracted, _ = contract_edges(h, [e.id])
    _branch(contracted, chosen + (e.id,), out, limit)
    rest = delete_edges(h, [e.id])
    if is_connected(rest):
        _branch(rest, chosen, out, limit)


def enumerate_trees_containing(
    fam: ConstrainedFamily, limit: int | None = None
) -> list[SpanningSubset]:
    """All spanning trees of fam.host that contain fam.required.

    Args:
        fam: Host graph and required forest.
        limit: Max number of trees; defaults to the configured enumeration cap.

    Returns:
        Trees in lexicographic order of their sorted edge-id lists.

    Raises:
        ResourceLimitError: More than `limit` trees exist.
    """
    limit = get_limits().enumeration_cap if limit is None else limit
    host = fam.host
    if host.n == 0 or not fam.is_feasible or not is_connected(host):
        return []
    contracted, _ = contract_edges(host, fam.required)
    found: list[tuple[EdgeId, ...]] = []
    _branch(contracted, tuple(sorted(fam.required)), found, limit)
    found.sort(key=lambda ids: sorted(ids))
    return [SpanningSubset(host, frozenset(ids), SubsetRole.TREE) for ids in found]


def enumerate_spanning_trees(g: MultiGraph, limit: int | None = None) -> list[SpanningSubset]:
    """All spanning trees of g (see enumerate_trees_containing)."""
    return enumerate_trees_containing(ConstrainedFamily(g, frozenset()), limit)


def count_trees_containing(fam: ConstrainedFamily) -> BigCount:
    """|T_H(F)|: contract F and count the contraction; 0 if F has a cycle."""
    if not fam.is_feasible:
        return 0
    contracted, _ = contract_edges(fam.host, fam.required)
    return count_matrix_tree(contracted)


# ---------------------------------------------------------------------------
# Deletion-contraction
# ---------------------------------------------------------------------------


def is_bridge(g: MultiGraph, eid: EdgeId) -> bool:
    """True if deleting `eid` increases the number of components."""
    return len(components(delete_edges(g, [eid]))) > len(components(g))


def _deletion_contraction(h: MultiGraph) -> BigCount:
    if h.n == 1:
        return 1
    e = h.edges[0]
    contracted, _ = contract_edges(h, [e.id])
    rest = delete_edges(h, [e.id])
    if not is_connected(rest):
        return _deletion_contraction(contracted)
    return _deletion_contraction(rest) + _deletion_contraction(contracted)


def count_via_deletion_contraction(g: MultiGraph) -> BigCount:
    """t(G) from t(G) = t(G-e) + t(G/e), contracting bridges directly.

    Exponential in the cycle rank; intended as an oracle on small graphs.
    """
    if g.n == 0 or not is_connected(g):
        return 0
    return _deletion_contraction(g)

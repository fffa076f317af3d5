"""test_graph_core.py — Unit tests for the multigraph core.

Covers degrees, deletion, contraction, induced and spanning subgraphs,
component ordering, boundary edges and SpanningSubset validation.
"""

import pytest

from execution.linetrees.core import (
    Edge,
    MultiGraph,
    SpanningSubset,
    SubsetRole,
    bipartition,
    boundary_edges,
    components,
    contract_edges,
    degree,
    degree_sequence,
    delete_edges,
    identify_vertices,
    induced_subgraph,
    is_connected,
    is_regular,
    is_tree,
    spanning_subgraph,
)
from execution.linetrees.errors import DomainError, GraphArgumentError
from execution.linetrees.families import (
    bond_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    star_graph,
)
from execution.linetrees.treecount import count_matrix_tree


class TestMultiGraph:
    """Construction and validation."""

    def test_loop_rejected(self):
        """A loop is never a valid edge."""
        with pytest.raises(GraphArgumentError):
            MultiGraph(2, (Edge(0, 1, 1),))

    def test_duplicate_id_rejected(self):
        """Edge ids must be unique."""
        with pytest.raises(GraphArgumentError):
            MultiGraph(3, (Edge(0, 0, 1), Edge(0, 1, 2)))

    def test_out_of_range_rejected(self):
        """Edge ends must be existing vertices."""
        with pytest.raises(GraphArgumentError):
            MultiGraph.from_pairs(2, [(0, 2)])

    def test_edges_sorted_by_id(self):
        """Edges are stored in ascending id order whatever the input order."""
        g = MultiGraph(3, (Edge(5, 0, 1), Edge(2, 1, 2)))
        assert g.edge_ids == (2, 5)
        assert g.next_edge_id() == 6

    def test_unknown_edge_lookup(self):
        """Looking up a missing id is an argument error."""
        with pytest.raises(GraphArgumentError):
            complete_graph(3).edge(7)


class TestDegree:
    """Degrees count edge slots with multiplicity."""

    def test_triangle(self):
        """Every vertex of K_3 has degree 2."""
        g = complete_graph(3)
        assert [degree(g, v) for v in g.vertices] == [2, 2, 2]

    def test_parallel_pair(self):
        """Both ends of a doubled edge have degree 2."""
        g = bond_graph(2)
        assert degree(g, 0) == 2
        assert degree(g, 1) == 2

    def test_star_centre(self):
        """The centre of K_{1,3} has degree 3."""
        assert degree(star_graph(3), 0) == 3

    def test_out_of_range(self):
        """Vertex 3 does not exist in K_3."""
        with pytest.raises(GraphArgumentError):
            degree(complete_graph(3), 3)

    def test_regularity(self):
        """K_4 is 3-regular; a path is not regular."""
        assert is_regular(complete_graph(4)) == 3
        assert is_regular(path_graph(4)) is None


class TestDeleteEdges:
    """G - E' keeps vertices and surviving ids."""

    def test_cycle_minus_edge_is_path(self):
        """C_4 minus one edge is a tree with 3 edges."""
        h = delete_edges(cycle_graph(4), {0})
        assert h.n == 4
        assert h.edge_ids == (1, 2, 3)
        assert is_tree(h)

    def test_empty_deletion_is_identity(self):
        """Deleting nothing returns the same graph."""
        g = complete_graph(4)
        assert delete_edges(g, set()) == g

    def test_k4_minus_perfect_matching(self):
        """K_4 minus {01, 23} is a 4-cycle."""
        h = delete_edges(complete_graph(4), {0, 5})
        assert degree_sequence(h) == (2, 2, 2, 2)
        assert count_matrix_tree(h) == 4

    def test_unknown_id(self):
        """Unknown ids are rejected."""
        with pytest.raises(GraphArgumentError):
            delete_edges(cycle_graph(4), {9})


class TestContractEdges:
    """G / E' merges ends and discards loops."""

    def test_path(self):
        """Contracting one edge of a 2-edge path leaves a single edge."""
        h, vmap = contract_edges(path_graph(3), {0})
        assert (h.n, h.m) == (2, 1)
        assert vmap == {0: 0, 1: 0, 2: 1}

    def test_triangle_gives_parallel_pair(self):
        """The loop from a contracted triangle edge is discarded."""
        h, _ = contract_edges(cycle_graph(3), {0})
        assert (h.n, h.m) == (2, 2)

    def test_k4(self):
        """K_4 / e has 3 vertices and 5 edges."""
        h, _ = contract_edges(complete_graph(4), {0})
        assert (h.n, h.m) == (3, 5)
        assert all(e.u != e.v for e in h.edges)

    def test_identify_vertices(self):
        """Identifying opposite corners of C_4 keeps all four edges."""
        h, vmap = identify_vertices(cycle_graph(4), {0, 2})
        assert (h.n, h.m) == (3, 4)
        assert vmap == {0: 0, 1: 1, 2: 0, 3: 2}


class TestSubgraphs:
    """Induced and spanning subgraphs."""

    def test_induced_pair_in_k4(self):
        """Two vertices of K_4 induce one edge."""
        h, remap = induced_subgraph(complete_graph(4), {1, 3})
        assert (h.n, h.m) == (2, 1)
        assert remap == {1: 0, 3: 1}

    def test_induced_full_vertex_set(self):
        """Inducing on V(G) is the identity."""
        g = complete_graph(4)
        h, _ = induced_subgraph(g, set(g.vertices))
        assert h == g

    def test_induced_consecutive_in_c5(self):
        """Three consecutive vertices of C_5 induce a 2-edge path with the original ids."""
        h, _ = induced_subgraph(cycle_graph(5), {0, 1, 2})
        assert h.edge_ids == (0, 1)
        assert is_tree(h)

    def test_spanning_subgraph(self):
        """G[E'] keeps every vertex."""
        g = cycle_graph(4)
        assert spanning_subgraph(g, set()) == MultiGraph(4)
        assert spanning_subgraph(g, set(g.edge_ids)) == g
        assert is_tree(spanning_subgraph(complete_graph(4), {0, 1, 2}))


class TestComponents:
    """Components in the canonical order."""

    def test_connected(self):
        """A connected graph has one component."""
        assert components(complete_graph(4)) == [frozenset(range(4))]

    def test_edgeless(self):
        """Isolated vertices come in vertex order."""
        assert components(MultiGraph(3)) == [frozenset({0}), frozenset({1}), frozenset({2})]

    def test_insertion_order(self):
        """Components are ordered by their smallest edge id."""
        g = MultiGraph.from_pairs(4, [(0, 1), (2, 3)])
        assert components(g) == [frozenset({0, 1}), frozenset({2, 3})]
        swapped = MultiGraph.from_pairs(4, [(2, 3), (0, 1)])
        assert components(swapped) == [frozenset({2, 3}), frozenset({0, 1})]

    def test_isolated_last(self):
        """Isolated vertices follow components with edges."""
        g = MultiGraph.from_pairs(3, [(1, 2)])
        assert components(g) == [frozenset({1, 2}), frozenset({0})]

    def test_null_graph_not_connected(self):
        """The null graph has no components."""
        assert not is_connected(MultiGraph(0))


class TestBoundaryEdges:
    """E_G(V1, V2)."""

    def test_single_vertex(self):
        """The boundary of a vertex of K_4 is its star."""
        assert boundary_edges(complete_graph(4), {0}) == frozenset({0, 1, 2})

    def test_adjacent_pair_in_c4(self):
        """Two adjacent vertices of C_4 have two crossing edges."""
        assert boundary_edges(cycle_graph(4), {0, 1}) == frozenset({1, 3})

    def test_everything(self):
        """V1 = V(G) has no boundary."""
        g = complete_graph(4)
        assert boundary_edges(g, set(g.vertices)) == frozenset()

    def test_overlap_rejected(self):
        """Overlapping sides are an argument error."""
        with pytest.raises(GraphArgumentError):
            boundary_edges(complete_graph(4), {0, 1}, {1, 2})

    def test_bipartition(self):
        """C_4 splits into its even and odd vertices; C_3 does not split."""
        assert bipartition(cycle_graph(4)) == (frozenset({0, 2}), frozenset({1, 3}))
        assert bipartition(cycle_graph(3)) is None


class TestSpanningSubset:
    """Role validation on construction."""

    def test_tree(self):
        """Three edges of C_4 form a spanning tree."""
        tree = SpanningSubset(cycle_graph(4), frozenset({0, 1, 2}), SubsetRole.TREE)
        assert tree.sorted_ids == (0, 1, 2)
        assert is_tree(tree.as_graph())

    def test_too_small_for_tree(self):
        """Two edges cannot span 4 vertices."""
        with pytest.raises(DomainError):
            SpanningSubset(cycle_graph(4), frozenset({0, 1}), SubsetRole.TREE)

    def test_cycle_is_not_a_forest(self):
        """A cycle is rejected as a forest."""
        with pytest.raises(DomainError):
            SpanningSubset(cycle_graph(3), frozenset({0, 1, 2}))

    def test_matching(self):
        """Adjacent edges are not a matching; opposite ones are."""
        g = cycle_graph(4)
        SpanningSubset(g, frozenset({0, 2}), SubsetRole.MATCHING)
        with pytest.raises(DomainError):
            SpanningSubset(g, frozenset({0, 1}), SubsetRole.MATCHING)

    def test_unknown_id(self):
        """Every id must exist in the host."""
        with pytest.raises(GraphArgumentError):
            SpanningSubset(cycle_graph(4), frozenset({4}))

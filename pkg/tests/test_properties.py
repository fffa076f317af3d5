"""test_properties.py — Property-based checks on small random connected multigraphs.

The three exact counters must agree with each other and with a float
Laplacian determinant from networkx; the line-graph formulas must agree
with the counters on the constructed graphs.
"""

import numpy as np
import pytest

try:
    from hypothesis import given, settings
    from hypothesis import strategies as st
except ModuleNotFoundError:  # pragma: no cover
    pytest.skip("hypothesis not installed", allow_module_level=True)

from execution.linetrees.core import MultiGraph, degrees
from execution.linetrees.formulas import (
    count_line_trees,
    eval_theorem_main,
    eval_theorem_main_gamma_form,
    eval_vertex_insertion_identity,
)
from execution.linetrees.transforms import clique_insert, line_graph, subdivide
from execution.linetrees.treecount import (
    ConstrainedFamily,
    count_matrix_tree,
    count_trees_containing,
    count_via_deletion_contraction,
    enumerate_spanning_trees,
)

SMALL = settings(max_examples=25, deadline=None)


@st.composite
def connected_multigraphs(draw: st.DrawFn, max_n: int = 6, max_extra: int = 4) -> MultiGraph:
    n = draw(st.integers(min_value=2, max_value=max_n))
    pairs = [(draw(st.integers(min_value=0, max_value=i - 1)), i) for i in range(1, n)]
    for _ in range(draw(st.integers(min_value=0, max_value=max_extra))):
        u = draw(st.integers(min_value=0, max_value=n - 1))
        v = draw(st.integers(min_value=0, max_value=n - 2))
        pairs.append((u, v if v < u else v + 1))
    order = draw(st.permutations(range(len(pairs))))
    return MultiGraph.from_pairs(n, [pairs[i] for i in order])


class TestCounters:
    """Matrix-Tree, enumeration and deletion-contraction."""

    @SMALL
    @given(connected_multigraphs())
    def test_oracles_agree(self, g):
        """All three exact counters return the same integer."""
        expected = count_matrix_tree(g)
        assert expected >= 1
        assert len(enumerate_spanning_trees(g)) == expected
        assert count_via_deletion_contraction(g) == expected

    @SMALL
    @given(connected_multigraphs())
    def test_networkx_reference(self, g):
        """A float determinant of the networkx Laplacian rounds to the exact count."""
        nx = pytest.importorskip("networkx")
        ref = nx.MultiGraph()
        ref.add_nodes_from(g.vertices)
        ref.add_edges_from(g.pairs())
        lap = nx.laplacian_matrix(ref, nodelist=list(g.vertices)).toarray()
        assert round(np.linalg.det(lap[1:, 1:])) == count_matrix_tree(g)

    @SMALL
    @given(connected_multigraphs())
    def test_trees_have_n_minus_1_edges(self, g):
        """Every enumerated tree spans all vertices with n - 1 edges."""
        for tree in enumerate_spanning_trees(g):
            assert len(tree.edge_ids) == g.n - 1


class TestLineGraphFormulas:
    """Closed forms against the counters on the constructed graph."""

    @SMALL
    @given(connected_multigraphs(max_n=5, max_extra=3), st.integers(min_value=0, max_value=2))
    def test_main_formula(self, g, r):
        """Subset-sum and Gamma forms equal t(L(S_r(G)))."""
        oracle = count_line_trees(subdivide(g, r).graph)
        assert eval_theorem_main(g, r) == oracle
        assert eval_theorem_main_gamma_form(g, r) == oracle

    @SMALL
    @given(connected_multigraphs(max_n=5, max_extra=3), st.data())
    def test_vertex_insertion(self, g, data):
        """Inserting a vertex on any edge adds t(L(G_{-e})) to t(L(G))."""
        eid = data.draw(st.sampled_from(g.edge_ids))
        left, right = eval_vertex_insertion_identity(g, eid)
        assert left == right

    @SMALL
    @given(connected_multigraphs(max_n=5, max_extra=3))
    def test_clique_insertion(self, g):
        """|T_{C(G)}(M)| = t(L(G)), and C(G) has one vertex per edge end."""
        result = clique_insert(g)
        assert result.graph.n == sum(degrees(g)) == 2 * g.m
        family = ConstrainedFamily(result.graph, result.matching_M)
        assert count_trees_containing(family) == count_matrix_tree(line_graph(g).graph)

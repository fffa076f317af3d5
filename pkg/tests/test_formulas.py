"""test_formulas.py — Closed-form evaluators against known values and the oracles.

Every expected count here is either a closed-form value worked out by hand
or t(.) of the constructed graph from count_matrix_tree.
"""

from fractions import Fraction
from itertools import combinations

import pytest

from execution.linetrees import formulas
from execution.linetrees.core import (
    MultiGraph,
    SpanningSubset,
    SubsetRole,
    components,
    is_acyclic,
    spanning_subgraph,
)
from execution.linetrees.errors import (
    DomainError,
    GraphArgumentError,
    NonIntegralResultError,
    ResourceLimitError,
)
from execution.linetrees.families import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    star_graph,
    with_pendants,
)
from execution.linetrees.formulas import (
    EndpointMap,
    count_line_trees,
    enumerate_gamma,
    eval_binomial_deletion_identity,
    eval_clique_boundary_count,
    eval_gen_result,
    eval_line_tree_form,
    eval_line_tree_gamma_form,
    eval_lovasz_forest,
    eval_pendant_line,
    eval_pendant_regular,
    eval_regular_line,
    eval_regular_subdiv_line,
    eval_semiregular_bipartite,
    eval_single_edge_subdivision,
    eval_subdivision_expansion,
    eval_theorem_main,
    eval_theorem_main_gamma_form,
    eval_vertex_insertion_identity,
    preimage_profile,
    require_integral,
)
from execution.linetrees.generators import gen_clique_forest_host
from execution.linetrees.transforms import clique_insert, subdivide, subdivide_subset
from execution.linetrees.treecount import (
    ConstrainedFamily,
    count_trees_containing,
    enumerate_trees_containing,
)

# A small multigraph with a parallel pair and a pendant edge.
PARALLEL = MultiGraph.from_pairs(4, [(0, 1), (0, 1), (1, 2), (2, 0), (2, 3)])


def _size_lists(total: int, largest: int):
    """Non-increasing lists of positive sizes summing to total."""
    if total == 0:
        yield []
        return
    for part in range(min(total, largest), 0, -1):
        for rest in _size_lists(total - part, part):
            yield [part, *rest]


class TestEndpointMaps:
    """Gamma(E') and preimage profiles."""

    def test_enumeration_order(self):
        """Bit j of the counter picks the end of the j-th edge."""
        g = complete_graph(3)
        maps = [m.as_dict() for m in enumerate_gamma(g, [0, 1])]
        assert maps == [{0: 0, 1: 0}, {0: 1, 1: 0}, {0: 0, 1: 2}, {0: 1, 1: 2}]

    def test_empty_domain(self):
        """Gamma of the empty set holds the empty map."""
        assert list(enumerate_gamma(complete_graph(3), [])) == [EndpointMap()]

    def test_profile(self):
        """|g^{-1}(v)| is counted per vertex, 0 for vertices never hit."""
        emap = EndpointMap.from_dict({0: 1, 1: 1, 2: 2})
        profile = preimage_profile(emap)
        assert profile[1] == 2
        assert profile[2] == 1
        assert profile[0] == 0
        assert profile.total == 3

    def test_validate(self):
        """An image that is not an end of its edge is rejected."""
        with pytest.raises(DomainError):
            EndpointMap.from_dict({0: 2}).validate(complete_graph(3))

    def test_cap(self, monkeypatch):
        """Domains above the configured cap are refused."""
        from execution.linetrees.config import Limits

        monkeypatch.setattr(formulas, "get_limits", lambda: Limits(gamma_max_edges=2))
        with pytest.raises(ResourceLimitError):
            list(enumerate_gamma(complete_graph(4), [0, 1, 2]))


class TestMainFormula:
    """t(L(S_r(G))) in subset-sum and Gamma form."""

    def test_k4_subdivided(self):
        """L(S(K_4)) has 6000 spanning trees."""
        assert eval_theorem_main(complete_graph(4), 1) == 6000
        assert eval_theorem_main_gamma_form(complete_graph(4), 1) == 6000

    def test_k4_line_graph(self):
        """r = 0 reduces to t(L(K_4)) = 384."""
        assert eval_theorem_main(complete_graph(4), 0) == 384
        assert eval_line_tree_form(complete_graph(4)) == 384
        assert eval_line_tree_gamma_form(complete_graph(4)) == 384

    @pytest.mark.parametrize("r", [0, 1, 2, 3])
    def test_multigraph_against_oracle(self, r):
        """Both forms equal the line graph oracle on a multigraph."""
        oracle = count_line_trees(subdivide(PARALLEL, r).graph)
        assert eval_theorem_main(PARALLEL, r) == oracle
        assert eval_theorem_main_gamma_form(PARALLEL, r) == oracle

    def test_single_edge(self):
        """L(S_r(K_2)) is a path, so the count is 1."""
        for r in range(4):
            assert eval_theorem_main(path_graph(2), r) == 1

    def test_returns_exact_rational(self):
        """The evaluator returns a Fraction."""
        assert isinstance(eval_theorem_main(cycle_graph(4), 1), Fraction)

    def test_proper_fraction_is_refused(self, monkeypatch):
        """A sum that lands on a proper fraction raises instead of returning it."""
        monkeypatch.setattr(formulas, "_degree_prefactor", lambda g: Fraction(1, 7919))
        monkeypatch.setattr(formulas, "_profile_weight", lambda g, emap: Fraction(1, 7919))
        for evaluate in (eval_theorem_main, eval_theorem_main_gamma_form):
            with pytest.raises(NonIntegralResultError):
                evaluate(cycle_graph(4), 1)
        for evaluate in (eval_line_tree_form, eval_line_tree_gamma_form):
            with pytest.raises(NonIntegralResultError):
                evaluate(cycle_graph(4))

    def test_preconditions(self):
        """Edgeless or disconnected graphs and negative r are refused."""
        with pytest.raises(DomainError):
            eval_theorem_main(MultiGraph(1), 1)
        with pytest.raises(DomainError):
            eval_theorem_main(MultiGraph.from_pairs(4, [(0, 1), (2, 3)]), 1)
        with pytest.raises(GraphArgumentError):
            eval_theorem_main(complete_graph(3), -1)


class TestRegularFormulas:
    """Closed forms for k-regular graphs."""

    def test_regular_line(self):
        """C_4, K_4 and Petersen."""
        assert eval_regular_line(cycle_graph(4)) == 4
        assert eval_regular_line(complete_graph(4)) == 384
        assert eval_regular_line(petersen_graph()) == 10_368_000

    def test_regular_subdivided_line(self):
        """C_4, K_4 and K_{3,3}."""
        assert eval_regular_subdiv_line(cycle_graph(4)) == 8
        assert eval_regular_subdiv_line(complete_graph(4)) == 6000
        assert eval_regular_subdiv_line(complete_bipartite_graph(3, 3)) == 455_625

    def test_against_oracle(self):
        """Petersen's line graph and subdivided line graph."""
        g = petersen_graph()
        assert eval_regular_line(g) == count_line_trees(g)
        assert eval_regular_subdiv_line(g) == count_line_trees(subdivide(g, 1).graph)

    def test_not_regular(self):
        """A path is not regular."""
        with pytest.raises(DomainError):
            eval_regular_line(path_graph(4))


class TestPendantRegular:
    """Graphs whose degrees are k apart from s pendant vertices."""

    def test_k4_with_pendants(self):
        """K_4 with a pendant on every vertex, r = 1."""
        g = with_pendants(complete_graph(4), [0, 1, 2, 3])
        assert eval_pendant_regular(g, 1) == 3_538_944
        assert count_line_trees(subdivide(g, 1).graph) == 3_538_944

    @pytest.mark.parametrize("r", [0, 1, 2])
    def test_against_oracle(self, r):
        """C_4 plus the chord 13 and pendants at 0 and 2: degrees {3, 1}."""
        g = with_pendants(cycle_graph(4), [0, 2])
        g = MultiGraph.from_pairs(g.n, g.pairs() + [(1, 3)])
        assert eval_pendant_regular(g, r) == count_line_trees(subdivide(g, r).graph)

    def test_no_pendants_is_regular(self):
        """With s = 0 the value matches the regular formulas."""
        g = complete_graph(4)
        assert eval_pendant_regular(g, 0) == eval_regular_line(g)
        assert eval_pendant_regular(g, 1) == eval_regular_subdiv_line(g)
        assert eval_pendant_line(g) == 384

    def test_mixed_degrees(self):
        """Degrees {1, 2, 3} do not fit the pattern."""
        g = MultiGraph.from_pairs(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 0)])
        g = with_pendants(g, [1])
        with pytest.raises(DomainError):
            eval_pendant_regular(g, 1)


class TestSemiregularBipartite:
    """Bipartite graphs with degrees {1, a} opposite {1, b}."""

    def test_k23(self):
        """t(L(K_{2,3})) = 75."""
        g = complete_bipartite_graph(2, 3)
        assert eval_semiregular_bipartite(g, 3, 2) == 75
        assert count_line_trees(g) == 75

    def test_colour_classes_swapped(self):
        """The roles of a and b may be given in either order."""
        assert eval_semiregular_bipartite(complete_bipartite_graph(3, 2), 3, 2) == 75

    def test_star(self):
        """L(K_{1,3}) = K_3."""
        assert eval_semiregular_bipartite(star_graph(3), 3, 2) == 3

    def test_not_bipartite(self):
        """An odd cycle is refused."""
        with pytest.raises(DomainError):
            eval_semiregular_bipartite(cycle_graph(3), 2, 2)


class TestCliqueCounts:
    """Forest extensions in K_k and clique-plus-forest hosts."""

    def test_lovasz(self):
        """Orders (2, 1, 1) in K_4 give 8; all singletons give Cayley."""
        assert eval_lovasz_forest(4, [2, 1, 1]) == 8
        assert eval_lovasz_forest(5, [1] * 5) == 125
        assert eval_lovasz_forest(4, [4]) == 1

    @pytest.mark.parametrize(("k", "forest_count"), [(3, 7), (4, 38), (5, 291)])
    def test_lovasz_every_forest(self, k, forest_count):
        """Every spanning forest of K_k extends to exactly k^{c-2} prod k_i trees."""
        g = complete_graph(k)
        seen = 0
        for size in range(k):
            for subset in combinations(g.edge_ids, size):
                if not is_acyclic(g, subset):
                    continue
                seen += 1
                family = ConstrainedFamily(g, frozenset(subset))
                orders = [len(part) for part in components(spanning_subgraph(g, subset))]
                listed = len(enumerate_trees_containing(family))
                assert eval_lovasz_forest(k, orders) == listed == count_trees_containing(family)
        assert seen == forest_count

    def test_lovasz_bad_orders(self):
        """Orders must sum to k."""
        with pytest.raises(GraphArgumentError):
            eval_lovasz_forest(4, [2, 1])

    def test_clique_boundary(self):
        """Hand-computed clique-plus-forest totals."""
        assert eval_clique_boundary_count(3, 1, 1, [1]) == 3
        assert eval_clique_boundary_count(4, 2, 2, [1, 1]) == 16
        assert eval_clique_boundary_count(4, 3, 1, [3]) == 3

    def test_clique_boundary_full_clique(self):
        """d = k: every clique vertex carries a forest edge."""
        assert eval_clique_boundary_count(3, 3, 1, [3]) == 1
        assert eval_clique_boundary_count(4, 4, 2, [2, 2]) == 4

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_clique_boundary_every_host(self, k):
        """All boundary-size lists with d <= k: the formula equals the listed trees."""
        for d in range(1, k + 1):
            for sizes in _size_lists(d, d):
                host = gen_clique_forest_host(k, sizes, tail=1)
                family = ConstrainedFamily(host.graph, host.forest_edges)
                listed = len(enumerate_trees_containing(family))
                assert eval_clique_boundary_count(k, d, len(sizes), sizes) == listed, sizes
                assert host.anchor == (None if d == k else k - 1)

    def test_clique_boundary_inconsistent(self):
        """d must equal the sum of the boundary sizes."""
        with pytest.raises(GraphArgumentError):
            eval_clique_boundary_count(4, 3, 2, [1, 1])

    def test_gen_result_on_clique_insertions(self):
        """|T_{C(G)}(M)| equals t(L(G)) for C_3 and K_4."""
        for g, expected in ((cycle_graph(3), 3), (complete_graph(4), 384)):
            result = clique_insert(g)
            matching = SpanningSubset(result.graph, result.matching_M, SubsetRole.MATCHING)
            assert eval_gen_result(result.graph, matching) == expected

    def test_gen_result_disconnected_quotient(self):
        """Two cliques and an empty matching have no spanning tree."""
        q = MultiGraph.from_pairs(4, [(0, 1), (2, 3)])
        assert eval_gen_result(q, SpanningSubset(q, frozenset(), SubsetRole.MATCHING)) == 0


class TestAuxiliaryIdentities:
    """Deletion, vertex insertion and subdivision expansions."""

    def test_binomial(self):
        """C_4 with i = 1 and K_4 with i = 2."""
        assert eval_binomial_deletion_identity(cycle_graph(4), 1) == (4, 4)
        assert eval_binomial_deletion_identity(complete_graph(4), 2) == (48, 48)

    def test_binomial_range(self):
        """i above the cycle rank is refused."""
        with pytest.raises(GraphArgumentError):
            eval_binomial_deletion_identity(cycle_graph(4), 2)

    def test_vertex_insertion(self):
        """t(L(G_{.e})) = t(L(G)) + t(L(G_{-e})) on every edge of the multigraph."""
        for eid in PARALLEL.edge_ids:
            left, right = eval_vertex_insertion_identity(PARALLEL, eid)
            assert left == right

    def test_vertex_insertion_on_bridge(self):
        """Inserting a vertex on a bridge does not change t(L(G))."""
        left, right = eval_vertex_insertion_identity(PARALLEL, 4)
        assert left == count_line_trees(PARALLEL) == right

    @pytest.mark.parametrize("r", [0, 1, 3])
    def test_single_edge_subdivision(self, r):
        """t(L(G_{r.e})) = t(L(G)) + r t(L(G_{-e}))."""
        left, right = eval_single_edge_subdivision(complete_graph(4), 0, r)
        assert left == right

    @pytest.mark.parametrize("r", [0, 1, 2, 3])
    def test_subdivision_expansion(self, r):
        """sum r^{|E'|} t(L(G_{-E'})) over E' in F equals t(L(G_{r.F}))."""
        g = complete_graph(4)
        subset = {0, 3, 5}
        expected = count_line_trees(subdivide_subset(g, subset, r).graph)
        assert eval_subdivision_expansion(g, subset, r) == expected

    @pytest.mark.parametrize("r", [0, 1, 2, 3])
    def test_subdivision_expansion_all_small_subsets(self, r):
        """Every F with |F| <= 4 on the multigraph and every 4-edge F on K_4."""
        cases = [
            (PARALLEL, subset)
            for size in range(5)
            for subset in combinations(PARALLEL.edge_ids, size)
        ]
        k4 = complete_graph(4)
        cases += [(k4, subset) for subset in combinations(k4.edge_ids, 4)]
        for g, subset in cases:
            expected = count_line_trees(subdivide_subset(g, set(subset), r).graph)
            assert eval_subdivision_expansion(g, subset, r) == expected, subset

    def test_require_integral(self):
        """Proper fractions are refused."""
        assert require_integral(Fraction(6, 3), "x") == 2
        with pytest.raises(NonIntegralResultError):
            require_integral(Fraction(1, 2), "x")

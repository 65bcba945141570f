"""
Tests for graph_core: graphs, tubes, graph partitions, contraction and chromatic polynomials.
"""

import networkx as nx
import pytest
import sympy

from core.config import override_budgets
from core.errors import (
    BudgetExceededError,
    DisconnectedGraphError,
    GraphError,
    GraphSpecError,
    InvalidPartitionError,
)
from core.graph_core import (
    CHROMATIC_CACHE_SIZE,
    Graph,
    GraphPartition,
    _chromatic,
    chromatic_polynomial,
    clear_chromatic_cache,
    complement,
    complete,
    complete_multipartite,
    connected_components,
    contract,
    contract_tube,
    cycle,
    edge_list_of,
    empty_graph,
    enumerate_connected_graphs,
    format_edge_list,
    graph_partitions,
    induced,
    is_connected,
    mask_of,
    parse_graph_spec,
    path,
    read_edge_list,
    sample_connected_graphs,
    tubes,
    vertices_of,
)
from core.graphic_functions import clear_memos


class TestGraph:
    """Test cases for the Graph value type."""

    def test_from_edges_builds_symmetric_adjacency(self):
        """Test that edges are stored in both directions."""
        g = Graph.from_edges(3, [(0, 1), (2, 1)])

        assert g.has_edge(1, 0)
        assert g.has_edge(1, 2)
        assert not g.has_edge(0, 2)
        assert g.edges() == [(0, 1), (1, 2)]
        assert g.edge_count == 2

    def test_asymmetric_adjacency_rejected(self):
        """Test that a one-sided adjacency row raises GraphError."""
        with pytest.raises(GraphError, match="Asymmetric"):
            Graph(2, (0b10, 0))

    def test_self_loop_rejected(self):
        """Test that self-loops are rejected."""
        with pytest.raises(GraphError, match="Self-loop"):
            Graph.from_edges(2, [(1, 1)])

    def test_edge_out_of_range_rejected(self):
        """Test that edges must stay inside 0..n-1."""
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(0, 2)])

    def test_networkx_round_trip_relabels_sorted(self):
        """Test conversion from networkx with non-integer labels."""
        # Given
        nx_graph = nx.Graph([("b", "c"), ("a", "b")])

        # When
        g = Graph.from_networkx(nx_graph)

        # Then
        assert g == path(3)
        assert nx.is_isomorphic(g.to_networkx(), nx.path_graph(3))

    def test_graphs_are_hashable_values(self):
        """Test that equal graphs hash equally."""
        assert {path(3), Graph.from_edges(3, [(1, 2), (0, 1)])} == {path(3)}

    def test_is_complete(self):
        """Test completeness on small families."""
        assert complete(4).is_complete()
        assert path(2).is_complete()
        assert not cycle(4).is_complete()


class TestConnectivity:
    """Test cases for connectivity and tubes."""

    def test_empty_graph_is_not_connected(self):
        """Test the empty graph convention."""
        assert not is_connected(empty_graph(0))

    def test_single_vertex_is_connected(self):
        """Test that path(1) is connected."""
        assert is_connected(path(1))

    def test_components_ordered_by_smallest_vertex(self):
        """Test component masks of a disjoint union."""
        g = Graph.from_edges(5, [(3, 4), (0, 2)])

        assert connected_components(g) == [mask_of([0, 2]), mask_of([1]), mask_of([3, 4])]

    def test_agrees_with_networkx(self):
        """Test connectivity against networkx on all 4-vertex graphs."""
        for bits in range(1 << 6):
            pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
            g = Graph.from_edges(4, [p for i, p in enumerate(pairs) if (bits >> i) & 1])
            assert is_connected(g) == nx.is_connected(g.to_networkx())

    def test_tubes_of_path3(self, p3):
        """Test tube enumeration order by size then vertices."""
        assert [vertices_of(t) for t in tubes(p3)] == [
            [0],
            [1],
            [2],
            [0, 1],
            [1, 2],
            [0, 1, 2],
        ]

    def test_tubes_requires_connected(self):
        """Test that tubes refuses disconnected graphs."""
        with pytest.raises(DisconnectedGraphError):
            tubes(empty_graph(2))

    def test_induced_relabels_in_order(self, paw):
        """Test the induced subgraph relabeling."""
        assert induced(paw, mask_of([1, 2, 3])) == path(3)

    def test_complement_of_path4_is_path(self):
        """Test that the complement of P_4 is again a path."""
        g = complement(path(4))

        assert g.edges() == [(0, 2), (0, 3), (1, 3)]
        assert nx.is_isomorphic(g.to_networkx(), nx.path_graph(4))


class TestGraphPartitions:
    """Test cases for graph partitions and contraction."""

    @pytest.mark.parametrize(
        "graph, expected",
        [(path(1), 1), (path(3), 4), (complete(3), 5), (cycle(4), 12), (complete(4), 15)],
    )
    def test_partition_counts(self, graph, expected):
        """Test the number of partitions into tubes."""
        assert len(list(graph_partitions(graph))) == expected

    def test_partitions_are_distinct_and_valid(self, paw):
        """Test that every yielded partition validates and none repeats."""
        found = list(graph_partitions(paw))

        assert len(set(found)) == len(found)
        for partition in found:
            partition.validate(paw)

    def test_singletons_come_first(self, k3):
        """Test the enumeration order starts with the discrete partition."""
        assert next(graph_partitions(k3)) == GraphPartition.singletons(3)

    def test_partition_budget(self):
        """Test that the partition budget is enforced."""
        override_budgets({"partition_vertices": 3})

        with pytest.raises(BudgetExceededError, match="partition_vertices"):
            list(graph_partitions(path(4)))

    def test_contract_path3(self, p3):
        """Test contracting an edge of P_3."""
        assert contract(p3, [[0, 1], [2]]) == path(2)

    def test_contract_rejects_non_tube(self):
        """Test that a disconnected block is rejected."""
        with pytest.raises(InvalidPartitionError, match="not a tube"):
            contract(path(4), [[0, 3], [1], [2]])

    def test_contract_rejects_missing_vertex(self, p3):
        """Test that partitions must cover every vertex."""
        with pytest.raises(InvalidPartitionError, match="not covered"):
            contract(p3, [[0, 1]])

    def test_contract_tube_on_cycle(self, c4):
        """Test that contracting an edge of C_4 gives K_3."""
        # When
        contracted, partition = contract_tube(c4, mask_of([0, 1]))

        # Then
        assert contracted == complete(3)
        assert partition.blocks == (mask_of([0, 1]), mask_of([2]), mask_of([3]))

    def test_contraction_labels_follow_smallest_vertex(self):
        """Test the block ordering of the contracted graph."""
        g = path(4)

        contracted, partition = contract_tube(g, mask_of([1, 2]))

        assert partition.index_of(3) == 2
        assert contracted == path(3)


def _position_mask(within: int, subset: int) -> int:
    """Mask of subset in the labels of induced(g, within)."""
    positions = {v: i for i, v in enumerate(vertices_of(within))}
    return mask_of(positions[v] for v in vertices_of(subset))


def _nested_tubes(g: Graph):
    found = tubes(g)
    return [(inner, outer) for outer in found for inner in found if inner & ~outer == 0]


class TestContractionInvariants:
    """Test cases for contraction, induction and complement on every small graph."""

    @pytest.mark.parametrize("n", [1, 2, 3, 4, pytest.param(5, marks=pytest.mark.slow)])
    def test_contract_then_induce_commutes(self, n):
        """Test that contracting G then inducing on H/G equals inducing on H then contracting G."""
        for g in enumerate_connected_graphs(n):
            for small, large in _nested_tubes(g):
                # Given
                contracted, partition = contract_tube(g, small)
                large_over_small = mask_of({partition.index_of(v) for v in vertices_of(large)})

                # When
                contract_first = induced(contracted, large_over_small)
                induce_first, _ = contract_tube(induced(g, large), _position_mask(large, small))

                # Then
                assert contract_first == induce_first, (g, small, large)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, pytest.param(5, marks=pytest.mark.slow)])
    def test_contracting_a_connected_graph_stays_connected(self, n):
        """Test that every contraction of a connected graph is connected."""
        for g in enumerate_connected_graphs(n):
            for partition in graph_partitions(g):
                assert is_connected(contract(g, partition)), (g, str(partition))

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_complement_is_an_involution(self, n):
        """Test complement(complement(g)) == g."""
        for g in enumerate_connected_graphs(n):
            assert complement(complement(g)) == g

    def test_complement_of_edgeless_graph(self):
        """Test that the edgeless graph and K_n are complements."""
        assert complement(empty_graph(4)) == complete(4)
        assert complement(complement(empty_graph(4))) == empty_graph(4)


class TestChromaticPolynomial:
    """Test cases for the chromatic polynomial."""

    def test_triangle(self, k3):
        """Test χ_K3 = q(q-1)(q-2)."""
        assert chromatic_polynomial(k3).coefficients == (0, 2, -3, 1)

    def test_four_cycle(self, c4):
        """Test χ_C4 = (q-1)^4 + (q-1)."""
        poly = chromatic_polynomial(c4)

        assert poly.coefficients == (0, -3, 6, -4, 1)
        assert poly.evaluate(2) == 2

    def test_matches_sympy_expansion(self, paw):
        """Test the paw graph against q(q-1)^2(q-2) expanded by sympy."""
        q = sympy.Symbol("q")
        expected = sympy.expand(q * (q - 1) * (q - 2) * (q - 1))

        assert sympy.expand(chromatic_polynomial(paw).as_expr() - expected) == 0

    def test_edgeless_graph(self):
        """Test χ of the edgeless graph is q^n."""
        assert chromatic_polynomial(empty_graph(3)).coefficients == (0, 0, 0, 1)

    def test_string_is_factored(self, p3):
        """Test the factored display."""
        assert str(chromatic_polynomial(p3)) == "q*(q - 1)**2"

    def test_chromatic_budget(self):
        """Test that the chromatic budget is enforced."""
        override_budgets({"chromatic_vertices": 3})

        with pytest.raises(BudgetExceededError):
            chromatic_polynomial(cycle(4))

    def test_cache_is_bounded(self):
        """Test the memo is an LRU cache of fixed size."""
        assert _chromatic.cache_info().maxsize == CHROMATIC_CACHE_SIZE

    def test_clear_chromatic_cache(self, c4):
        """Test that clearing drops every memoized polynomial."""
        # Given
        chromatic_polynomial(c4)
        assert _chromatic.cache_info().currsize > 0

        # When
        clear_chromatic_cache()

        # Then
        assert _chromatic.cache_info().currsize == 0
        assert chromatic_polynomial(c4).coefficients == (0, -3, 6, -4, 1)

    def test_clear_memos_clears_chromatic_cache(self, k3):
        """Test that the graphic function reset also empties the chromatic memo."""
        chromatic_polynomial(k3)

        clear_memos()

        assert _chromatic.cache_info().currsize == 0



class TestFamilies:
    """Test cases for named families and enumeration."""

    def test_small_cycles_are_paths(self):
        """Test the cycle(1), cycle(2) convention."""
        assert cycle(1) == path(1)
        assert cycle(2) == path(2)

    def test_families_need_a_vertex(self):
        """Test that families reject n = 0."""
        with pytest.raises(GraphError):
            path(0)

    def test_complete_bipartite_is_four_cycle(self):
        """Test that K_{2,2} is a 4-cycle."""
        g = complete_multipartite([2, 2])

        assert g.edge_count == 4
        assert nx.is_isomorphic(g.to_networkx(), nx.cycle_graph(4))

    def test_empty_multipartite(self):
        """Test the empty partition gives the empty graph."""
        assert complete_multipartite([]) == empty_graph(0)

    @pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (3, 4), (4, 38), (5, 728)])
    def test_connected_graph_counts(self, n, expected):
        """Test labeled connected graph counts."""
        assert sum(1 for _ in enumerate_connected_graphs(n)) == expected

    def test_enumeration_budget(self):
        """Test the enumeration budget."""
        override_budgets({"enumerate_vertices": 4})

        with pytest.raises(BudgetExceededError):
            next(enumerate_connected_graphs(5))

    def test_sampling_is_seeded(self):
        """Test sampled graphs are connected, distinct, sorted and reproducible."""
        first = sample_connected_graphs(5, 20, seed=7)
        second = sample_connected_graphs(5, 20, seed=7)

        assert first == second
        assert len(set(first)) == len(first) == 20
        assert all(is_connected(g) for g in first)
        assert first == sorted(first, key=lambda g: g.sort_key)


class TestGraphSpecs:
    """Test cases for CLI graph specs and edge-list files."""

    @pytest.mark.parametrize(
        "spec, expected",
        [("P5", path(5)), ("C6", cycle(6)), ("K4", complete(4)), ("k3", complete(3))],
    )
    def test_named_families(self, spec, expected):
        """Test the P/C/K grammar."""
        assert parse_graph_spec(spec) == expected

    def test_multipartite_spec(self):
        """Test K<a>,<b>,... specs."""
        assert parse_graph_spec("K2,2,1") == complete_multipartite([2, 2, 1])

    def test_unknown_spec(self):
        """Test that garbage raises GraphSpecError."""
        with pytest.raises(GraphSpecError):
            parse_graph_spec("X3")

    def test_zero_size_spec(self):
        """Test that P0 is reported as a spec error."""
        with pytest.raises(GraphSpecError):
            parse_graph_spec("P0")

    def test_edge_list_file(self, edge_list_file, c4):
        """Test reading the edge-list format through the spec parser."""
        assert parse_graph_spec(str(edge_list_file)) == c4

    def test_edge_list_round_trip(self, tmp_path, paw):
        """Test format_edge_list output is readable."""
        target = tmp_path / "paw.txt"
        target.write_text(format_edge_list(paw))

        assert read_edge_list(target) == paw

    def test_edge_list_rejects_bad_order(self, tmp_path):
        """Test that edges must satisfy u < v < n."""
        target = tmp_path / "bad.txt"
        target.write_text("3\n2 1\n")

        with pytest.raises(GraphSpecError):
            read_edge_list(target)

    def test_edge_list_of(self, p3):
        """Test the JSON-friendly edge list."""
        assert edge_list_of(p3) == [[0, 1], [1, 2]]
        assert edge_list_of(None) == []

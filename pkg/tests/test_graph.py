import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from pnmatch.errors import CapExceeded
from pnmatch.gallery import square_with_diagonal, triangle, two_triangles_bridge
from pnmatch.graph import (
    Cycle,
    Graph,
    alternating_cycles,
    bridges,
    connected_components,
    component_sizes,
    cycle_from_json,
    cycle_to_json,
    enumerate_perfect_matchings,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    is_alternating_cycle,
    is_matching,
    is_perfect_matching,
    mates,
    symmetric_difference_decompose,
)
from samplers import random_graph


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, tuple(chosen))


class TestGraph:
    def test_rejects_self_loop_and_parallel(self):
        with pytest.raises(ValueError):
            Graph(2, ((0, 0),))
        with pytest.raises(ValueError):
            Graph(2, ((0, 1), (1, 0)))
        assert Graph(2, ((0, 1), (1, 0)), multi=True).m == 2

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Graph(2, ((0, 2),))

    def test_adjacency_sorted_by_edge_id(self):
        g, _, _ = square_with_diagonal()
        assert g.adj[1] == ((3, 1), (0, 2), (2, 3))
        assert g.edge_between(3, 2) == 4
        assert g.edge_between(0, 3) is None

    def test_without_edges_keeps_ids_in_order(self):
        g, _, _ = square_with_diagonal()
        sub, keep = g.without_edges([1, 3])
        assert keep == [0, 2, 4]
        assert sub.edges == (g.edges[0], g.edges[2], g.edges[4])


class TestBridges:
    def test_two_triangles(self):
        g, _ = two_triangles_bridge()
        assert bridges(g) == frozenset({1})

    def test_triangle_has_none(self):
        assert bridges(triangle()) == frozenset()

    def test_path(self):
        g = Graph(4, ((0, 1), (1, 2), (2, 3)))
        assert bridges(g) == frozenset({0, 1, 2})

    def test_parallel_edges_are_not_bridges(self):
        g = Graph(3, ((0, 1), (0, 1), (1, 2)), multi=True)
        assert bridges(g) == frozenset({2})

    @settings(max_examples=150, deadline=None)
    @given(graphs())
    def test_against_brute_force(self, g):
        assert bridges(g) == oracles.bridge_set(g.n, oracles.plain_edges(g))

    def test_deep_path_does_not_recurse(self):
        n = 50_000
        g = Graph(n, tuple((i, i + 1) for i in range(n - 1)))
        assert len(bridges(g)) == n - 1


class TestComponents:
    def test_labels_and_sizes(self):
        g = Graph(5, ((0, 1), (3, 4)))
        comp = connected_components(g)
        assert comp[0] == comp[1] != comp[2]
        assert sorted(component_sizes(g)) == [1, 2, 2]


class TestMatchings:
    def test_square_has_two(self):
        g, m1, m2 = square_with_diagonal()
        assert sorted(enumerate_perfect_matchings(g), key=sorted) == sorted([m1, m2], key=sorted)

    def test_is_matching(self):
        g, m1, _ = square_with_diagonal()
        assert is_matching(g, m1) and is_perfect_matching(g, m1)
        assert not is_matching(g, {0, 2})
        assert is_matching(g, {0}) and not is_perfect_matching(g, {0})
        assert mates(g, m1) == [2, 3, 0, 1]

    def test_cap(self):
        k = 8
        g = Graph(2 * k, tuple((i, j) for i in range(2 * k) for j in range(i + 1, 2 * k)))
        with pytest.raises(CapExceeded):
            enumerate_perfect_matchings(g, cap=100)

    @settings(max_examples=100, deadline=None)
    @given(graphs())
    def test_enumeration_against_brute_force(self, g):
        ours = set(enumerate_perfect_matchings(g))
        assert ours == set(oracles.perfect_matchings(g.n, oracles.plain_edges(g)))
        assert all(is_perfect_matching(g, m) for m in ours)


class TestSymmetricDifference:
    def test_square(self):
        g, m1, m2 = square_with_diagonal()
        dec = symmetric_difference_decompose(g, m1, m2)
        assert not dec.paths
        assert len(dec.cycles) == 1
        assert dec.cycles[0].edge_set == frozenset({0, 1, 2, 4})

    def test_paths_between_near_perfect_matchings(self):
        g = Graph(4, ((0, 1), (1, 2), (2, 3)))
        dec = symmetric_difference_decompose(g, {1}, {0, 2})
        assert not dec.cycles
        assert len(dec.paths) == 1
        assert set(dec.paths[0].ends) == {0, 3}

    @settings(max_examples=80, deadline=None)
    @given(graphs(max_n=8), st.data())
    def test_pieces_partition_the_difference(self, g, data):
        pms = oracles.perfect_matchings(g.n, oracles.plain_edges(g))
        if len(pms) < 2:
            return
        m1 = data.draw(st.sampled_from(pms))
        m2 = data.draw(st.sampled_from(pms))
        dec = symmetric_difference_decompose(g, m1, m2)
        seen = set()
        for c in dec.cycles:
            assert is_alternating_cycle(g, m1, c)
            assert not seen & c.edge_set
            seen |= c.edge_set
        assert not dec.paths
        assert seen == set(m1) ^ set(m2)


class TestAlternatingCycles:
    def test_square(self):
        g, m1, _ = square_with_diagonal()
        cycles = alternating_cycles(g, m1)
        assert len(cycles) == 1 and len(cycles[0].edges) == 4

    def test_two_triangles_has_none(self):
        g, m = two_triangles_bridge()
        assert alternating_cycles(g, m) == []

    def test_canonical_form_is_rotation_and_reflection_invariant(self):
        c = Cycle((2, 0, 1, 3), (0, 2, 1, 4))
        rot = Cycle((1, 3, 2, 0), (1, 4, 0, 2))
        rev = Cycle((2, 3, 1, 0), (4, 1, 2, 0))
        assert c.canonical() == rot.canonical() == rev.canonical()


class TestSerialization:
    def test_roundtrip(self):
        g, m1, _ = square_with_diagonal()
        assert graph_from_json(graph_to_json(g, m1)) == (g, m1)
        assert graph_from_json(graph_to_json(g)) == (g, None)

    def test_rejects_non_matching(self):
        g, _, _ = square_with_diagonal()
        obj = graph_to_json(g)
        obj["matching"] = [0, 2]
        with pytest.raises(ValueError):
            graph_from_json(obj)

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            graph_from_json({"edges": []})

    def test_cycle_json(self):
        c = Cycle((2, 0, 1, 3), (0, 2, 1, 4))
        assert cycle_from_json(cycle_to_json(c)) == c

    def test_dot_marks_matching(self):
        g, m1, _ = square_with_diagonal()
        dot = graph_to_dot(g, m1)
        assert dot.count("style=bold") == 2 and dot.startswith("graph ")

    def test_random_graphs_roundtrip(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            g = random_graph(rng)
            assert graph_from_json(graph_to_json(g))[0] == g

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cubic_graphs
from oracles import naive_bridges, naive_cyclically_4_connected
from snarkforge.graph import (
    GraphError,
    Multigraph,
    SuppressionError,
    bridges,
    circuit_decomposition,
    cyclic_edge_connectivity_at_least,
    delete_edges,
    even_components,
    insert_vertex_on_edge,
    is_bridgeless,
    is_connected,
    is_cubic,
    make_graph,
    relabel_edges,
    suppress,
)


def theta():
    return make_graph(["a", "b"], [("a", "b"), ("a", "b"), ("a", "b")])


class TestMultigraph:
    def test_edge_ids_are_positions(self, petersen):
        assert list(petersen.edges) == list(range(15))
        assert petersen.endpoints(0) == ("0", "1")

    def test_parallel_edges_are_distinct(self):
        G = theta()
        assert G.edges_between("a", "b") == [0, 1, 2]
        assert is_cubic(G)
        assert not G.is_simple()

    def test_loops_rejected(self):
        with pytest.raises(GraphError):
            make_graph(["a"], [("a", "a")])

    def test_unknown_vertex_rejected(self):
        with pytest.raises(GraphError):
            make_graph(["a"], [("a", "b")])

    def test_other_end(self, k4):
        assert k4.other_end(0, "0") == "1"
        with pytest.raises(GraphError):
            k4.other_end(0, "2")

    def test_equality_ignores_nothing_but_identity(self, k4):
        assert k4 == make_graph([str(i) for i in range(4)],
                                [("0", "1"), ("0", "2"), ("0", "3"), ("1", "2"), ("1", "3"), ("2", "3")])
        assert k4 != relabel_edges(delete_edges(k4, [0]))[0]

    def test_check_edges(self, k4):
        assert k4.check_edges([1, 2]) == frozenset({1, 2})
        with pytest.raises(GraphError):
            k4.check_edges([99])


def test_delete_keeps_ids(k4):
    H = delete_edges(k4, [2])
    assert list(H.edges) == [0, 1, 3, 4, 5]


def test_insert_vertex_on_edge(k4):
    H, (e1, e2) = insert_vertex_on_edge(k4, 0, "m")
    assert H.endpoints(e1) == ("0", "m") and H.endpoints(e2) == ("m", "1")
    assert not H.has_edge(0)
    with pytest.raises(GraphError):
        insert_vertex_on_edge(k4, 1, "0")


class TestSuppress:
    def test_empty_deletion_is_identity(self, petersen):
        assert suppress(petersen).suppressed == petersen

    def test_perfect_matching_of_k4_leaves_a_circuit(self, k4):
        # deleting 01 and 23 drops every vertex to degree 2
        with pytest.raises(SuppressionError, match="circuit component"):
            suppress(k4, [0, 5])

    def test_circuit_component_kept_when_allowed(self, k4):
        sup = suppress(k4, [0, 5], allow_circuits=True)
        assert sup.suppressed.num_vertices() == 0
        assert len(sup.circuits) == 1 and len(sup.circuits[0]) == 4

    def test_prism_matching_makes_parallel_edges(self, prism):
        # delete the triangle edges 12 and 45; vertices 1, 2, 4, 5 get degree 2
        sup = suppress(prism, [1, 4])
        S = sup.suppressed
        assert sorted(S.vertices) == ["0", "3"]
        assert len(S.edges_between("0", "3")) == 3
        assert is_cubic(S)
        assert sorted(len(p) for p in sup.path_map.values()) == [1, 3, 3]

    def test_min_id_kept_and_paths_walk_from_first_end(self, prism):
        sup = suppress(prism, [1, 4])
        for f, path in sup.path_map.items():
            assert f == min(path)
            walk = sup.vertex_paths[f]
            assert walk[0] == sup.suppressed.endpoints(f)[0]
            assert walk[-1] == sup.suppressed.endpoints(f)[1]
            assert len(walk) == len(path) + 1

    def test_would_be_loop_is_rejected(self, prism):
        # deleting the verticals 14 and 25 turns each triangle into a loop
        with pytest.raises(SuppressionError, match="loop"):
            suppress(prism, [7, 8])

    def test_degree_one_rejected(self, k4):
        with pytest.raises(SuppressionError, match="Lemma-1"):
            suppress(k4, [0, 1])


@settings(max_examples=40, deadline=None)
@given(cubic_graphs(), st.data())
def test_suppression_partitions_remaining_edges(G, data):
    from snarkforge.solvers import enumerate_perfect_matchings
    ms = enumerate_perfect_matchings(G)
    M = data.draw(st.sampled_from(ms))
    try:
        sup = suppress(G, M, allow_circuits=True)
    except SuppressionError:
        return
    used = [e for p in sup.path_map.values() for e in p] + [e for c in sup.circuits for e in c]
    assert sorted(used) == sorted(set(G.edges) - M)
    assert is_cubic(sup.suppressed)


@settings(max_examples=60, deadline=None)
@given(cubic_graphs(sizes=(4, 6, 8, 10, 12)))
def test_bridges_match_brute_force(G):
    assert bridges(G) == naive_bridges(G)


def test_bridge_detected():
    # two K4s, each with one edge subdivided, joined through the subdivision vertices
    left = [("a", "p"), ("p", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")]
    right = [(u.upper(), v.upper()) for u, v in left]
    H = make_graph(list("abcdpABCDP"), left + right + [("p", "P")])
    assert is_cubic(H)
    assert not is_bridgeless(H)
    assert bridges(H) == {14}


def test_parallel_edges_are_not_bridges():
    assert bridges(theta()) == set()


def test_connectivity(k4):
    assert is_connected(k4)
    two = Multigraph(["a", "b", "c", "d"], {0: ("a", "b"), 1: ("c", "d")})
    assert not is_connected(two)


class TestCyclicConnectivity:
    def test_k4_is_vacuously_cyclic4(self, k4):
        assert cyclic_edge_connectivity_at_least(k4, 4)

    def test_prism_has_cyclic_3_cut(self, prism):
        assert cyclic_edge_connectivity_at_least(prism, 3)
        assert not cyclic_edge_connectivity_at_least(prism, 4)

    def test_petersen(self, petersen):
        assert cyclic_edge_connectivity_at_least(petersen, 4)

    def test_cap(self, k4):
        with pytest.raises(GraphError):
            cyclic_edge_connectivity_at_least(k4, 5)

    @settings(max_examples=25, deadline=None)
    @given(cubic_graphs(sizes=(6, 8, 10)))
    def test_matches_bipartition_oracle(self, G):
        assert cyclic_edge_connectivity_at_least(G, 4) == naive_cyclically_4_connected(G)


class TestEvenComponents:
    def test_even_hexagon(self, prism):
        # 0-1-4-3 square plus ... takes circuit 0 1 4 3
        S = [0, 7, 3, 6]
        dec = even_components(prism, S)
        assert dec.ok and [len(c) for c in dec.circuits] == [4]

    def test_odd_circuit(self, prism):
        dec = even_components(prism, [0, 1, 2])
        assert not dec and dec.failure == "odd circuit"
        assert circuit_decomposition(prism, [0, 1, 2]).ok

    def test_not_two_regular(self, prism):
        assert even_components(prism, [0, 1]).failure == "not 2-regular"

    def test_empty_set_is_an_even_cycle(self, prism):
        assert even_components(prism, []).ok


@settings(max_examples=30, deadline=None)
@given(cubic_graphs(sizes=(6, 8, 10, 12)), st.data())
def test_suppression_bookkeeping(G, data):
    from snarkforge.solvers import enumerate_perfect_matchings
    M = data.draw(st.sampled_from(enumerate_perfect_matchings(G)))
    try:
        sup = suppress(G, M)
    except SuppressionError:
        return
    assert sum(len(p) for p in sup.path_map.values()) == G.num_edges() - len(M)
    assert suppress(sup.suppressed).suppressed == sup.suppressed


@settings(max_examples=40, deadline=None)
@given(cubic_graphs(sizes=(6, 8, 10, 12)), st.data())
def test_two_disjoint_matchings_give_even_circuits(G, data):
    from snarkforge.solvers import enumerate_perfect_matchings
    ms = enumerate_perfect_matchings(G)
    A = data.draw(st.sampled_from(ms))
    B = data.draw(st.sampled_from(ms))
    # A - B and B - A are disjoint matchings whose union is 2-regular on its support
    both = (A | B) - (A & B)
    dec = circuit_decomposition(G, both)
    assert dec.ok
    assert even_components(G, both).ok


def test_bridgeless_on_corpus():
    from conftest import corpus
    for _, G in corpus():
        assert is_bridgeless(G) and naive_bridges(G) == set()

import pytest

from snarkforge.family import (
    PortedGraph,
    adjacency_violations,
    build_base,
    build_family,
    expected_size,
    extend,
    map_block_edges,
    ported,
)
from snarkforge.graph import GraphError, is_bridgeless, is_connected, is_cubic
from snarkforge.named import builtin, default_ports


def base(name):
    return PortedGraph(builtin(name), **default_ports(name))


class TestPortedGraph:
    def test_defaults_are_valid(self):
        for name in ("petersen", "k4", "prism"):
            P = base(name)
            assert P.graph.edges_between(P.x, P.y)

    def test_wrong_neighbors_rejected(self, petersen):
        with pytest.raises(GraphError):
            PortedGraph(petersen, "0", "1", "4", "7", "2", "6")

    def test_non_edge_rejected(self, petersen):
        with pytest.raises(GraphError):
            ported(petersen, "0", "2")

    def test_ported_fills_missing(self, petersen):
        P = ported(petersen, "0", "1", x1="4")
        assert (P.x0, P.x1) == ("5", "4")
        assert {P.y0, P.y1} == {"2", "6"}

    def test_interior(self):
        P = base("petersen")
        assert len(P.interior_vertices()) == 8
        assert len(P.interior_edges()) == 15 - 5


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_all_petersen_sizes(k):
    G, D = build_family([base("petersen")] * k)
    assert G.num_vertices() == 12 * k - 2
    assert (G.num_vertices(), G.num_edges()) == expected_size([base("petersen")] * k)
    assert is_cubic(G) and is_connected(G) and is_bridgeless(G)
    assert adjacency_violations(G, D) == []
    assert len(D.v) == k - 2 and len(D.a) == len(D.b) == len(D.c) == k


def test_two_k4():
    G, D = build_family([base("k4")] * 2)
    assert (G.num_vertices(), G.num_edges()) == (10, 15)
    assert is_cubic(G) and is_bridgeless(G)
    assert adjacency_violations(G, D) == []


def test_mixed_bases():
    bases = [base(n) for n in ("petersen", "k4", "prism", "petersen", "k4")]
    G, D = build_family(bases)
    assert (G.num_vertices(), G.num_edges()) == expected_size(bases)
    assert is_cubic(G) and is_bridgeless(G)
    assert adjacency_violations(G, D) == []


def test_edge_ids_are_compact():
    G, _ = build_family([base("petersen")] * 3)
    assert list(G.edges) == list(range(G.num_edges()))


def test_base_wiring_k2():
    G, D = build_base(base("petersen"), base("petersen"))
    # k = 2: the chain is the single edge c0 c1
    assert G.edges_between(D.c[0], D.c[1])
    assert D.v == []


def test_extend_wraps_a_and_b_to_block_0():
    G, D = build_family([base("petersen")] * 4)
    last = D.k - 1
    assert G.edges_between(D.a[last], D.blocks[0].port_vertex("x0"))
    assert G.edges_between(D.b[last], D.blocks[0].port_vertex("x1"))
    # the chain walks c0 - v1 - v0 - c1 with spokes c2 v0, c3 v1
    assert G.edges_between(D.c[0], D.v[1]) and G.edges_between(D.v[0], D.c[1])
    assert G.edges_between(D.c[2], D.v[0]) and G.edges_between(D.c[3], D.v[1])


def test_extend_is_build_family_step():
    ps = [base("petersen")] * 3
    G2, D2 = build_family(ps[:2])
    G3, D3 = extend(G2, D2, ps[2])
    assert (G3, D3.k) == (build_family(ps)[0], 3)


def test_one_base_is_not_a_family():
    with pytest.raises(GraphError):
        build_family([base("petersen")])


def test_map_block_edges():
    G, D = build_family([base("petersen")] * 3)
    P = D.blocks[1].source
    inner = P.interior_edges()
    image = map_block_edges(D, 1, inner)
    assert len(image) == len(inner)
    with pytest.raises(GraphError, match="touches"):
        map_block_edges(D, 1, [P.xy])


def test_corruption_is_detected():
    from snarkforge.graph import Multigraph
    G, D = build_family([base("petersen")] * 3)
    e = G.edges_between(D.a[0], D.c[0])[0]
    H = Multigraph(G.vertices, {f: uv for f, uv in G.edges.items() if f != e})
    assert any("c-a" in msg for msg in adjacency_violations(H, D))

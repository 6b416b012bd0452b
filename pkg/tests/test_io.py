import json

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import cubic_graphs
from snarkforge import io
from snarkforge.family import build_family
from snarkforge.graph import GraphError, make_graph
from snarkforge.named import PETERSEN_EDGES, builtin
from snarkforge.solvers import find_fulkerson_cover, three_edge_coloring


def to_nx(G):
    g = nx.MultiGraph()
    g.add_nodes_from(G.vertices)
    g.add_edges_from(G.edges.values())
    return g


def test_builtins_match_pinned_adjacency():
    assert io.graph_to_doc(builtin("petersen"))["edges"] == [[str(u), str(v)] for u, v in PETERSEN_EDGES]
    assert nx.is_isomorphic(to_nx(builtin("petersen")), nx.petersen_graph())
    assert nx.is_isomorphic(to_nx(builtin("k4")), nx.complete_graph(4))
    assert nx.is_isomorphic(to_nx(builtin("prism")), nx.circular_ladder_graph(3))


@settings(max_examples=30, deadline=None)
@given(cubic_graphs(sizes=(4, 6, 8, 10, 12)))
def test_json_round_trip(G):
    assert io.graph_from_doc(json.loads(json.dumps(io.graph_to_doc(G)))) == G


@settings(max_examples=30, deadline=None)
@given(cubic_graphs(sizes=(4, 6, 8, 10, 12)))
def test_graph6_round_trip_is_isomorphic(G):
    back = io.read_graph6(io.to_graph6(G))[0]
    assert nx.is_isomorphic(to_nx(G), to_nx(back))


def test_graph6_header_and_blank_lines():
    text = ">>graph6<<" + io.to_graph6(builtin("petersen")) + "\n\n" + io.to_graph6(builtin("k4")) + "\n"
    gs = io.read_graph6(text)
    assert [G.num_vertices() for G in gs] == [10, 4]


def test_graph6_rejects_multigraphs():
    with pytest.raises(GraphError):
        io.to_graph6(make_graph(["a", "b"], [("a", "b")] * 3))


def test_bad_graph6():
    with pytest.raises(io.InputError):
        io.read_graph6("~~~~")


def test_graph_doc_errors():
    with pytest.raises(io.InputError):
        io.graph_from_doc({"vertices": ["a"]})
    with pytest.raises(io.InputError):
        io.graph_from_doc("dodecahedron")


def test_builtin_names_resolve():
    assert io.graph_from_doc("petersen") == builtin("petersen")


def test_cover_and_coloring_docs():
    G = builtin("petersen")
    cover = find_fulkerson_cover(G)
    assert io.cover_from_doc(json.loads(json.dumps(io.cover_to_doc(cover)))) == cover
    col = three_edge_coloring(builtin("prism"))
    assert io.coloring_from_doc(json.loads(json.dumps(io.coloring_to_doc(col)))) == col
    with pytest.raises(io.InputError):
        io.cover_from_doc({"matching": []})
    with pytest.raises(io.InputError):
        io.cover_from_doc({"matchings": [[0]] * 5})


def test_family_input():
    bases = io.bases_from_doc({"bases": ["petersen", {"graph": "k4"},
                                         {"graph": "petersen", "xy": ["0", "1"], "x0": "5"}]})
    assert [P.graph.num_vertices() for P in bases] == [10, 4, 10]
    assert (bases[2].x0, bases[2].x1) == ("5", "4")
    with pytest.raises(io.InputError):
        io.bases_from_doc({"bases": [{"graph": {"vertices": ["0"], "edges": []}}]})
    with pytest.raises(io.InputError):
        io.bases_from_doc({"bases": [{"graph": "petersen", "xy": ["0", "2"]}]})
    with pytest.raises(io.InputError):
        io.bases_from_doc([])


def test_family_output_round_trip():
    bases = io.bases_from_doc({"bases": ["petersen", "k4", "petersen"]})
    G, D = build_family(bases)
    doc = json.loads(json.dumps(io.family_to_doc(G, D)))
    assert io.graph_from_doc(doc) == G
    assert set(doc["landmarks"]) == {"a", "b", "c", "v"}
    assert len(doc["blocks"]) == 3
    again = io.bases_from_doc(doc)
    assert build_family(again)[0] == G


def test_dot_labels():
    bases = io.bases_from_doc({"bases": ["petersen"] * 3})
    G, D = build_family(bases)
    dot = io.to_dot(G, io.family_to_doc(G, D)["landmarks"])
    assert dot.startswith("graph G {")
    for label in ("a0", "b2", "c1", "v0"):
        assert f'label="{label}"' in dot
    assert dot.count(" -- ") == G.num_edges()

"""JSON documents, graph6 and DOT for graphs, covers, colorings and families.

Graph documents are ``{"vertices": [...], "edges": [[u, v], ...]}`` and the
edge-id of an edge is its position in ``"edges"``.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import networkx as nx

from . import named
from .family import FamilyDescriptor, PortedGraph, ported
from .graph import GraphError, Multigraph, make_graph
from .solvers import Coloring, FulkersonCover


class InputError(ValueError):
    """A document could not be parsed into the expected object."""


def load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def digest(path) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def graph_to_doc(G: Multigraph) -> dict:
    if list(G.edges) != list(range(G.num_edges())):
        raise GraphError("edge-ids must be 0..m-1 in order to serialize; relabel first")
    return {"vertices": [str(v) for v in G.vertices],
            "edges": [[str(u), str(v)] for u, v in G.edges.values()]}


def graph_from_doc(doc) -> Multigraph:
    """Accept a graph document or the name of a builtin graph."""
    if isinstance(doc, str):
        try:
            return named.builtin(doc)
        except KeyError as exc:
            raise InputError(str(exc)) from exc
    if isinstance(doc, dict) and "graph" in doc and "vertices" not in doc:
        return graph_from_doc(doc["graph"])
    try:
        return make_graph([str(v) for v in doc["vertices"]],
                          [(str(u), str(v)) for u, v in doc["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad graph document: {exc}") from exc


def read_graph6(text: str) -> list[Multigraph]:
    """Parse graph6 lines (the ``>>graph6<<`` header is tolerated)."""
    graphs = []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith(">>graph6<<"):
            line = line[len(">>graph6<<"):]
        if not line:
            continue
        try:
            g = nx.from_graph6_bytes(line.encode("ascii"))
        except (ValueError, IndexError, nx.NetworkXError) as exc:
            raise InputError(f"bad graph6 line {line!r}: {exc}") from exc
        pairs = sorted((min(u, v), max(u, v)) for u, v in g.edges())
        graphs.append(make_graph([str(v) for v in range(g.number_of_nodes())],
                                 [(str(u), str(v)) for u, v in pairs]))
    return graphs


def to_graph6(G: Multigraph) -> str:
    if not G.is_simple():
        raise GraphError("graph6 export needs a simple graph")
    pos = {v: i for i, v in enumerate(G.vertices)}
    g = nx.Graph()
    g.add_nodes_from(range(G.num_vertices()))
    g.add_edges_from((pos[u], pos[v]) for u, v in G.edges.values())
    return nx.to_graph6_bytes(g, header=False).decode("ascii").strip()


def to_dot(G: Multigraph, landmarks: dict[str, list] | None = None) -> str:
    """Undirected DOT; gadget vertices get their landmark names as labels."""
    label = {}
    for name, verts in (landmarks or {}).items():
        for j, v in enumerate(verts):
            label[v] = f"{name}{j}"
    lines = ["graph G {"]
    for v in G.vertices:
        attrs = f' [label="{label[v]}", shape=box]' if v in label else ""
        lines.append(f'  "{v}"{attrs};')
    for e, (u, v) in G.edges.items():
        lines.append(f'  "{u}" -- "{v}" [id="e{e}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cover_to_doc(cover: FulkersonCover) -> dict:
    return {"matchings": [sorted(M) for M in cover.matchings]}


def cover_from_doc(doc) -> FulkersonCover:
    try:
        return FulkersonCover(tuple(frozenset(int(e) for e in M) for M in doc["matchings"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad cover document: {exc}") from exc


def covers_from_doc(doc) -> list[FulkersonCover]:
    items = doc.get("covers") if isinstance(doc, dict) else doc
    if not isinstance(items, list):
        raise InputError("covers document must be a list or {\"covers\": [...]}")
    return [cover_from_doc(c) for c in items]


def coloring_to_doc(col: Coloring) -> dict:
    return {"colors": {str(e): c for e, c in sorted(col.items())}}


def coloring_from_doc(doc) -> Coloring:
    try:
        return {int(e): int(c) for e, c in doc["colors"].items()}
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"bad coloring document: {exc}") from exc


def ported_from_doc(doc) -> PortedGraph:
    """One entry of ``{"bases": [...]}``; builtins fall back to their default ports."""
    if isinstance(doc, str):
        doc = {"graph": doc}
    if not isinstance(doc, dict) or "graph" not in doc:
        raise InputError("each base needs a \"graph\" entry")
    G = graph_from_doc(doc["graph"])
    try:
        if "xy" in doc:
            x, y = (str(v) for v in doc["xy"])
            ports = {r: str(doc[r]) if r in doc else None for r in ("x0", "x1", "y0", "y1")}
            return ported(G, x, y, **ports)
        if isinstance(doc["graph"], str):
            return PortedGraph(G, **named.default_ports(doc["graph"]))
    except (GraphError, KeyError, ValueError, IndexError, StopIteration) as exc:
        raise InputError(f"bad ports: {exc}") from exc
    raise InputError("a base graph document needs \"xy\" unless it names a builtin")


def bases_from_doc(doc) -> list[PortedGraph]:
    if not isinstance(doc, dict) or not isinstance(doc.get("bases"), list):
        raise InputError("family input must look like {\"bases\": [...]}")
    return [ported_from_doc(b) for b in doc["bases"]]


def ported_to_doc(P: PortedGraph) -> dict:
    return {"graph": graph_to_doc(P.graph), "xy": [str(P.x), str(P.y)],
            **{r: str(P.port(r)) for r in ("x0", "x1", "y0", "y1")}}


def family_to_doc(G: Multigraph, D: FamilyDescriptor) -> dict:
    doc = graph_to_doc(G)
    doc["landmarks"] = {n: [str(v) for v in vs] for n, vs in D.landmark_vertices().items()}
    doc["blocks"] = [{str(w): str(img) for w, img in blk.vertex_image.items()} for blk in D.blocks]
    doc["bases"] = [ported_to_doc(blk.source) for blk in D.blocks]
    return doc

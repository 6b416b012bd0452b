"""Composition of base graphs into the families {G; G_0, ..., G_{k-1}}.

Each base graph ``G_i`` is given with a designated edge ``x_i y_i`` and an
ordering of the remaining neighbors of ``x_i`` and ``y_i`` (a
:class:`PortedGraph`).  The block ``H_i = G_i - {x_i, y_i}`` is copied into
the composed graph and wired to gadget vertices ``a_j, b_j, c_j`` and chain
vertices ``v_j``:

* ``c_j`` is adjacent to ``a_j`` and ``b_j``;
* ``a_j`` to ``y_j^0`` and ``x_{j+1}^0``, ``b_j`` to ``y_j^1`` and ``x_{j+1}^1``
  (indices mod k);
* the chain ``c_0 - v_{k-3} - ... - v_0 - c_1`` carries spokes ``c_i - v_{i-2}``.

Block vertex ``w`` of ``G_i`` becomes ``"h{i}.{w}"`` in the composed graph.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace

from .graph import GraphError, Multigraph, Vertex, is_cubic, relabel_edges

PORT_ROLES = ("x0", "x1", "y0", "y1")


@dataclass(frozen=True)
class PortedGraph:
    graph: Multigraph
    x: Vertex
    y: Vertex
    x0: Vertex
    x1: Vertex
    y0: Vertex
    y1: Vertex

    def __post_init__(self):
        G = self.graph
        if not is_cubic(G):
            raise GraphError("ported graph must be cubic")
        for v in (self.x, self.y, self.x0, self.x1, self.y0, self.y1):
            if not G.has_vertex(v):
                raise GraphError(f"unknown port vertex {v!r}")
        if len(G.edges_between(self.x, self.y)) != 1:
            raise GraphError(f"{self.x!r}{self.y!r} must be a single edge")
        if self.x0 == self.x1 or self.y0 == self.y1:
            raise GraphError("port neighbors of x (and of y) must be distinct")
        if {self.x0, self.x1, self.y0, self.y1} & {self.x, self.y}:
            raise GraphError("port vertices must differ from x and y")
        if Counter(G.neighbors(self.x)) != Counter((self.y, self.x0, self.x1)):
            raise GraphError(f"x0, x1 must be the neighbors of {self.x!r} other than {self.y!r}")
        if Counter(G.neighbors(self.y)) != Counter((self.x, self.y0, self.y1)):
            raise GraphError(f"y0, y1 must be the neighbors of {self.y!r} other than {self.x!r}")

    @property
    def xy(self) -> int:
        return self.graph.edges_between(self.x, self.y)[0]

    def port(self, role: str) -> Vertex:
        return getattr(self, role)

    def with_roles(self, roles: dict) -> PortedGraph:
        return replace(self, **{k: roles[k] for k in ("x", "y", *PORT_ROLES)})

    def interior_vertices(self) -> list[Vertex]:
        return [w for w in self.graph.vertices if w not in (self.x, self.y)]

    def interior_edges(self) -> list[int]:
        ends = (self.x, self.y)
        return [e for e, (u, w) in self.graph.edges.items() if u not in ends and w not in ends]


def ported(graph: Multigraph, x: Vertex, y: Vertex, x0: Vertex = None, x1: Vertex = None,
           y0: Vertex = None, y1: Vertex = None) -> PortedGraph:
    """Convenience constructor; unspecified ports take the incidence order."""
    def pick(end, other, first, second):
        rest = [w for w in graph.neighbors(end) if w != other]
        if first is None and second is None:
            return rest[0], rest[1]
        if first is None:
            first = rest[1] if rest[0] == second else rest[0]
        elif second is None:
            second = rest[1] if rest[0] == first else rest[0]
        return first, second

    x0, x1 = pick(x, y, x0, x1)
    y0, y1 = pick(y, x, y0, y1)
    return PortedGraph(graph, x, y, x0, x1, y0, y1)


@dataclass
class Block:
    """One base graph inside the composed graph.

    ``ports[role]`` is the composed edge that replaced the half-connection
    from ``x`` (or ``y``) to that port vertex.
    """

    index: int
    source: PortedGraph
    vertex_image: dict[Vertex, Vertex]
    edge_image: dict[int, int]
    ports: dict[str, int]

    def image(self, w: Vertex) -> Vertex:
        try:
            return self.vertex_image[w]
        except KeyError:
            raise GraphError(f"vertex {w!r} of block {self.index} has no image") from None

    def port_vertex(self, role: str) -> Vertex:
        return self.vertex_image[self.source.port(role)]


@dataclass
class FamilyDescriptor:
    k: int
    blocks: list[Block]
    a: list[Vertex]
    b: list[Vertex]
    c: list[Vertex]
    v: list[Vertex] = field(default_factory=list)
    chain: list[int] = field(default_factory=list)  # c0 -> ... -> c1

    def landmark_vertices(self) -> dict[str, list[Vertex]]:
        return {"a": list(self.a), "b": list(self.b), "c": list(self.c), "v": list(self.v)}


class _Draft:
    def __init__(self, G: Multigraph | None = None):
        self.vertices = list(G.vertices) if G else []
        self.edges = dict(G.edges) if G else {}
        self.next_id = G.next_edge_id() if G else 0

    def add_vertex(self, v):
        self.vertices.append(v)
        return v

    def add_edge(self, u, v) -> int:
        e = self.next_id
        self.next_id += 1
        self.edges[e] = (u, v)
        return e

    def remove_edge(self, e, expect: tuple) -> None:
        got = self.edges.get(e)
        if got is None or set(got) != set(expect):
            raise GraphError(f"missing expected edge {expect} (found {got}) during rewiring")
        del self.edges[e]

    def add_block(self, i: int, P: PortedGraph) -> Block:
        vimg = {w: self.add_vertex(f"h{i}.{w}") for w in P.interior_vertices()}
        eimg = {}
        for e in P.interior_edges():
            u, w = P.graph.endpoints(e)
            eimg[e] = self.add_edge(vimg[u], vimg[w])
        return Block(i, P, vimg, eimg, {})

    def finish(self, D: FamilyDescriptor) -> tuple[Multigraph, FamilyDescriptor]:
        G, remap = relabel_edges(Multigraph(self.vertices, self.edges))
        for blk in D.blocks:
            blk.edge_image = {e: remap[f] for e, f in blk.edge_image.items()}
            blk.ports = {r: remap[f] for r, f in blk.ports.items()}
        D.chain = [remap[f] for f in D.chain]
        if not is_cubic(G):
            raise GraphError("composed graph is not cubic")
        return G, D


def _check_ported(P) -> PortedGraph:
    if not isinstance(P, PortedGraph):
        raise GraphError("expected a PortedGraph")
    return P


def build_base(P0: PortedGraph, P1: PortedGraph) -> tuple[Multigraph, FamilyDescriptor]:
    """The two-block graph: H_0, H_1, six gadget vertices and 13 new edges."""
    P0, P1 = _check_ported(P0), _check_ported(P1)
    d = _Draft()
    B0, B1 = d.add_block(0, P0), d.add_block(1, P1)
    a0, b0, c0, a1, b1, c1 = (d.add_vertex(n) for n in ("a0", "b0", "c0", "a1", "b1", "c1"))
    img0, img1 = B0.vertex_image, B1.vertex_image
    B0.ports["y0"] = d.add_edge(a0, img0[P0.y0])
    B1.ports["x0"] = d.add_edge(a0, img1[P1.x0])
    d.add_edge(a0, c0)
    d.add_edge(c0, b0)
    B0.ports["y1"] = d.add_edge(b0, img0[P0.y1])
    B1.ports["x1"] = d.add_edge(b0, img1[P1.x1])
    B0.ports["x1"] = d.add_edge(b1, img0[P0.x1])
    B1.ports["y1"] = d.add_edge(b1, img1[P1.y1])
    d.add_edge(b1, c1)
    d.add_edge(c1, a1)
    B0.ports["x0"] = d.add_edge(a1, img0[P0.x0])
    B1.ports["y0"] = d.add_edge(a1, img1[P1.y0])
    chain = d.add_edge(c0, c1)
    D = FamilyDescriptor(2, [B0, B1], [a0, a1], [b0, b1], [c0, c1], [], [chain])
    return d.finish(D)


def extend(G: Multigraph, D: FamilyDescriptor, P: PortedGraph) -> tuple[Multigraph, FamilyDescriptor]:
    """Add block ``n = D.k``: subdivide the chain edge at ``c_0`` with ``v_{n-2}``
    and move ``x_0``'s ports from ``a_{n-1}, b_{n-1}`` to the new ``a_n, b_n``."""
    P = _check_ported(P)
    n = D.k
    if len(D.blocks) != n or len(D.a) != n or not D.chain:
        raise GraphError("descriptor/graph mismatch")
    for v in D.a + D.b + D.c + D.v:
        if not G.has_vertex(v):
            raise GraphError(f"descriptor/graph mismatch: {v!r} missing")
    d = _Draft(G)
    blocks = [replace(blk, vertex_image=dict(blk.vertex_image), edge_image=dict(blk.edge_image),
                      ports=dict(blk.ports)) for blk in D.blocks]
    c0 = D.c[0]
    e0 = D.chain[0]
    u, w = G.endpoints(e0)
    if c0 not in (u, w):
        raise GraphError("chain edge at c0 is not incident with c0")
    far = w if u == c0 else u
    vn = d.add_vertex(f"v{n - 2}")
    d.remove_edge(e0, (u, w))
    chain = [d.add_edge(c0, vn), d.add_edge(vn, far)] + D.chain[1:]

    B0 = blocks[0]
    x00, x01 = B0.port_vertex("x0"), B0.port_vertex("x1")
    d.remove_edge(B0.ports["x0"], (D.a[n - 1], x00))
    d.remove_edge(B0.ports["x1"], (D.b[n - 1], x01))

    Bn = d.add_block(n, P)
    an, bn, cn = d.add_vertex(f"a{n}"), d.add_vertex(f"b{n}"), d.add_vertex(f"c{n}")
    img = Bn.vertex_image
    B0.ports["x0"] = d.add_edge(an, x00)
    Bn.ports["y0"] = d.add_edge(an, img[P.y0])
    B0.ports["x1"] = d.add_edge(bn, x01)
    Bn.ports["y1"] = d.add_edge(bn, img[P.y1])
    Bn.ports["x0"] = d.add_edge(D.a[n - 1], img[P.x0])
    Bn.ports["x1"] = d.add_edge(D.b[n - 1], img[P.x1])
    d.add_edge(cn, an)
    d.add_edge(cn, bn)
    d.add_edge(cn, vn)
    D2 = FamilyDescriptor(n + 1, blocks + [Bn], D.a + [an], D.b + [bn], D.c + [cn],
                          D.v + [vn], chain)
    return d.finish(D2)


def build_family(ports: list[PortedGraph]) -> tuple[Multigraph, FamilyDescriptor]:
    if len(ports) < 2:
        raise GraphError("a family needs at least two base graphs")
    G, D = build_base(ports[0], ports[1])
    for P in ports[2:]:
        G, D = extend(G, D, P)
    return G, D


def map_block_edges(D: FamilyDescriptor, i: int, S) -> frozenset[int]:
    """Image in the composed graph of an edge set of ``G_i`` avoiding ``x_i, y_i``."""
    blk = D.blocks[i]
    out = set()
    for e in S:
        if e not in blk.edge_image:
            ends = blk.source.graph.endpoints(e)
            raise GraphError(f"edge {e} {ends} of block {i} touches x/y: subtract boundary terms first")
        out.add(blk.edge_image[e])
    return frozenset(out)


def expected_size(ports: list[PortedGraph]) -> tuple[int, int]:
    k = len(ports)
    n = sum(P.graph.num_vertices() - 2 for P in ports) + 3 * k + max(k - 2, 0)
    return n, 3 * n // 2


def adjacency_violations(G: Multigraph, D: FamilyDescriptor) -> list[str]:
    """Every failed adjacency of the descriptor contract (empty when it holds)."""
    k = D.k
    bad = []

    def need(u, v, what):
        if not G.edges_between(u, v):
            bad.append(f"{what}: {u!r} !~ {v!r}")

    for j in range(k):
        nxt = D.blocks[(j + 1) % k]
        need(D.c[j], D.a[j], "c-a")
        need(D.c[j], D.b[j], "c-b")
        need(D.a[j], D.blocks[j].port_vertex("y0"), "a-y0")
        need(D.a[j], nxt.port_vertex("x0"), "a-x0")
        need(D.b[j], D.blocks[j].port_vertex("y1"), "b-y1")
        need(D.b[j], nxt.port_vertex("x1"), "b-x1")
    walk = [D.c[0]] + [D.v[j] for j in range(k - 3, -1, -1)] + [D.c[1]]
    for u, v in zip(walk, walk[1:]):
        need(u, v, "chain")
    for i in range(2, k):
        need(D.c[i], D.v[i - 2], "spoke")
    for blk in D.blocks:
        inside = set(blk.vertex_image.values())
        have = Counter(frozenset(uv) for uv in G.edges.values() if set(uv) <= inside)
        want = Counter(frozenset((blk.image(u), blk.image(w)))
                       for u, w in (blk.source.graph.endpoints(e) for e in blk.source.interior_edges()))
        if have != want:
            bad.append(f"block {blk.index} is not an induced copy of G_i - {{x_i, y_i}}")
    return bad

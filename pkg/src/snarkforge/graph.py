"""Loop-free multigraphs with stable integer edge identifiers.

Every algorithm in the package works on :class:`Multigraph` values.  They are
immutable: operations such as :func:`delete_edges` or :func:`suppress` return
new graphs and never touch their input.  Edge identity is the integer edge-id,
so parallel edges are always distinguishable.
"""

from __future__ import annotations

import itertools
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass
from types import MappingProxyType

Vertex = Hashable


class GraphError(ValueError):
    """Raised when a graph or an edge set violates an operation's contract."""


class SuppressionError(GraphError):
    pass


class Multigraph:
    """Immutable loop-free multigraph.

    ``edges`` maps edge-id to an endpoint pair; iteration order of both the
    vertices and the edges is the construction order and is part of the
    value (algorithms use it to break ties deterministically).
    """

    __slots__ = ("_vertices", "_vset", "_edges", "_inc")

    def __init__(self, vertices: Iterable[Vertex], edges: Mapping[int, tuple[Vertex, Vertex]]):
        verts = tuple(vertices)
        vset = set(verts)
        if len(vset) != len(verts):
            seen = set()
            dup = next(v for v in verts if v in seen or seen.add(v))
            raise GraphError(f"duplicate vertex-id {dup!r}")
        inc: dict[Vertex, list[int]] = {v: [] for v in verts}
        store: dict[int, tuple[Vertex, Vertex]] = {}
        for eid, (u, v) in edges.items():
            if u == v:
                raise GraphError(f"loop at vertex {u!r} (edge {eid})")
            if u not in vset or v not in vset:
                bad = u if u not in vset else v
                raise GraphError(f"unknown vertex {bad!r} referenced by edge {eid}")
            store[eid] = (u, v)
            inc[u].append(eid)
            inc[v].append(eid)
        self._vertices = verts
        self._vset = frozenset(vset)
        self._edges = MappingProxyType(store)
        self._inc = {v: tuple(es) for v, es in inc.items()}

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self._vertices

    @property
    def edges(self) -> Mapping[int, tuple[Vertex, Vertex]]:
        return self._edges

    def num_vertices(self) -> int:
        return len(self._vertices)

    def num_edges(self) -> int:
        return len(self._edges)

    def has_vertex(self, v: Vertex) -> bool:
        return v in self._vset

    def has_edge(self, e: int) -> bool:
        return e in self._edges

    def endpoints(self, e: int) -> tuple[Vertex, Vertex]:
        try:
            return self._edges[e]
        except KeyError:
            raise GraphError(f"stale edge-id {e!r}") from None

    def other_end(self, e: int, v: Vertex) -> Vertex:
        a, b = self.endpoints(e)
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v!r} is not an endpoint of edge {e}")

    def incident(self, v: Vertex) -> tuple[int, ...]:
        try:
            return self._inc[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def neighbors(self, v: Vertex) -> list[Vertex]:
        return [self.other_end(e, v) for e in self.incident(v)]

    def edges_between(self, u: Vertex, v: Vertex) -> list[int]:
        return [e for e in self.incident(u) if self.other_end(e, u) == v]

    def is_simple(self) -> bool:
        pairs = [frozenset(p) for p in self._edges.values()]
        return len(pairs) == len(set(pairs))

    def next_edge_id(self) -> int:
        return max(self._edges, default=-1) + 1

    def check_edges(self, es: Iterable[int]) -> frozenset[int]:
        """Return ``es`` as a frozenset after checking every id is present."""
        es = frozenset(es)
        for e in es:
            if e not in self._edges:
                raise GraphError(f"stale edge-id {e!r}")
        return es

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._vertices == other._vertices and dict(self._edges) == dict(other._edges)

    def __hash__(self):
        return hash((self._vertices, tuple(self._edges.items())))

    def __reduce__(self):
        return (Multigraph, (self._vertices, dict(self._edges)))

    def __repr__(self):
        return f"Multigraph(|V|={len(self._vertices)}, |E|={len(self._edges)})"


def make_graph(vertex_ids: Iterable[Vertex], pairs: Iterable[tuple[Vertex, Vertex]]) -> Multigraph:
    """Build a multigraph whose edge-ids are the positions of ``pairs``."""
    return Multigraph(vertex_ids, {i: (u, v) for i, (u, v) in enumerate(pairs)})


def degree(G: Multigraph, v: Vertex) -> int:
    return len(G.incident(v))


def is_cubic(G: Multigraph) -> bool:
    return all(len(G.incident(v)) == 3 for v in G.vertices)


def relabel_edges(G: Multigraph) -> tuple[Multigraph, dict[int, int]]:
    """Renumber edges 0..m-1 in current order; returns the graph and old->new map."""
    mapping = {e: i for i, e in enumerate(G.edges)}
    return Multigraph(G.vertices, {mapping[e]: uv for e, uv in G.edges.items()}), mapping


def delete_edges(G: Multigraph, Y: Iterable[int]) -> Multigraph:
    Y = G.check_edges(Y)
    return Multigraph(G.vertices, {e: uv for e, uv in G.edges.items() if e not in Y})


def insert_vertex_on_edge(G: Multigraph, e: int, v: Vertex) -> tuple[Multigraph, tuple[int, int]]:
    """Subdivide edge ``e`` with the new vertex ``v``.

    Returns the new graph and the ids of the two halves ``(u-v, v-w)`` where
    ``(u, w)`` are the endpoints of ``e`` in stored order.
    """
    u, w = G.endpoints(e)
    if G.has_vertex(v):
        raise GraphError(f"vertex-id collision: {v!r}")
    first = G.next_edge_id()
    edges = {f: uv for f, uv in G.edges.items() if f != e}
    edges[first] = (u, v)
    edges[first + 1] = (v, w)
    return Multigraph(G.vertices + (v,), edges), (first, first + 1)


@dataclass(frozen=True)
class SuppressionResult:
    """Outcome of :func:`suppress`.

    ``path_map[f]`` lists the original edges replaced by suppressed edge ``f``
    walking from ``suppressed.endpoints(f)[0]`` to ``[1]``; ``vertex_paths[f]``
    is the matching vertex walk.  ``circuits`` holds components of ``G - Y``
    made only of degree-2 vertices (empty unless ``allow_circuits`` was set).
    """

    suppressed: Multigraph
    path_map: Mapping[int, tuple[int, ...]]
    vertex_paths: Mapping[int, tuple[Vertex, ...]]
    vertex_image: Mapping[Vertex, Vertex]
    circuits: tuple[tuple[int, ...], ...] = ()
    circuit_vertices: tuple[tuple[Vertex, ...], ...] = ()

    def edge_owner(self) -> dict[int, int]:
        """Map each original edge on a path to the suppressed edge containing it."""
        return {e: f for f, path in self.path_map.items() for e in path}


def suppress(G: Multigraph, Y: Iterable[int] = (), *, allow_circuits: bool = False) -> SuppressionResult:
    """Delete ``Y`` and replace every maximal path of degree-2 vertices by one edge.

    The suppressed edge keeps the smallest original edge-id on its path, so
    with ``Y`` empty on a cubic graph the result is ``G`` itself.
    """
    Y = G.check_edges(Y)
    live = {v: [e for e in G.incident(v) if e not in Y] for v in G.vertices}
    for v in G.vertices:
        if len(live[v]) not in (2, 3):
            raise SuppressionError(
                f"not a valid Lemma-1 deletion: vertex {v!r} has degree {len(live[v])} after deletion")

    used: set[int] = set()
    edges: dict[int, tuple[Vertex, Vertex]] = {}
    path_map: dict[int, tuple[int, ...]] = {}
    vertex_paths: dict[int, tuple[Vertex, ...]] = {}
    for u in G.vertices:
        if len(live[u]) != 3:
            continue
        for e in live[u]:
            if e in used:
                continue
            path, walk = [e], [u]
            used.add(e)
            cur, w = e, G.other_end(e, u)
            while len(live[w]) == 2:
                walk.append(w)
                a, b = live[w]
                cur = b if a == cur else a
                used.add(cur)
                path.append(cur)
                w = G.other_end(cur, w)
            walk.append(w)
            if w == u:
                raise SuppressionError(f"suppression would create a loop at {u!r}")
            fid = min(path)
            if len(path) == 1 and G.endpoints(e) != (u, w):
                u_, w_ = w, u  # untouched edges keep their stored orientation
                walk.reverse()
            else:
                u_, w_ = u, w
            edges[fid] = (u_, w_)
            path_map[fid] = tuple(path)
            vertex_paths[fid] = tuple(walk)

    circuits, circuit_vertices = [], []
    for e in G.edges:
        if e in Y or e in used:
            continue
        if not allow_circuits:
            raise SuppressionError("suppression undefined on circuit component")
        start = G.endpoints(e)[0]
        path, walk = [e], [start]
        used.add(e)
        cur, w = e, G.other_end(e, start)
        while w != start:
            walk.append(w)
            a, b = live[w]
            cur = b if a == cur else a
            used.add(cur)
            path.append(cur)
            w = G.other_end(cur, w)
        circuits.append(tuple(path))
        circuit_vertices.append(tuple(walk))

    survivors = [v for v in G.vertices if len(live[v]) == 3]
    ordered = {f: edges[f] for f in sorted(edges)}
    return SuppressionResult(
        suppressed=Multigraph(survivors, ordered),
        path_map=MappingProxyType({f: path_map[f] for f in ordered}),
        vertex_paths=MappingProxyType({f: vertex_paths[f] for f in ordered}),
        vertex_image=MappingProxyType({v: v for v in survivors}),
        circuits=tuple(circuits),
        circuit_vertices=tuple(circuit_vertices),
    )


def components(G: Multigraph, removed: Iterable[int] = ()) -> list[list[Vertex]]:
    """Connected components of ``G`` minus the edges ``removed``, in vertex order."""
    removed = set(removed)
    seen: set[Vertex] = set()
    comps = []
    for s in G.vertices:
        if s in seen:
            continue
        seen.add(s)
        comp, stack = [s], [s]
        while stack:
            v = stack.pop()
            for e in G.incident(v):
                if e in removed:
                    continue
                w = G.other_end(e, v)
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def is_connected(G: Multigraph) -> bool:
    return len(components(G)) <= 1


def bridges(G: Multigraph) -> set[int]:
    """Edge-ids of all cut edges (iterative lowpoint DFS; parallel edges are never bridges)."""
    disc: dict[Vertex, int] = {}
    low: dict[Vertex, int] = {}
    found: set[int] = set()
    counter = itertools.count()
    for root in G.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = next(counter)
        stack = [(root, None, iter(G.incident(root)))]
        while stack:
            v, via, it = stack[-1]
            for e in it:
                if e == via:
                    continue
                w = G.other_end(e, v)
                if w in disc:
                    low[v] = min(low[v], disc[w])
                else:
                    disc[w] = low[w] = next(counter)
                    stack.append((w, e, iter(G.incident(w))))
                    break
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        found.add(via)
    return found


def is_bridgeless(G: Multigraph) -> bool:
    return not bridges(G)


def cyclic_edge_connectivity_at_least(G: Multigraph, t: int) -> bool:
    """True iff no edge-cut with fewer than ``t`` edges leaves circuits on both sides.

    Exhaustive over edge subsets, so only meant for desk-scale graphs.
    """
    if t > 4:
        raise GraphError("desk-scale limit: t must be at most 4")
    eids = list(G.edges)
    for size in range(t):
        for cut in itertools.combinations(eids, size):
            comps = components(G, cut)
            if len(comps) < 2:
                continue
            cutset = set(cut)
            cyclic = 0
            for comp in comps:
                members = set(comp)
                inner = sum(1 for e, (u, v) in G.edges.items()
                            if e not in cutset and u in members)
                if inner >= len(comp):
                    cyclic += 1
            if cyclic >= 2:
                return False
    return True


@dataclass(frozen=True)
class EvenComponents:
    """Circuit decomposition of an edge set, or the reason it is not an even cycle."""

    circuits: tuple[tuple[int, ...], ...]
    failure: str | None = None
    where: object = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def __bool__(self):
        return self.ok


def circuit_decomposition(G: Multigraph, S: Iterable[int]) -> EvenComponents:
    """Split a 2-regular edge set into circuits (any parity)."""
    S = G.check_edges(S)
    at: dict[Vertex, list[int]] = {}
    for e in sorted(S):
        for v in G.endpoints(e):
            at.setdefault(v, []).append(e)
    for v in G.vertices:
        if v in at and len(at[v]) != 2:
            return EvenComponents((), "not 2-regular", v)
    used: set[int] = set()
    circuits = []
    for e in sorted(S):
        if e in used:
            continue
        start = G.endpoints(e)[0]
        path, cur = [e], e
        used.add(e)
        w = G.other_end(e, start)
        while w != start:
            a, b = at[w]
            cur = b if a == cur else a
            used.add(cur)
            path.append(cur)
            w = G.other_end(cur, w)
        circuits.append(tuple(path))
    return EvenComponents(tuple(circuits))


def even_components(G: Multigraph, S: Iterable[int]) -> EvenComponents:
    """Circuits of ``S`` if it is 2-regular on its support with all circuits even."""
    dec = circuit_decomposition(G, S)
    if not dec.ok:
        return dec
    for c in dec.circuits:
        if len(c) % 2:
            return EvenComponents(dec.circuits, "odd circuit", c)
    return dec

"""Slow, obviously-correct reference implementations used to check the solvers.

Each oracle takes a different route from the code under test: brute force
over edge subsets or vertex bipartitions instead of backtracking.
"""

from __future__ import annotations

import itertools

from snarkforge.graph import Multigraph, components


def naive_perfect_matchings(G: Multigraph) -> list[frozenset[int]]:
    n = G.num_vertices()
    if n % 2:
        return []
    out = []
    for combo in itertools.combinations(sorted(G.edges), n // 2):
        ends = [v for e in combo for v in G.endpoints(e)]
        if len(set(ends)) == n:
            out.append(frozenset(combo))
    return sorted(out, key=lambda m: tuple(sorted(m)))


def naive_fulkerson_cover(G: Multigraph):
    """Lex-first multiset of six perfect matchings covering each edge twice."""
    ms = naive_perfect_matchings(G)
    for combo in itertools.combinations_with_replacement(range(len(ms)), 6):
        hits = {e: 0 for e in G.edges}
        for j in combo:
            for e in ms[j]:
                hits[e] += 1
        if all(c == 2 for c in hits.values()):
            return tuple(ms[j] for j in combo)
    return None


def naive_colorable(G: Multigraph) -> bool:
    eids = sorted(G.edges)
    for colors in itertools.product((1, 2, 3), repeat=len(eids)):
        col = dict(zip(eids, colors))
        if all(len({col[e] for e in G.incident(v)}) == 3 for v in G.vertices):
            return True
    return False


def naive_bridges(G: Multigraph) -> set[int]:
    base = len(components(G))
    return {e for e in G.edges if len(components(G, [e])) > base}


def _has_cycle(G: Multigraph, side: set) -> bool:
    inner = [e for e, (u, v) in G.edges.items() if u in side and v in side]
    if not side:
        return False
    # a forest on |side| vertices with c components has |side| - c edges
    seen, comps = set(), 0
    adj = {v: [] for v in side}
    for e in inner:
        u, v = G.endpoints(e)
        adj[u].append(v)
        adj[v].append(u)
    for s in side:
        if s in seen:
            continue
        comps += 1
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return len(inner) > len(side) - comps


def naive_cyclically_4_connected(G: Multigraph) -> bool:
    """Check every vertex bipartition: a cut under 4 edges may not have circuits on both sides."""
    verts = list(G.vertices)
    first, rest = verts[0], verts[1:]
    for r in range(len(rest) + 1):
        for chosen in itertools.combinations(rest, r):
            side = {first, *chosen}
            other = set(verts) - side
            if not other:
                continue
            cut = sum(1 for u, v in G.edges.values() if (u in side) != (v in side))
            if cut < 4 and _has_cycle(G, side) and _has_cycle(G, other):
                return False
    return True


def proper(G: Multigraph, col: dict) -> bool:
    return set(col) == set(G.edges) and all(
        sorted(col[e] for e in G.incident(v)) == [1, 2, 3] for v in G.vertices)

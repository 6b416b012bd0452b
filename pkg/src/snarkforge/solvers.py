"""Exact desk-scale decision procedures on cubic multigraphs.

All searches are complete: a ``None`` from :func:`three_edge_coloring` or
:func:`find_fulkerson_cover` means the search space was exhausted.  Budgets
count search nodes, never wall-clock time, so results are reproducible.
"""

from __future__ import annotations

import itertools
import sys
from collections import deque
from dataclasses import dataclass

from .graph import GraphError, Multigraph, is_bridgeless, is_cubic

DEFAULT_CAP = 40

Coloring = dict[int, int]


class SearchLimitExceeded(RuntimeError):
    """A vertex cap or node budget stopped a search before it completed."""


@dataclass(frozen=True)
class FulkersonCover:
    """Six perfect matchings (as edge-id sets); repeats are allowed."""

    matchings: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "matchings", tuple(frozenset(m) for m in self.matchings))
        if len(self.matchings) != 6:
            raise ValueError(f"a Fulkerson cover has six matchings, got {len(self.matchings)}")

    def coverage(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for m in self.matchings:
            for e in m:
                hist[e] = hist.get(e, 0) + 1
        return hist


def _require_cubic(G: Multigraph) -> None:
    if not is_cubic(G):
        raise GraphError("input graph is not cubic")


def is_proper_coloring(G: Multigraph, col: Coloring) -> bool:
    if set(col) != set(G.edges) or any(c not in (1, 2, 3) for c in col.values()):
        return False
    for v in G.vertices:
        seen = [col[e] for e in G.incident(v)]
        if len(seen) != len(set(seen)):
            return False
    return True


def _bfs_edge_order(G: Multigraph) -> list[int]:
    order, seen_e, seen_v = [], set(), set()
    for root in G.vertices:
        if root in seen_v:
            continue
        seen_v.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for e in G.incident(v):
                if e not in seen_e:
                    seen_e.add(e)
                    order.append(e)
                w = G.other_end(e, v)
                if w not in seen_v:
                    seen_v.add(w)
                    queue.append(w)
    return order


def three_edge_coloring(G: Multigraph) -> Coloring | None:
    """A proper 3-edge-coloring (colors 1..3) or ``None`` after exhaustive search.

    Backtracks over edges in BFS order.  Whenever two edges at a vertex are
    colored the third is forced, and forced moves propagate before the next
    branch.  The three edges at the first vertex are pinned to 1, 2, 3, which
    loses no generality since colors can be permuted.
    """
    _require_cubic(G)
    eids = list(G.edges)
    if not eids:
        return {}
    index = {e: i for i, e in enumerate(eids)}
    vindex = {v: i for i, v in enumerate(G.vertices)}
    ends = [(vindex[u], vindex[w]) for u, w in (G.endpoints(e) for e in eids)]
    inc = [[index[e] for e in G.incident(v)] for v in G.vertices]
    order = [index[e] for e in _bfs_edge_order(G)]
    m = len(eids)

    color = [0] * m
    used = [0] * len(inc)  # bitmask of colors present at each vertex; color c -> bit 1 << c
    trail: list[int] = []

    def assign(e0: int, c0: int) -> bool:
        stack = [(e0, c0)]
        while stack:
            e, c = stack.pop()
            if color[e]:
                if color[e] != c:
                    return False
                continue
            bit = 1 << c
            a, b = ends[e]
            if used[a] & bit or used[b] & bit:
                return False
            color[e] = c
            used[a] |= bit
            used[b] |= bit
            trail.append(e)
            for w in (a, b):
                mask = used[w]
                if mask in (0b0110, 0b1010, 0b1100):
                    rest = (0b1110 ^ mask).bit_length() - 1
                    for f in inc[w]:
                        if not color[f]:
                            stack.append((f, rest))
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            e = trail.pop()
            bit = ~(1 << color[e])
            a, b = ends[e]
            used[a] &= bit
            used[b] &= bit
            color[e] = 0

    for c, e in enumerate(inc[0], start=1):
        if not assign(e, c):
            return None

    limit = sys.getrecursionlimit()
    if m + 100 > limit:
        sys.setrecursionlimit(m + 100)

    def search(pos: int) -> bool:
        while pos < m and color[order[pos]]:
            pos += 1
        if pos == m:
            return True
        e = order[pos]
        a, b = ends[e]
        free = 0b1110 & ~(used[a] | used[b])
        for c in (1, 2, 3):
            if not free & (1 << c):
                continue
            mark = len(trail)
            if assign(e, c) and search(pos + 1):
                return True
            undo(mark)
        return False

    if not search(0):
        return None
    return {eids[i]: color[i] for i in range(m)}


def color_classes(col: Coloring) -> dict[int, frozenset[int]]:
    return {c: frozenset(e for e, k in col.items() if k == c) for c in (1, 2, 3)}


def enumerate_perfect_matchings(G: Multigraph, cap: int = DEFAULT_CAP) -> list[frozenset[int]]:
    """Every perfect matching of ``G``, sorted by their sorted edge-id tuples."""
    if G.num_vertices() > cap:
        raise SearchLimitExceeded(f"{G.num_vertices()} vertices exceeds the cap of {cap}")
    verts = list(G.vertices)
    covered: set = set()
    chosen: list[int] = []
    out: list[frozenset[int]] = []
    incident = {v: sorted(G.incident(v)) for v in verts}

    def rec(start: int) -> None:
        while start < len(verts) and verts[start] in covered:
            start += 1
        if start == len(verts):
            out.append(frozenset(chosen))
            return
        v = verts[start]
        covered.add(v)
        for e in incident[v]:
            w = G.other_end(e, v)
            if w in covered:
                continue
            covered.add(w)
            chosen.append(e)
            rec(start + 1)
            chosen.pop()
            covered.discard(w)
        covered.discard(v)

    if len(verts) % 2 == 0:
        rec(0)
    return sorted(out, key=lambda m: tuple(sorted(m)))


def is_perfect_matching(G: Multigraph, M) -> bool:
    hits: dict = {}
    for e in M:
        if not G.has_edge(e):
            return False
        for v in G.endpoints(e):
            hits[v] = hits.get(v, 0) + 1
    return all(hits.get(v, 0) == 1 for v in G.vertices)


def is_snark(G: Multigraph) -> bool:
    _require_cubic(G)
    return is_bridgeless(G) and three_edge_coloring(G) is None


def excessive_index(G: Multigraph, limit: int = 6, cap: int = DEFAULT_CAP) -> int | None:
    """Least number of perfect matchings whose union is E(G); ``None`` if above ``limit``."""
    _require_cubic(G)
    matchings = enumerate_perfect_matchings(G, cap)
    everything = frozenset(G.edges)
    if frozenset().union(*matchings) != everything:
        return None
    for k in range(1, limit + 1):
        for combo in itertools.combinations(matchings, k):
            if frozenset().union(*combo) == everything:
                return k
    return None


def find_fulkerson_cover(G: Multigraph, budget: int = 2_000_000,
                         cap: int = DEFAULT_CAP) -> FulkersonCover | None:
    """Search six perfect matchings covering every edge exactly twice.

    Slots are filled with non-decreasing matching indices (the cover is a
    multiset).  A partial choice is abandoned as soon as some edge would be
    covered three times, or some edge still short of two cannot be reached by
    the remaining slots.  Returns ``None`` only when the search completed;
    raises :class:`SearchLimitExceeded` when ``budget`` nodes are spent.
    """
    _require_cubic(G)
    matchings = enumerate_perfect_matchings(G, cap)
    eids = list(G.edges)
    index = {e: i for i, e in enumerate(eids)}
    members = [[index[e] for e in sorted(m)] for m in matchings]
    last_with = [-1] * len(eids)
    for j, mem in enumerate(members):
        for i in mem:
            last_with[i] = j
    cov = [0] * len(eids)
    picked: list[int] = []
    nodes = 0

    def rec(start: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchLimitExceeded(f"cover search exceeded {budget} nodes")
        slots = 6 - len(picked)
        if slots == 0:
            return all(c == 2 for c in cov)
        for i, c in enumerate(cov):
            if c < 2 and (2 - c > slots or last_with[i] < start):
                return False
        for j in range(start, len(members)):
            mem = members[j]
            if any(cov[i] == 2 for i in mem):
                continue
            for i in mem:
                cov[i] += 1
            picked.append(j)
            if rec(j):
                return True
            picked.pop()
            for i in mem:
                cov[i] -= 1
        return False

    if not eids or not rec(0):
        return None
    return FulkersonCover(tuple(matchings[j] for j in picked))

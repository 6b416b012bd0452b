"""Regenerate tests/data/cubic_upto12.g6.

Samples random connected cubic graphs on 4..12 vertices and keeps one graph
per isomorphism class.  With 5000 samples per order the class counts reach
the known totals (1, 2, 5, 19, 85), so the bridgeless ones written out form
the complete list.

    python tools/gen_corpus.py 5000 tests/data/cubic_upto12.g6
"""

import sys

import networkx as nx


def invariant(g):
    prof = []
    tri = nx.triangles(g)
    for v in g:
        d = nx.single_source_shortest_path_length(g, v)
        hist = [0] * 8
        for x in d.values():
            hist[x] += 1
        prof.append((tri[v], tuple(hist)))
    return tuple(sorted(prof))


out = {}
for n in (4, 6, 8, 10, 12):
    reps = {}
    tries = int(sys.argv[1])
    for seed in range(tries):
        g = nx.random_regular_graph(3, n, seed=seed)
        if not nx.is_connected(g):
            continue
        bucket = reps.setdefault(invariant(g), [])
        if not any(nx.vf2pp_is_isomorphic(g, r) for r in bucket):
            bucket.append(g)
    allg = [g for b in reps.values() for g in b]
    print(n, "connected", len(allg), "bridgeless", sum(1 for g in allg if not nx.has_bridges(g)), flush=True)
    out[n] = allg
with open(sys.argv[2], "w") as f:
    for n in out:
        lines = sorted(nx.to_graph6_bytes(nx.convert_node_labels_to_integers(g), header=False).decode().strip()
                       for g in out[n] if not nx.has_bridges(g))
        for line in lines:
            f.write(line + "\n")

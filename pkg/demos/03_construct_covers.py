"""
Building Fulkerson covers block by block
========================================

``construct_cover`` picks a certificate for each base graph, glues them into
a certificate of the composed graph, verifies it and lifts it to six perfect
matchings.  No search runs on the composed graph (except for k = 2).
"""

import json

from snarkforge import PortedGraph, builtin, construct_cover, default_ports, find_fulkerson_cover
from snarkforge.fulkerson import verify_cover

covers = {name: find_fulkerson_cover(builtin(name)) for name in ("petersen", "k4")}


def run(names, constructive=False):
    bases = [PortedGraph(builtin(n), **default_ports(n)) for n in names]
    return construct_cover(bases, [covers[n] for n in names], constructive=constructive)


for k in (3, 4, 5, 6):
    res = run(["petersen"] * k)
    print(f"k={k}: {res.graph.num_vertices()} vertices, modes={res.report.modes}, "
          f"cycle lengths={res.report.circuit_lengths}, cover ok={verify_cover(res.graph, res.cover).ok}")

# %%
# The constructive path colors the suppressed graphs from assembled
# 2-factors instead of calling the solver.
res = run(["petersen", "petersen", "k4", "petersen", "k4"], constructive=True)
print(json.dumps([(s.name, s.ok) for s in res.report.stages]))

# %%
# Which gadget vertices lie on the cycle E0 u E2.  For odd k, c0 and every b_j
# stay off it.
print(res.report.on_cycle)

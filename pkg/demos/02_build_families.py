"""
Composing base graphs into families
===================================

Each base graph loses its designated edge xy and the two endpoints; the rest
(a block) is wired to gadget vertices a_j, b_j, c_j and a chain of v_j.
"""

from snarkforge import PortedGraph, build_family, builtin, default_ports
from snarkforge.family import adjacency_violations, expected_size
from snarkforge.graph import is_bridgeless, is_cubic
from snarkforge.io import family_to_doc, to_dot
from snarkforge.solvers import three_edge_coloring


def base(name):
    return PortedGraph(builtin(name), **default_ports(name))


for k in range(2, 7):
    G, D = build_family([base("petersen")] * k)
    print(f"k={k}: |V|={G.num_vertices()} (12k-2 = {12 * k - 2}), cubic={is_cubic(G)}, "
          f"bridgeless={is_bridgeless(G)}, contract ok={not adjacency_violations(G, D)}")

# %%
# Mixed bases work the same way.
bases = [base(n) for n in ("petersen", "k4", "prism")]
G, D = build_family(bases)
print("mixed:", (G.num_vertices(), G.num_edges()), "expected", expected_size(bases))

# %%
# Three Petersen blocks give a 34-vertex graph that is still not
# 3-edge-colorable; the search below runs to completion.
G3, D3 = build_family([base("petersen")] * 3)
print("k=3 all-Petersen colorable:", three_edge_coloring(G3) is not None)

# %%
# DOT output labels the gadget vertices.
dot = to_dot(G3, family_to_doc(G3, D3)["landmarks"])
print("\n".join(dot.splitlines()[:6]), "\n...")

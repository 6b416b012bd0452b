"""
Petersen graph: from a Fulkerson cover to certificates and back
================================================================

The Petersen graph has exactly six perfect matchings, and together they cover
every edge twice.  Choosing three of the six and counting how often each edge
is hit gives a certificate (E0, E2).  Lifting the certificate rebuilds a cover.
"""

from collections import Counter

from snarkforge import builtin, find_fulkerson_cover, is_snark
from snarkforge.fulkerson import ALL_TRIPLES, extract_certificate, lift_certificate, verify_certificate, verify_cover
from snarkforge.solvers import enumerate_perfect_matchings, excessive_index

G = builtin("petersen")
print("snark:", is_snark(G))
print("perfect matchings:", len(enumerate_perfect_matchings(G)))
print("excessive index:", excessive_index(G))

cover = find_fulkerson_cover(G)
print("cover verified:", verify_cover(G, cover).ok)

# %%
# Every one of the 20 triples gives a certificate.  E0 and E2 have the same
# size, and their union is an even cycle.
for triple in ALL_TRIPLES[:5]:
    cert = extract_certificate(G, cover, triple)
    rep = verify_certificate(G, cert)
    print(triple, "|E0| =", len(cert.e0), "|E2| =", len(cert.e2), "ok =", rep.ok)

# %%
# Lift one certificate.  The first three matchings cover E0 zero times and E2
# twice; the last three do the opposite.  Every edge ends up covered twice.
rep = verify_certificate(G, extract_certificate(G, cover, (0, 1, 2)))
lifted = lift_certificate(G, rep)
print("lifted cover coverage:", Counter(verify_cover(G, lifted).histogram.values()))

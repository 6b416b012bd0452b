"""Fulkerson covers for cubic graph families built from base graphs.

The package builds the composed graphs, assembles (E0, E2) certificates for
them block by block, lifts certificates to six perfect matchings and checks
every result with exact solvers.
"""

from .family import FamilyDescriptor, PortedGraph, build_family, ported
from .fulkerson import Certificate, extract_certificate, lift_certificate, verify_certificate, verify_cover
from .graph import Multigraph, make_graph, suppress
from .named import builtin, default_ports
from .solvers import FulkersonCover, find_fulkerson_cover, is_snark, three_edge_coloring
from .theorems import construct_cover

__all__ = [
    "Certificate", "FamilyDescriptor", "FulkersonCover", "Multigraph", "PortedGraph",
    "build_family", "builtin", "construct_cover", "default_ports", "extract_certificate",
    "find_fulkerson_cover", "is_snark", "lift_certificate", "make_graph", "ported",
    "suppress", "three_edge_coloring", "verify_certificate", "verify_cover",
]
__version__ = "0.1.0"

"""Builtin base graphs with their default port selections."""

from __future__ import annotations

from .graph import Multigraph, make_graph

PETERSEN_EDGES = [
    (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),  # outer 5-circuit
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),  # spokes
    (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),  # inner pentagram
]
K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
PRISM_EDGES = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]

# name -> (n, edge list, (x, y, x0, x1, y0, y1))
_BUILTINS = {
    "petersen": (10, PETERSEN_EDGES, (0, 1, 4, 5, 2, 6)),
    "k4": (4, K4_EDGES, (0, 1, 2, 3, 2, 3)),
    "prism": (6, PRISM_EDGES, (0, 3, 1, 2, 4, 5)),
}

BUILTIN_NAMES = tuple(_BUILTINS)


def _build(name: str) -> Multigraph:
    n, pairs, _ = _BUILTINS[name]
    return make_graph([str(i) for i in range(n)], [(str(u), str(v)) for u, v in pairs])


def petersen() -> Multigraph:
    return _build("petersen")


def k4() -> Multigraph:
    return _build("k4")


def prism() -> Multigraph:
    return _build("prism")


def builtin(name: str) -> Multigraph:
    if name not in _BUILTINS:
        raise KeyError(f"unknown builtin graph {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    return _build(name)


def default_ports(name: str) -> dict[str, str]:
    """Default ``x, y, x0, x1, y0, y1`` vertex ids for a builtin graph."""
    if name not in _BUILTINS:
        raise KeyError(f"unknown builtin graph {name!r}")
    labels = ("x", "y", "x0", "x1", "y0", "y1")
    return {k: str(v) for k, v in zip(labels, _BUILTINS[name][2])}

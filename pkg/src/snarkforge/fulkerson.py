"""Certificates of the form (E0, E2) and their correspondence with Fulkerson covers.

A certificate is a pair of disjoint matchings whose union is an even cycle
such that deleting either one and suppressing degree-2 vertices leaves a
3-edge-colorable cubic graph.  Covers give certificates by counting how often
three of the six matchings hit each edge; certificates give covers back via
:func:`lift_certificate`.

When every vertex of a component of ``G - E0`` lies on the cycle, that
component is a circuit with no vertex left to keep.  Such circuits are kept
in :attr:`SuppressionResult.circuits` and take a single color of their own.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass, field

from .graph import (
    GraphError,
    Multigraph,
    SuppressionError,
    SuppressionResult,
    Vertex,
    even_components,
    is_cubic,
    suppress,
)
from .solvers import (
    Coloring,
    FulkersonCover,
    color_classes,
    is_perfect_matching,
    is_proper_coloring,
    three_edge_coloring,
)

CIRCUIT_COLOR = 1
ALL_TRIPLES = tuple(itertools.combinations(range(6), 3))


class CertificateError(ValueError):
    pass


class LiftError(RuntimeError):
    """The lift produced something that is not a Fulkerson cover (a defect)."""


@dataclass(frozen=True)
class Certificate:
    e0: frozenset[int]
    e2: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "e0", frozenset(self.e0))
        object.__setattr__(self, "e2", frozenset(self.e2))

    @property
    def cycle(self) -> frozenset[int]:
        return self.e0 | self.e2

    def to_json(self) -> dict:
        return {"e0": sorted(self.e0), "e2": sorted(self.e2)}

    @classmethod
    def from_json(cls, doc: dict) -> Certificate:
        return cls(frozenset(doc["e0"]), frozenset(doc["e2"]))


@dataclass(frozen=True)
class CoverReport:
    ok: bool
    reason: str | None
    histogram: dict[int, int]

    def __bool__(self):
        return self.ok


@dataclass
class CertificateReport:
    ok: bool
    reason: str | None = None
    certificate: Certificate | None = None
    coloring0: Coloring | None = None
    coloring2: Coloring | None = None
    suppression0: SuppressionResult | None = None
    suppression2: SuppressionResult | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        doc = {"verdict": "pass" if self.ok else "fail", "reason": self.reason}
        if self.certificate is not None:
            doc["certificate"] = self.certificate.to_json()
        for side, col, sup in (("0", self.coloring0, self.suppression0),
                               ("2", self.coloring2, self.suppression2)):
            if col is not None:
                doc[f"coloring{side}"] = {str(e): c for e, c in sorted(col.items())}
            if sup is not None:
                doc[f"suppression{side}"] = {
                    "vertices": [str(v) for v in sup.suppressed.vertices],
                    "paths": {str(f): list(p) for f, p in sup.path_map.items()},
                    "circuits": [list(c) for c in sup.circuits],
                }
        return doc


@dataclass(frozen=True)
class TwoFactor:
    members: frozenset[int]
    even: bool = field(default=False)


def verify_cover(G: Multigraph, cover: FulkersonCover) -> CoverReport:
    hist = {e: 0 for e in G.edges}
    for i, M in enumerate(cover.matchings):
        if not is_perfect_matching(G, M):
            return CoverReport(False, f"matching {i} is not a perfect matching", hist)
        for e in M:
            hist[e] += 1
    bad = [e for e, c in hist.items() if c != 2]
    if bad:
        return CoverReport(False, f"edge {bad[0]} covered {hist[bad[0]]} times", hist)
    return CoverReport(True, None, hist)


def _check_triple(triple) -> tuple[int, int, int]:
    t = tuple(triple)
    if len(t) != 3 or len(set(t)) != 3 or not all(0 <= s < 6 for s in t):
        raise CertificateError(f"triple must be three distinct slots in 0..5, got {t}")
    return t


def extract_certificate(G: Multigraph, cover: FulkersonCover, triple) -> Certificate:
    """E2 = edges hit twice by the chosen three matchings, E0 = edges not hit."""
    triple = _check_triple(triple)
    report = verify_cover(G, cover)
    if not report:
        raise CertificateError(f"unverified cover: {report.reason}")
    hits = {e: 0 for e in G.edges}
    for s in triple:
        for e in cover.matchings[s]:
            hits[e] += 1
    return Certificate(frozenset(e for e, c in hits.items() if c == 0),
                       frozenset(e for e, c in hits.items() if c == 2))


def _is_matching(G: Multigraph, S: Iterable[int]) -> bool:
    seen: set = set()
    for e in S:
        for v in G.endpoints(e):
            if v in seen:
                return False
            seen.add(v)
    return True


def verify_certificate(G: Multigraph, cert: Certificate,
                       colorings: tuple[Coloring, Coloring] | None = None) -> CertificateReport:
    """Check a certificate cheapest-first and report the first failure.

    Colorings of the two suppressed graphs come from the exact solver unless
    ``colorings`` is given, in which case they are only checked for properness.
    """
    if not is_cubic(G):
        return CertificateReport(False, "host graph is not cubic")
    try:
        e0 = G.check_edges(cert.e0)
        e2 = G.check_edges(cert.e2)
    except GraphError as exc:
        return CertificateReport(False, str(exc))
    if e0 & e2:
        return CertificateReport(False, "not disjoint")
    if not _is_matching(G, e0):
        return CertificateReport(False, "e0 is not a matching")
    if not _is_matching(G, e2):
        return CertificateReport(False, "e2 is not a matching")
    dec = even_components(G, e0 | e2)
    if not dec:
        return CertificateReport(False, f"union is not an even cycle: {dec.failure}")

    sups = []
    for label, Y in (("e0", e0), ("e2", e2)):
        try:
            sups.append(suppress(G, Y, allow_circuits=True))
        except SuppressionError as exc:
            return CertificateReport(False, f"suppression of G - {label} failed: {exc}")
    cols = []
    for i, (label, sup) in enumerate(zip(("e0", "e2"), sups)):
        if colorings is None:
            col = three_edge_coloring(sup.suppressed)
            if col is None:
                return CertificateReport(False, f"suppressed G - {label} is not 3-edge-colorable",
                                         suppression0=sups[0], suppression2=sups[1])
        else:
            col = colorings[i]
            if not is_proper_coloring(sup.suppressed, col):
                return CertificateReport(False, f"supplied coloring for G - {label} is not proper",
                                         suppression0=sups[0], suppression2=sups[1])
        cols.append(col)
    return CertificateReport(True, None, Certificate(e0, e2), cols[0], cols[1], sups[0], sups[1])


def alternation_violations(sup: SuppressionResult, other: frozenset[int]) -> list[str]:
    """Mapped paths of ``G - E`` must alternate plain/``other`` edges.

    Paths start and end with a plain edge and therefore have odd length;
    circuit components alternate and have even length.
    """
    problems = []
    for f, path in sup.path_map.items():
        if len(path) % 2 == 0:
            problems.append(f"path {f} has even length {len(path)}")
            continue
        for pos, e in enumerate(path):
            if (e in other) != (pos % 2 == 1):
                problems.append(f"path {f} breaks alternation at edge {e}")
                break
    for c in sup.circuits:
        if len(c) % 2:
            problems.append(f"circuit {c} has odd length")
            continue
        parity = c[0] in other
        for pos, e in enumerate(c):
            if (e in other) != (parity ^ (pos % 2 == 1)):
                problems.append(f"circuit {c} breaks alternation at edge {e}")
                break
    return problems


def _pull_back(sup: SuppressionResult, col: Coloring, other: frozenset[int]) -> list[frozenset[int]]:
    classes = []
    for c in (1, 2, 3):
        M: set[int] = set()
        for f, path in sup.path_map.items():
            keep_plain = col[f] == c
            M.update(e for e in path if (e in other) != keep_plain)
        for circ in sup.circuits:
            keep_plain = CIRCUIT_COLOR == c
            M.update(e for e in circ if (e in other) != keep_plain)
        classes.append(frozenset(M))
    return classes


def lift_certificate(G: Multigraph, report: CertificateReport) -> FulkersonCover:
    """Turn a passing certificate report into six perfect matchings.

    For color ``c`` of the coloring of ``G - E0`` suppressed: suppressed edges
    colored ``c`` contribute the plain edges of their paths, the others their
    E2 edges.  The second triple is the same construction on ``G - E2``.
    """
    if not report.ok:
        raise CertificateError(f"certificate did not verify: {report.reason}")
    sup0, sup2 = report.suppression0, report.suppression2
    e0, e2 = report.certificate.e0, report.certificate.e2
    for label, sup, other in (("e0", sup0, e2), ("e2", sup2, e0)):
        problems = alternation_violations(sup, other)
        if problems:
            raise CertificateError(f"invalid certificate ({label} side): {problems[0]}")

    matchings = _pull_back(sup0, report.coloring0, e2) + _pull_back(sup2, report.coloring2, e0)
    cover = FulkersonCover(tuple(matchings))
    _check_lift(G, cover, e0, e2)
    return cover


def _check_lift(G: Multigraph, cover: FulkersonCover, e0: frozenset[int], e2: frozenset[int]) -> None:
    for i, M in enumerate(cover.matchings):
        if not is_perfect_matching(G, M):
            raise LiftError(f"lift postcondition violated: matching {i} is not perfect")
    for e in G.edges:
        first = sum(e in M for M in cover.matchings[:3])
        second = sum(e in M for M in cover.matchings[3:])
        want = (0, 2) if e in e0 else (2, 0) if e in e2 else (1, 1)
        if (first, second) != want:
            raise LiftError(f"lift postcondition violated at edge {e}: coverage {(first, second)}")


@dataclass(frozen=True)
class Normalization:
    """A triple chosen for a designated edge xy and the resulting port roles."""

    triple: tuple[int, int, int]
    certificate: Certificate
    roles: dict[str, Vertex]


def _roles_for(G: Multigraph, xy: int, x: Vertex) -> tuple[Vertex, Vertex, list[Vertex], list[Vertex]]:
    a, b = G.endpoints(xy)
    if x is None:
        x = a
    if x not in (a, b):
        raise GraphError(f"{x!r} is not an endpoint of edge {xy}")
    y = b if x == a else a
    xs = [G.other_end(e, x) for e in G.incident(x) if e != xy]
    ys = [G.other_end(e, y) for e in G.incident(y) if e != xy]
    if len(xs) != 2 or len(ys) != 2:
        raise GraphError(f"endpoints of edge {xy} must have degree 3")
    return x, y, xs, ys


def qualifying_triples(G: Multigraph, cover: FulkersonCover, xy: int, mode: str, x: Vertex = None):
    """Yield every :class:`Normalization` for ``xy`` in triple order.

    ``through``: xy in E2, and the neighbor of x (of y) joined by an E0 edge
    is reported as role ``x0`` (``y0``).  ``avoid``: neither end of xy lies on
    the cycle; roles keep the current neighbor order.
    """
    if mode not in ("through", "avoid"):
        raise ValueError(f"mode must be 'through' or 'avoid', got {mode!r}")
    x, y, xs, ys = _roles_for(G, xy, x)
    ends = {x, y}
    for triple in ALL_TRIPLES:
        cert = extract_certificate(G, cover, triple)
        if mode == "avoid":
            touched = {v for e in cert.cycle for v in G.endpoints(e)}
            if touched & ends:
                continue
            yield Normalization(triple, cert, {"x": x, "y": y, "x0": xs[0], "x1": xs[1],
                                               "y0": ys[0], "y1": ys[1]})
            continue
        if xy not in cert.e2:
            continue
        roles = {"x": x, "y": y}
        for end, nbrs, key in ((x, xs, "x"), (y, ys, "y")):
            zero = [e for e in G.incident(end) if e in cert.e0]
            if len(zero) != 1:
                break
            first = G.other_end(zero[0], end)
            roles[key + "0"] = first
            roles[key + "1"] = nbrs[1] if nbrs[0] == first else nbrs[0]
        else:
            yield Normalization(triple, cert, roles)


def normalize_certificate(G: Multigraph, cover: FulkersonCover, xy: int, mode: str,
                          x: Vertex = None) -> Normalization:
    for norm in qualifying_triples(G, cover, xy, mode, x):
        return norm
    raise CertificateError(f"no triple qualifies for edge {xy} in mode {mode!r}")


def two_factor_to_coloring(G: Multigraph, F: Iterable[int]) -> Coloring:
    """Alternate colors 1, 2 around each circuit of an even 2-factor; the rest get 3."""
    F = G.check_edges(F)
    dec = even_components(G, F)
    if not dec:
        raise GraphError(f"not an even 2-factor: {dec.failure}")
    on = {v for e in F for v in G.endpoints(e)}
    if len(on) != G.num_vertices():
        raise GraphError("not an even 2-factor: not spanning")
    col = {e: 3 for e in G.edges}
    for circ in dec.circuits:
        for pos, e in enumerate(circ):
            col[e] = 1 + pos % 2
    if not is_proper_coloring(G, col):
        raise GraphError("complement of the 2-factor is not a perfect matching")
    return col


def coloring_to_two_factor(G: Multigraph, col: Coloring, must_contain: Iterable[int] = (),
                           must_avoid: Iterable[int] = ()) -> TwoFactor | None:
    """First union of two color classes meeting the constraints, or ``None``."""
    if not is_proper_coloring(G, col):
        raise GraphError("improper coloring")
    need = frozenset(must_contain)
    ban = frozenset(must_avoid)
    classes = color_classes(col)
    for a, b in ((1, 2), (1, 3), (2, 3)):
        F = classes[a] | classes[b]
        if need <= F and not (ban & F):
            return TwoFactor(F, bool(even_components(G, F)))
    return None

"""Explicit Berge-Fulkerson certificates for composed families.

For every block a triple of its cover is picked by parity of the block index:
*through* blocks carry ``x_i y_i`` in ``E_i^2`` with ``x_i x_i^0`` and
``y_i y_i^0`` in ``E_i^0``; *avoid* blocks keep ``x_i`` and ``y_i`` off the
cycle.  Even k uses avoid for even i and through for odd i; odd k additionally
makes block 0 a through block.  The per-block sets are then glued together
with fixed gadget and chain edges into a global certificate ``(E0, E2)``,
which :func:`construct_cover` verifies and lifts to six perfect matchings.

The gluing is written in terms of landmark vertices ``u_i^j``: the far ends
of the suppressed edges that pass through (or leave from) ``x_i`` and ``y_i``
in the two suppressed block graphs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .family import FamilyDescriptor, PortedGraph, build_family, map_block_edges
from .fulkerson import (
    Certificate,
    CertificateError,
    CertificateReport,
    coloring_to_two_factor,
    lift_certificate,
    qualifying_triples,
    two_factor_to_coloring,
    verify_certificate,
    verify_cover,
)
from .graph import GraphError, Multigraph, SuppressionResult, Vertex, even_components, suppress
from .solvers import FulkersonCover, find_fulkerson_cover


class AssemblyError(RuntimeError):
    """A formula term or glued 2-factor does not fit the composed graph."""


class PipelineError(RuntimeError):
    """A pipeline stage failed; ``report`` holds the stages run so far."""

    def __init__(self, stage: str, message: str, report=None):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.message = message
        self.report = report


def block_mode(k: int, i: int) -> str:
    if k % 2 == 0:
        return "avoid" if i % 2 == 0 else "through"
    return "through" if i == 0 or i % 2 == 1 else "avoid"


@dataclass
class BlockPlan:
    index: int
    mode: str
    triple: tuple[int, int, int]
    ported: PortedGraph
    certificate: Certificate
    report: CertificateReport
    landmarks: dict | None = None

    def suppression(self, side: str) -> SuppressionResult:
        return self.report.suppression0 if side == "E0" else self.report.suppression2

    def coloring(self, side: str):
        return self.report.coloring0 if side == "E0" else self.report.coloring2


@dataclass
class BlockCertificatePlan:
    k: int
    blocks: list[BlockPlan]

    @property
    def modes(self) -> tuple[str, ...]:
        return tuple(bp.mode for bp in self.blocks)

    def ports(self) -> list[PortedGraph]:
        return [bp.ported for bp in self.blocks]


def _far_end(sup: SuppressionResult, e: int, near: Vertex) -> tuple[int, Vertex]:
    """Suppressed edge containing ``e`` and its end reached by leaving ``near`` through ``e``."""
    f = sup.edge_owner()[e]
    path, walk = sup.path_map[f], sup.vertex_paths[f]
    p = path.index(e)
    return f, (walk[-1] if walk[p] == near else walk[0])


def block_landmarks(bp: BlockPlan) -> dict:
    """Resolve ``u_i^j`` for one block.

    Returns ``{"u": {j: vertex}, "edges": {name: suppressed edge-id}}`` and
    raises :class:`AssemblyError` when a landmark would coincide with
    ``x_i``/``y_i``, two through-paths merge, or ``x_i``/``y_i`` lie on a circuit component.
    """
    P = bp.ported
    G = P.graph
    x, y = P.x, P.y
    s0, s2 = bp.report.suppression0, bp.report.suppression2
    if {x, y} & {v for sup in (s0, s2) for c in sup.circuits for e in c for v in G.endpoints(e)}:
        raise AssemblyError(f"block {bp.index}: x or y lies on a circuit component")
    edge = lambda u, w: G.edges_between(u, w)[0]  # noqa: E731
    u, named = {}, {}
    if bp.mode == "through":
        named["e01"], u[1] = _far_end(s0, P.xy, y)
        _, u[0] = _far_end(s0, P.xy, x)
        named["e23"], u[3] = _far_end(s2, edge(x, P.x0), P.x0)
        _, u[2] = _far_end(s2, edge(x, P.x0), x)
        named["e45"], u[4] = _far_end(s2, edge(y, P.y0), P.y0)
        _, u[5] = _far_end(s2, edge(y, P.y0), y)
        if named["e23"] == named["e45"]:
            raise AssemblyError(f"block {bp.index}: the paths through x and y coincide")
    else:
        for sup, base in ((s2, 0), (s0, 4)):
            for j, (end, role) in enumerate(((x, "x1"), (x, "x0"), (y, "y1"), (y, "y0"))):
                named[f"e{base + j}"], u[base + j] = _far_end(sup, edge(end, P.port(role)), end)
    if {x, y} & set(u.values()):
        raise AssemblyError(f"block {bp.index}: a landmark coincides with x or y")
    return {"u": u, "edges": named}


def plan_block_certificates(bases: list[PortedGraph], covers: list[FulkersonCover]) -> BlockCertificatePlan:
    """Pick per-block triples by parity and relabel ports to match.

    Among qualifying triples the first whose landmarks resolve cleanly is
    preferred, so the constructive 2-factor path stays available.
    """
    k = len(bases)
    if len(covers) != k:
        raise ValueError("need one cover per base graph")
    if k == 1:
        return BlockCertificatePlan(1, [])
    blocks = []
    for i, (P, cover) in enumerate(zip(bases, covers)):
        mode = block_mode(k, i)
        fallback = None
        chosen = None
        for norm in qualifying_triples(P.graph, cover, P.xy, mode, P.x):
            report = verify_certificate(P.graph, norm.certificate)
            if not report:
                raise CertificateError(
                    f"anomaly: block {i} triple {norm.triple} gives a failing certificate: {report.reason}")
            bp = BlockPlan(i, mode, norm.triple, P.with_roles(norm.roles), norm.certificate, report)
            fallback = fallback or bp
            try:
                bp.landmarks = block_landmarks(bp)
            except AssemblyError:
                continue
            chosen = bp
            break
        if fallback is None:
            raise CertificateError(f"anomaly: no triple qualifies for block {i} in mode {mode!r}")
        blocks.append(chosen or fallback)
    return BlockCertificatePlan(k, blocks)


# Landmark specs: ("a"|"b"|"c"|"v", j), ("port", i, role), ("u", i, j).

def _gadget_terms(k: int) -> tuple[list, list]:
    A = lambda j: ("a", j % k)  # noqa: E731
    C = lambda j: ("c", j)  # noqa: E731
    V = lambda j: ("v", j)  # noqa: E731
    X0 = lambda i: ("port", i % k, "x0")  # noqa: E731
    Y0 = lambda i: ("port", i % k, "y0")  # noqa: E731
    if k % 2 == 0:
        e0 = [(A(i), C(i)) for i in range(2, k)]
        e0 += [(V(2 * j - 1), V(2 * j)) for j in range(1, (k - 4) // 2 + 1)]
        e0 += [(C(0), V(k - 3)), (C(1), V(0)), (Y0(1), A(1)), (X0(1), A(0))]
        e2 = []
        for j in range(1, (k - 2) // 2 + 1):
            e2 += [(Y0(2 * j + 1), A(2 * j + 1)), (X0(2 * j + 1), A(2 * j))]
        e2 += [(V(i - 2), C(i)) for i in range(2, k)]
        e2 += [(A(0), C(0)), (A(1), C(1))]
    else:
        e0 = [(Y0(1), A(1)), (X0(1), A(0)), (C(1), V(0))]
        e0 += [(A(i), C(i)) for i in range(2, k)]
        e0 += [(V(2 * j + 1), V(2 * j + 2)) for j in range(0, (k - 5) // 2 + 1)]
        e2 = [(A(1), C(1))]
        for i in range(1, (k - 1) // 2 + 1):
            # at 2i+1 = k the indices wrap to block 0
            e2 += [(A(2 * i), X0(2 * i + 1)), (A(2 * i + 1), Y0(2 * i + 1))]
        e2 += [(V(i - 2), C(i)) for i in range(2, k)]
    return e0, e2


def _link_terms(k: int, side: str) -> list:
    U = lambda i, j: ("u", i % k, j)  # noqa: E731
    B = lambda j: ("b", j % k)  # noqa: E731
    c0 = ("c", 0)
    L = []
    if k % 2 == 0 and side == "e0":
        L += [(B(0), U(0, 3)), (B(0), U(0, 2)), (B(1), U(2, 0)), (B(1), U(2, 1))]
        for j in range(1, (k - 2) // 2 + 1):
            L += [(B(2 * j), U(2 * j + 1, 3)), (B(2 * j), U(2 * j, 2)), (U(2 * j, 3), U(2 * j + 1, 2)),
                  (B(2 * j + 1), U(2 * j + 1, 4)), (B(2 * j + 1), U(2 * j + 2, 0)),
                  (U(2 * j + 1, 5), U(2 * j + 2, 1))]
    elif k % 2 == 0:
        L += [(B(0), U(0, 6)), (B(0), U(1, 3)), (U(0, 7), U(1, 2)),
              (B(1), U(1, 4)), (U(1, 5), U(2, 5)), (B(1), U(2, 4))]
        for j in range(1, (k - 2) // 2 + 1):
            L += [(U(2 * j, 6), B(2 * j)), (U(2 * j, 7), B(2 * j)),
                  (U(2 * j + 2, 4), B(2 * j + 1)), (U(2 * j + 2, 5), B(2 * j + 1))]
    elif side == "e0":
        for j in range(1, (k - 1) // 2 + 1):
            L += [(B(2 * j), U(2 * j + 1, 3)), (B(2 * j), U(2 * j, 2)), (U(2 * j, 3), U(2 * j + 1, 2))]
        for j in range(1, (k - 3) // 2 + 1):
            L += [(B(2 * j + 1), U(2 * j + 1, 4)), (B(2 * j + 1), U(2 * j + 2, 0)),
                  (U(2 * j + 1, 5), U(2 * j + 2, 1))]
        L += [(B(0), U(0, 4)), (B(1), U(2, 0)), (B(1), U(2, 1)), (B(0), c0), (U(0, 5), c0)]
    else:
        for j in range(1, (k - 1) // 2 + 1):
            L += [(U(2 * j, 6), B(2 * j)), (U(2 * j, 7), B(2 * j))]
        for j in range(1, (k - 3) // 2 + 1):
            L += [(U(2 * j + 2, 4), B(2 * j + 1)), (U(2 * j + 2, 5), B(2 * j + 1))]
        L += [(c0, U(1, 2)), (B(0), c0), (B(0), U(1, 3)), (U(1, 5), U(2, 5)), (U(1, 4), B(1)), (U(2, 4), B(1))]
    return L


def _resolve(D: FamilyDescriptor, plan: BlockCertificatePlan, spec) -> Vertex:
    kind = spec[0]
    if kind in ("a", "b", "c", "v"):
        return getattr(D, kind)[spec[1]]
    if kind == "port":
        return D.blocks[spec[1]].port_vertex(spec[2])
    _, i, j = spec
    marks = plan.blocks[i].landmarks or block_landmarks(plan.blocks[i])
    if j not in marks["u"]:
        raise AssemblyError(f"landmark u_{i}^{j} is not defined for a {plan.blocks[i].mode} block")
    return D.blocks[i].image(marks["u"][j])


def _single_edge(G: Multigraph, p: Vertex, q: Vertex, term) -> int:
    found = G.edges_between(p, q)
    if len(found) != 1:
        raise AssemblyError(f"assembly mismatch: term {term} names {len(found)} edges")
    return found[0]


def _block_contribution(bp: BlockPlan, which: str) -> frozenset[int]:
    """``E_i^2 - x_i y_i`` or ``E_i^0 - {x_i x_i^0, y_i y_i^0}`` (vacuous for avoid blocks)."""
    P = bp.ported
    G = P.graph
    if which == "E2":
        S = set(bp.certificate.e2) - {P.xy}
    else:
        S = set(bp.certificate.e0)
        S -= set(G.edges_between(P.x, P.x0)) | set(G.edges_between(P.y, P.y0))
    return frozenset(S)


def _side_of_block(i: int, side: str) -> str:
    # block 1 keeps its roles, every other block swaps E0 and E2
    return ("E0" if side == "e0" else "E2") if i == 1 else ("E2" if side == "e0" else "E0")


def assemble_certificate(G: Multigraph, D: FamilyDescriptor, plan: BlockCertificatePlan) -> Certificate:
    k = D.k
    if k < 3:
        raise ValueError("explicit certificates need k >= 3; use the search fallback for k = 2")
    if plan.k != k:
        raise AssemblyError("plan and family sizes differ")
    sets = {"e0": set(), "e2": set()}
    for i, bp in enumerate(plan.blocks):
        for side in ("e0", "e2"):
            part = _block_contribution(bp, _side_of_block(i, side))
            sets[side] |= map_block_edges(D, i, part)
    terms0, terms2 = _gadget_terms(k)
    for side, terms in (("e0", terms0), ("e2", terms2)):
        for term in terms:
            p, q = (_resolve(D, plan, s) for s in term)
            sets[side].add(_single_edge(G, p, q, term))
    return Certificate(frozenset(sets["e0"]), frozenset(sets["e2"]))


@dataclass(frozen=True)
class GlobalTwoFactor:
    suppression: SuppressionResult
    members: frozenset[int]
    block_factors: dict[int, frozenset[int]]


def _block_constraints(bp: BlockPlan, bside: str) -> tuple[set[int], set[int]]:
    named = bp.landmarks["edges"]
    if bp.mode == "through":
        if bside == "E0":
            return set(), {named["e01"]}
        return {named["e23"], named["e45"]}, set()
    base = 0 if bside == "E2" else 4
    return {named[f"e{base + j}"] for j in range(4)}, set()


def assemble_two_factor(G: Multigraph, D: FamilyDescriptor, plan: BlockCertificatePlan,
                        cert: Certificate, side: str) -> GlobalTwoFactor:
    """Glue block 2-factors and link edges into an even 2-factor of the suppressed graph."""
    if side not in ("e0", "e2"):
        raise ValueError("side must be 'e0' or 'e2'")
    sup = suppress(G, cert.e0 if side == "e0" else cert.e2, allow_circuits=True)
    S = sup.suppressed
    owner = sup.edge_owner()
    pieces: set[int] = set()
    block_factors = {}
    for i, bp in enumerate(plan.blocks):
        if bp.landmarks is None:
            bp.landmarks = block_landmarks(bp)
        bside = _side_of_block(i, side)
        bsup, bcol = bp.suppression(bside), bp.coloring(bside)
        need, ban = _block_constraints(bp, bside)
        F = coloring_to_two_factor(bsup.suppressed, bcol, need, ban)
        if F is None or not F.even:
            raise AssemblyError(f"block {i}: no even 2-factor satisfies the constraints")
        block_factors[i] = F.members
        ends = {bp.ported.x, bp.ported.y}
        blk = D.blocks[i]
        for f in F.members:
            if ends & set(bsup.vertex_paths[f]):
                continue
            image = [blk.edge_image[e] for e in bsup.path_map[f]]
            g = owner.get(image[0])
            if g is None or set(sup.path_map[g]) != set(image):
                raise AssemblyError(f"block {i}: suppressed edge {f} has no matching composed edge")
            pieces.add(g)
    chosen = set(pieces)
    for term in _link_terms(D.k, side):
        p, q = (_resolve(D, plan, s) for s in term)
        free = [f for f in S.edges_between(p, q) if f not in chosen]
        if not free:
            raise AssemblyError(f"assembly mismatch: link {term} is not a free suppressed edge")
        chosen.add(free[0])
    dec = even_components(S, chosen)
    spanned = {v for f in chosen for v in S.endpoints(f)}
    if not dec or len(spanned) != S.num_vertices():
        why = dec.failure or "not spanning"
        raise AssemblyError(f"assembly mismatch: glued {side} 2-factor fails ({why})")
    return GlobalTwoFactor(sup, frozenset(chosen), block_factors)


def expected_cycle_landmarks(D: FamilyDescriptor) -> tuple[set, set]:
    """(vertices that must lie on E0 u E2, gadget vertices that must not)."""
    if D.k % 2 == 0:
        on = set(D.a) | set(D.c) | set(D.v)
        off = set(D.b)
    else:
        on = set(D.a) | set(D.c[1:]) | set(D.v)
        off = set(D.b) | {D.c[0]}
    return on, off


def landmark_membership(G: Multigraph, D: FamilyDescriptor, cert: Certificate) -> dict[str, list]:
    touched = {v for e in cert.cycle for v in G.endpoints(e)}
    return {name: [v for v in vs if v in touched] for name, vs in D.landmark_vertices().items()}


@dataclass
class Stage:
    name: str
    ok: bool
    seconds: float
    detail: str = ""


@dataclass
class AssemblyReport:
    k: int
    modes: tuple[str, ...] = ()
    certificate: Certificate | None = None
    circuit_lengths: list[int] = field(default_factory=list)
    on_cycle: dict[str, list] = field(default_factory=dict)
    landmarks_ok: bool | None = None
    coloring_source: str = "solver"
    verification: CertificateReport | None = None
    stages: list[Stage] = field(default_factory=list)

    def to_json(self, with_timing: bool = True) -> dict:
        return {
            "k": self.k,
            "modes": list(self.modes),
            "coloring_source": self.coloring_source,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "even_cycle": {"circuit_lengths": self.circuit_lengths},
            "landmarks_on_cycle": {n: [str(v) for v in vs] for n, vs in self.on_cycle.items()},
            "landmarks_ok": self.landmarks_ok,
            "stages": [{"name": s.name, "ok": s.ok, "detail": s.detail,
                        **({"seconds": round(s.seconds, 4)} if with_timing else {})}
                       for s in self.stages],
        }


@dataclass
class PipelineResult:
    graph: Multigraph
    descriptor: FamilyDescriptor | None
    cover: FulkersonCover
    report: AssemblyReport
    plan: BlockCertificatePlan | None = None


class _Stages:
    def __init__(self, report: AssemblyReport):
        self.report = report

    def run(self, name, fn, *args, **kw):
        t = time.perf_counter()
        try:
            out = fn(*args, **kw)
        except PipelineError:
            raise
        except (GraphError, CertificateError, AssemblyError, RuntimeError, ValueError) as exc:
            self.report.stages.append(Stage(name, False, time.perf_counter() - t, str(exc)))
            raise PipelineError(name, str(exc), self.report) from exc
        self.report.stages.append(Stage(name, True, time.perf_counter() - t))
        return out

    def fail(self, name, message):
        self.report.stages.append(Stage(name, False, 0.0, message))
        raise PipelineError(name, message, self.report)


def construct_cover(bases: list[PortedGraph], covers: list[FulkersonCover], *,
                    constructive: bool = False, budget: int = 2_000_000) -> PipelineResult:
    """Build the family and a verified Fulkerson cover from per-base covers.

    k = 1 returns the base cover, k = 2 falls back to the exact cover search,
    k >= 3 runs plan -> build -> assemble -> verify -> lift -> verify.
    """
    k = len(bases)
    report = AssemblyReport(k, coloring_source="two-factor" if constructive else "solver")
    st = _Stages(report)
    if k == 0 or len(covers) != k:
        st.fail("input", "need at least one base graph and exactly one cover per base")
    for i, (P, cover) in enumerate(zip(bases, covers)):
        check = verify_cover(P.graph, cover)
        if not check:
            st.fail("covers", f"base {i}: {check.reason}")
    report.stages.append(Stage("covers", True, 0.0))

    if k == 1:
        return PipelineResult(bases[0].graph, None, covers[0], report)
    if k == 2:
        G, D = st.run("build", build_family, bases)
        cover = st.run("oracle", find_fulkerson_cover, G, budget)
        if cover is None:
            st.fail("oracle", "no Fulkerson cover exists")
        check = verify_cover(G, cover)
        if not check:
            st.fail("verify-cover", check.reason)
        report.stages.append(Stage("verify-cover", True, 0.0))
        return PipelineResult(G, D, cover, report)

    plan = st.run("plan", plan_block_certificates, bases, covers)
    report.modes = plan.modes
    G, D = st.run("build", build_family, plan.ports())
    cert = st.run("assemble", assemble_certificate, G, D, plan)
    report.certificate = cert
    dec = even_components(G, cert.cycle)
    if not dec:
        st.fail("even-cycle", f"E0 u E2 is not an even cycle: {dec.failure}")
    report.circuit_lengths = sorted(len(c) for c in dec.circuits)
    report.stages.append(Stage("even-cycle", True, 0.0))

    report.on_cycle = landmark_membership(G, D, cert)
    on, off = expected_cycle_landmarks(D)
    touched = {v for e in cert.cycle for v in G.endpoints(e)}
    report.landmarks_ok = on <= touched and not (off & touched)
    report.stages.append(Stage("landmarks", report.landmarks_ok, 0.0,
                               "" if report.landmarks_ok else "landmark membership differs from the expected sets"))

    if constructive:
        def colorings():
            out = []
            for side in ("e0", "e2"):
                tf = assemble_two_factor(G, D, plan, cert, side)
                out.append(two_factor_to_coloring(tf.suppression.suppressed, tf.members))
            return tuple(out)
        cols = st.run("two-factor", colorings)
        verdict = st.run("verify-certificate", verify_certificate, G, cert, cols)
    else:
        verdict = st.run("verify-certificate", verify_certificate, G, cert)
    report.verification = verdict
    if not verdict:
        report.stages[-1].ok = False
        report.stages[-1].detail = verdict.reason
        raise PipelineError("verify-certificate", verdict.reason, report)
    cover = st.run("lift", lift_certificate, G, verdict)
    check = verify_cover(G, cover)
    if not check:
        st.fail("verify-cover", check.reason)
    report.stages.append(Stage("verify-cover", True, 0.0))
    return PipelineResult(G, D, cover, report, plan)

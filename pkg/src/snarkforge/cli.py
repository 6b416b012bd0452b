"""Command-line entry point.

Exit codes are a stable contract: 0 success, 1 a verification failed,
2 bad input or a solver cap was hit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .family import build_family
from .fulkerson import Certificate, verify_certificate, verify_cover
from .graph import GraphError, is_bridgeless, is_connected, is_cubic, cyclic_edge_connectivity_at_least
from .solvers import (DEFAULT_CAP, SearchLimitExceeded, excessive_index, find_fulkerson_cover,
                      three_edge_coloring)
from .theorems import PipelineError, construct_cover

OK, FAILED, BAD_INPUT = 0, 1, 2


class UsageError(Exception):
    """Bad input that should end the command with exit code 2."""


@dataclass
class RunReport:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    verdicts: dict[str, object] = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)

    def add_input(self, path) -> None:
        if path is not None:
            self.inputs[str(path)] = io.digest(path)

    def to_json(self) -> dict:
        return {"command": self.command, "inputs": self.inputs,
                "verdicts": self.verdicts, "outputs": self.outputs}


def worker_count() -> int:
    raw = os.environ.get("SNARKFORGE_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"SNARKFORGE_THREADS must be an integer, got {raw!r}") from None


def load_graph_file(path):
    """Read a graph doc, family doc or builtin-name JSON; ``.g6`` files take the first graph."""
    p = Path(path)
    if p.suffix in (".g6", ".graph6"):
        try:
            graphs = io.read_graph6(p.read_text())
        except OSError as exc:
            raise io.InputError(f"cannot read {path}: {exc}") from exc
        if not graphs:
            raise io.InputError(f"{path} holds no graph")
        return graphs[0], {}
    doc = io.load_json(p)
    return io.graph_from_doc(doc), (doc if isinstance(doc, dict) else {})


def graph_digest(G) -> str:
    text = json.dumps(io.graph_to_doc(G), separators=(",", ":"))
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _search_one(args):
    graph, budget = args
    return find_fulkerson_cover(graph, budget)


def search_covers(bases, budget: int):
    jobs = [(P.graph, budget) for P in bases]
    workers = min(worker_count(), len(jobs))
    if workers <= 1:
        found = [_search_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = list(pool.map(_search_one, jobs))
    for i, cover in enumerate(found):
        if cover is None:
            raise UsageError(f"base {i} has no Fulkerson cover")
    return found


def cmd_build(args) -> int:
    doc = io.load_json(args.bases)
    bases = io.bases_from_doc(doc)
    if args.k is not None and args.k != len(bases):
        raise UsageError(f"--k {args.k} does not match the {len(bases)} bases given")
    G, D = build_family(bases)
    io.dump_json(io.family_to_doc(G, D), args.out)
    print(f"vertices: {G.num_vertices()}")
    print(f"edges: {G.num_edges()}")
    print(f"cubic: {yes(is_cubic(G))}")
    print(f"connected: {yes(is_connected(G))}")
    print(f"bridgeless: {yes(is_bridgeless(G))}")
    print(f"wrote {args.out}")
    return OK


def cmd_construct_cover(args) -> int:
    run = RunReport("construct-cover")
    source = args.family or args.bases
    run.add_input(source)
    bases = io.bases_from_doc(io.load_json(source))
    if args.search_covers:
        covers = search_covers(bases, args.budget)
    else:
        run.add_input(args.covers)
        covers = io.covers_from_doc(io.load_json(args.covers))
    try:
        result = construct_cover(bases, covers, constructive=args.constructive, budget=args.budget)
    except PipelineError as exc:
        run.verdicts = {"ok": False, "stage": exc.stage, "reason": exc.message}
        if exc.report is not None:
            run.verdicts["pipeline"] = exc.report.to_json(with_timing=not args.no_timing)
        if args.report:
            io.dump_json(run.to_json(), args.report)
        print(f"FAILED at {exc.stage}: {exc.message}", file=sys.stderr)
        return BAD_INPUT if exc.stage in ("input", "covers") else FAILED

    cover_doc = io.cover_to_doc(result.cover)
    if args.graph_out:
        if result.descriptor is not None:
            io.dump_json(io.family_to_doc(result.graph, result.descriptor), args.graph_out)
        else:
            io.dump_json(io.graph_to_doc(result.graph), args.graph_out)
        run.outputs.append(str(args.graph_out))
    if args.family:
        given = io.graph_from_doc(io.load_json(args.family))
        if given != result.graph:
            print("note: the plan relabelled port roles, so the cover refers to the rebuilt graph"
                  + (f" written to {args.graph_out}" if args.graph_out else "; pass --graph-out to save it"))
    if args.out:
        io.dump_json(cover_doc, args.out)
        run.outputs.append(str(args.out))
    run.verdicts = {
        "ok": True,
        "graph": {"vertices": result.graph.num_vertices(), "edges": result.graph.num_edges(),
                  "digest": graph_digest(result.graph)},
        "pipeline": result.report.to_json(with_timing=not args.no_timing),
        "cover": cover_doc,
    }
    if args.report:
        io.dump_json(run.to_json(), args.report)
        run.outputs.append(str(args.report))
    print(f"k={len(bases)}: verified Fulkerson cover of a graph with "
          f"{result.graph.num_vertices()} vertices and {result.graph.num_edges()} edges")
    for st in result.report.stages:
        print(f"  {st.name}: {'ok' if st.ok else 'FAIL'}{' ' + st.detail if st.detail else ''}")
    return OK


def cmd_verify(args) -> int:
    G, _ = load_graph_file(args.graph)
    if args.cover:
        cover = io.cover_from_doc(io.load_json(args.cover))
        try:
            rep = verify_cover(G, cover)
        except (GraphError, ValueError) as exc:
            raise io.InputError(str(exc)) from exc
        if rep:
            counts = Counter(rep.histogram.values())
            print("cover: ok; edges by coverage " + json.dumps({str(c): n for c, n in sorted(counts.items())}))
            return OK
        print(f"cover: FAIL; {rep.reason}")
        return FAILED
    try:
        cert = Certificate.from_json(io.load_json(args.certificate))
    except (KeyError, TypeError, ValueError) as exc:
        raise io.InputError(f"bad certificate document: {exc}") from exc
    rep = verify_certificate(G, cert)
    if rep:
        print(f"certificate: ok; |E0|={len(cert.e0)} |E2|={len(cert.e2)}")
        return OK
    print(f"certificate: FAIL; {rep.reason}")
    return FAILED


def cmd_check(args) -> int:
    G, _ = load_graph_file(args.graph)
    cubic = is_cubic(G)
    print(f"vertices: {G.num_vertices()}  edges: {G.num_edges()}")
    print(f"cubic: {yes(cubic)}")
    if not cubic:
        return OK
    bridgeless = is_bridgeless(G)
    colorable = three_edge_coloring(G) is not None
    print(f"bridgeless: {yes(bridgeless)}")
    print(f"3-edge-colorable: {yes(colorable)}")
    print(f"snark: {yes(bridgeless and not colorable)}")
    if args.cyclic4:
        print(f"cyclically 4-edge-connected: {yes(cyclic_edge_connectivity_at_least(G, 4))}")
    if args.excessive_index:
        idx = excessive_index(G, cap=args.cap)
        print(f"excessive index: {idx if idx is not None else 'more than 6 or undefined'}")
    return OK


def cmd_export(args) -> int:
    G, doc = load_graph_file(args.graph)
    if args.format == "json":
        text = io.dump_json(io.graph_to_doc(G))
    elif args.format == "graph6":
        text = io.to_graph6(G) + "\n"
    else:
        text = io.to_dot(G, doc.get("landmarks"))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snarkforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="compose a family graph from base graphs")
    p.add_argument("--bases", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("construct-cover", help="run the cover construction pipeline")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help="family JSON written by build")
    src.add_argument("--bases", help="family input JSON")
    cov = p.add_mutually_exclusive_group(required=True)
    cov.add_argument("--covers", help="JSON list of one cover per base")
    cov.add_argument("--search-covers", action="store_true")
    p.add_argument("--out")
    p.add_argument("--report")
    p.add_argument("--graph-out", help="write the composed graph the cover refers to")
    p.add_argument("--constructive", action="store_true", help="color via assembled 2-factors")
    p.add_argument("--budget", type=int, default=2_000_000, help="cover search node budget")
    p.add_argument("--no-timing", action="store_true", help="omit timings from the report")
    p.set_defaults(func=cmd_construct_cover)

    p = sub.add_parser("verify", help="verify a cover or a certificate")
    p.add_argument("--graph", required=True)
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--cover")
    what.add_argument("--certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check", help="structural and coloring properties")
    p.add_argument("--graph", required=True)
    p.add_argument("--cyclic4", action="store_true")
    p.add_argument("--excessive-index", action="store_true")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="vertex cap for matching enumeration")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("export", help="write a graph as DOT, JSON or graph6")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", choices=("dot", "json", "graph6"), default="dot")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, io.InputError, GraphError, SearchLimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())

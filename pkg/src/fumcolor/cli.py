"""Command-line surface tying the toolkit together.

Exit codes: 0 success/pass, 1 verification failure or not colorable,
2 input error (including violated hypotheses), 3 internal exhaustion.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from .constructive import ExtensionProblem, extend_precoloring, fum_color_star_forest
from .errors import (
    ChildContractFailure,
    FumError,
    HypothesisViolated,
    InternalCaseExhaustion,
)
from .exact_solver import Limits, chi_fum
from .formats import (
    GraphDocument,
    GraphFormat,
    deserialize,
    export_dot,
    serialize,
)
from .fum_core import PrecoloredPath, Scope, verify_extension, verify_fum
from .instance_sources import (
    FilterKind,
    Triangulation,
    TriangulationMinusRandomEdges,
    enumerate_small,
    random_plane_graph,
    search_counterexamples,
    write_report,
)
from .plane_graph import classify_boundary

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _load(path: str) -> GraphDocument:
    with open(path, "rb") as fh:
        return deserialize(fh.read())


def _parse_precolor(spec: str) -> PrecoloredPath:
    pairs = [item for item in spec.split(",") if item]
    vertices = []
    colors = []
    for item in pairs:
        v, _, c = item.partition(":")
        vertices.append(int(v))
        colors.append(int(c))
    return PrecoloredPath(tuple(vertices), tuple(colors))


def _cmd_validate(args, out: TextIO, err: TextIO) -> int:
    doc = _load(args.file)
    g = doc.graph
    out.write(f"n={g.n} m={g.m} components={len(g.components)} faces={len(g.faces)}\n")
    out.write(f"outer={g.face_set.outer} outer_all={list(g.face_set.outer_all)}\n")
    out.write(f"boundary={type(classify_boundary(g)).__name__}\n")
    total = sum(len(f.walk) for f in g.faces)
    out.write(f"walk_length_total={total} (2m={2 * g.m})\n")
    return EXIT_OK


def _cmd_faces(args, out: TextIO, err: TextIO) -> int:
    doc = _load(args.file)
    fs = doc.graph.face_set
    for i, face in enumerate(fs.faces):
        kind = "outer" if i == fs.outer else ("boundary" if i in fs.outer_all else "internal")
        verts = " ".join(str(u) for u, _ in face.walk)
        out.write(f"face {i} ({kind}) len={len(face.walk)}: {verts}\n")
    return EXIT_OK


def _cmd_verify(args, out: TextIO, err: TextIO) -> int:
    doc = _load(args.file)
    if doc.coloring is None:
        err.write("no coloring in input\n")
        return EXIT_INPUT
    scope = Scope.ALL if args.scope == "all" else Scope.INTERNAL
    report = verify_fum(doc.graph, doc.coloring, scope)
    if doc.path is not None and len(doc.path):
        ext = verify_extension(doc.graph, doc.path, doc.coloring)
        out.write(f"extension_contract={'pass' if ext.overall else 'fail'}\n")
        for failure in ext.failures():
            out.write(f"  {failure}\n")
        if not ext.overall:
            return EXIT_FAIL
    out.write(f"fum={'pass' if report.overall else 'fail'}\n")
    for failure in report.failures():
        out.write(f"  {failure}\n")
    return EXIT_OK if report.overall else EXIT_FAIL


def _cmd_solve(args, out: TextIO, err: TextIO) -> int:
    doc = _load(args.file)
    limits = Limits(max_nodes=args.max_nodes, max_seconds=args.timeout)
    result = chi_fum(doc.graph, args.kmax, limits)
    if result.value is None:
        qualifier = "certified" if result.certified else "search incomplete"
        out.write(f"chi_fum > {args.kmax} ({qualifier})\n")
        return EXIT_FAIL
    out.write(f"chi_fum = {result.value}\n")
    for v in sorted(result.witness):
        out.write(f"color {v} {result.witness[v]}\n")
    return EXIT_OK


def _cmd_color(args, out: TextIO, err: TextIO) -> int:
    doc = _load(args.file)
    if args.precolor:
        path = _parse_precolor(args.precolor)
    else:
        path = doc.path
    if path is not None and len(path):
        coloring, trace = extend_precoloring(ExtensionProblem(doc.graph, path))
    else:
        coloring, trace = fum_color_star_forest(doc.graph)
        path = None
    if args.trace:
        for step in trace:
            err.write(f"{step.label} {' '.join(str(v) for v in step.vertices)}\n")
    result = GraphDocument(graph=doc.graph, coloring=coloring, path=path)
    out.write(serialize(result, GraphFormat.ROTATION_TEXT).decode())
    return EXIT_OK


def _graph_source(spec: str, seed: int | None):
    if spec.startswith("enum:"):
        return enumerate_small(int(spec.split(":", 1)[1])), spec
    if spec.startswith("random:"):
        fields = spec.split(":")[1:]
        if seed is None:
            raise FumError("random sources require --seed")
        count, nmax = int(fields[0]), int(fields[1])
        p = float(fields[2]) if len(fields) > 2 else 0.0
        model = TriangulationMinusRandomEdges(p) if p > 0 else Triangulation()
        sizes = [3 + ((7 * i) % max(1, nmax - 2)) for i in range(count)]
        graphs = (random_plane_graph(seed + i, size, model) for i, size in enumerate(sizes))
        return graphs, spec
    with open(spec, "rb") as fh:
        data = fh.read()
    from .instance_sources import parse_planar_code

    return parse_planar_code(data), spec


def _cmd_search(args, out: TextIO, err: TextIO) -> int:
    source, name = _graph_source(args.source, args.seed)
    kind = FilterKind(args.filter)
    limits = Limits(max_nodes=args.max_nodes, max_seconds=args.timeout)
    report = search_counterexamples(
        source,
        kind,
        args.threshold,
        limits=limits,
        source_name=name,
        jobs=args.jobs,
    )
    write_report(report, args.report, args.witnesses)
    out.write(
        f"graphs={len(report.records)} solved={report.solved} "
        f"counterexamples={len(report.counterexamples)}\n"
    )
    return EXIT_OK


def _cmd_convert(args, out: TextIO, err: TextIO) -> int:
    doc = _load(args.infile)
    data = serialize(doc, GraphFormat(args.to))
    with open(args.outfile, "wb") as fh:
        fh.write(data)
    return EXIT_OK


def _cmd_export_dot(args, out: TextIO, err: TextIO) -> int:
    doc = _load(args.file)
    out.write(export_dot(doc.graph, doc.coloring))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fumcolor", description="Facial unique-maximum coloring toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="build a graph and report its invariants")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("faces", help="list the traced faces")
    p.add_argument("file")
    p.set_defaults(func=_cmd_faces)

    p = sub.add_parser("verify", help="check a coloring against the FUM property")
    p.add_argument("file")
    p.add_argument("--scope", choices=["internal", "all"], default="all")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("solve", help="exact chi_fum by exhaustive search")
    p.add_argument("file")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--max-nodes", type=int, default=5_000_000)
    p.add_argument("--timeout", type=float, default=120.0)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("color", help="constructive 4-coloring (star-forest hypothesis)")
    p.add_argument("file")
    p.add_argument("--precolor", help="extension mode, e.g. 0:1,3:2")
    p.add_argument("--trace", action="store_true", help="print the fired cases to stderr")
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("search", help="chi_fum sweep over a graph source")
    p.add_argument("source", help="planar_code file, enum:<nmax>, or random:<count>:<nmax>[:p]")
    p.add_argument("--filter", default="all", choices=[k.value for k in FilterKind])
    p.add_argument("--threshold", type=int, required=True)
    p.add_argument("--report", required=True)
    p.add_argument("--witnesses")
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-nodes", type=int, default=5_000_000)
    p.add_argument("--timeout", type=float, default=120.0)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("convert", help="convert between graph document formats")
    p.add_argument("infile")
    p.add_argument("outfile")
    p.add_argument("--to", required=True, choices=[f.value for f in GraphFormat])
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("export-dot", help="emit a Graphviz rendering")
    p.add_argument("file")
    p.set_defaults(func=_cmd_export_dot)

    return parser


def run_cli(
    argv: Sequence[str],
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out, err)
    except InternalCaseExhaustion as exc:
        err.write(f"internal case exhaustion: {exc}\n")
        return EXIT_INTERNAL
    except ChildContractFailure as exc:
        err.write(f"internal contract failure: {exc}\n")
        return EXIT_INTERNAL
    except HypothesisViolated as exc:
        err.write(f"hypothesis violated: {exc}\n")
        return EXIT_INPUT
    except FumError as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    except OSError as exc:
        err.write(f"io error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))

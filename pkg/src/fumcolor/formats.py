"""On-disk graph documents: rotation text, rotation JSON, planar_code, DOT.

Rotation text is the human-readable format:

    0: 1 2
    1: 2 0
    2: 0 1
    outer: 0 1
    precolor 0 3
    color 0 3
    color 1 1

One line per vertex with its neighbors in rotation order, an optional
``outer`` dart overriding the default outer face, optional ``precolor``
lines (at most two) and optional ``color`` lines for a full coloring.
Rotation JSON mirrors the same payload structurally; planar_code carries
the bare graph only.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .errors import FormatError, UnrepresentableInFormat
from .fum_core import PrecoloredPath
from .instance_sources import (
    PLANAR_CODE_HEADER,
    encode_planar_code,
    parse_planar_code,
)
from .plane_graph import PlaneGraph, _face_set_from_rotations, build_plane_graph


class GraphFormat(enum.Enum):
    PLANAR_CODE = "planar_code"
    ROTATION_TEXT = "rot"
    ROTATION_JSON = "json"


@dataclass(frozen=True)
class GraphDocument:
    graph: PlaneGraph
    coloring: dict[int, int] | None = None
    path: PrecoloredPath | None = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphDocument):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.coloring == other.coloring
            and (self.path or PrecoloredPath()) == (other.path or PrecoloredPath())
        )


def _outer_dart(graph: PlaneGraph) -> tuple[int, int] | None:
    fs = graph.face_set
    if fs.outer is None or not fs.faces[fs.outer].walk:
        return None
    return fs.faces[fs.outer].walk[0]


def serialize(doc: GraphDocument, fmt: GraphFormat) -> bytes:
    g = doc.graph
    if fmt is GraphFormat.PLANAR_CODE:
        if doc.coloring is not None or (doc.path is not None and len(doc.path)):
            raise UnrepresentableInFormat("planar_code carries no colors or paths")
        default = _face_set_from_rotations(g.rotations)
        if g.n and default.outer != g.face_set.outer:
            raise UnrepresentableInFormat("planar_code cannot record an outer-face override")
        return PLANAR_CODE_HEADER + encode_planar_code(g)

    if fmt is GraphFormat.ROTATION_TEXT:
        lines = [f"{v}: {' '.join(str(w) for w in g.rotations[v])}".rstrip() for v in range(g.n)]
        dart = _outer_dart(g)
        if dart is not None:
            lines.append(f"outer: {dart[0]} {dart[1]}")
        if doc.path is not None:
            lines.extend(f"precolor {v} {c}" for v, c in doc.path.items())
        if doc.coloring is not None:
            lines.extend(f"color {v} {doc.coloring[v]}" for v in sorted(doc.coloring))
        return ("\n".join(lines) + "\n").encode()

    if fmt is GraphFormat.ROTATION_JSON:
        payload = {
            "n": g.n,
            "rotations": [list(r) for r in g.rotations],
            "outer": list(_outer_dart(g)) if _outer_dart(g) is not None else None,
            "precolor": [[v, c] for v, c in doc.path.items()] if doc.path is not None else None,
            "colors": {str(v): c for v, c in sorted(doc.coloring.items())}
            if doc.coloring is not None
            else None,
        }
        return (json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n").encode()

    raise ValueError(f"unknown format {fmt}")


def detect_format(data: bytes) -> GraphFormat:
    if data.startswith(PLANAR_CODE_HEADER):
        return GraphFormat.PLANAR_CODE
    stripped = data.lstrip()
    if stripped.startswith(b"{"):
        return GraphFormat.ROTATION_JSON
    return GraphFormat.ROTATION_TEXT


def deserialize(data: bytes, fmt: GraphFormat | None = None) -> GraphDocument:
    fmt = fmt or detect_format(data)
    if fmt is GraphFormat.PLANAR_CODE:
        graphs = list(parse_planar_code(data))
        if len(graphs) != 1:
            raise FormatError(f"expected exactly one graph, found {len(graphs)}")
        return GraphDocument(graph=graphs[0])
    if fmt is GraphFormat.ROTATION_JSON:
        return _from_json(data)
    return _from_text(data)


def _from_text(data: bytes) -> GraphDocument:
    rotations: dict[int, tuple[int, ...]] = {}
    outer: tuple[int, int] | None = None
    colors: dict[int, int] = {}
    precolor: list[tuple[int, int]] = []
    for lineno, raw in enumerate(data.decode().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("outer:"):
                u, v = (int(t) for t in line[len("outer:"):].split())
                outer = (u, v)
            elif line.startswith("precolor "):
                _, v, c = line.split()
                precolor.append((int(v), int(c)))
            elif line.startswith("color "):
                _, v, c = line.split()
                colors[int(v)] = int(c)
            else:
                head, _, tail = line.partition(":")
                v = int(head)
                rotations[v] = tuple(int(t) for t in tail.split())
        except ValueError as exc:
            raise FormatError(f"line {lineno}: cannot parse {raw!r}") from exc
    if sorted(rotations) != list(range(len(rotations))):
        raise FormatError("vertex lines must cover 0..n-1 exactly once")
    n = len(rotations)
    graph = build_plane_graph(n, [rotations[v] for v in range(n)], outer_dart=outer)
    return _assemble(graph, colors, precolor)


def _from_json(data: bytes) -> GraphDocument:
    try:
        payload = json.loads(data.decode())
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad JSON: {exc}") from exc
    try:
        n = payload["n"]
        rotations = [tuple(r) for r in payload["rotations"]]
        outer = tuple(payload["outer"]) if payload.get("outer") else None
        colors = {int(v): c for v, c in (payload.get("colors") or {}).items()}
        precolor = [(v, c) for v, c in (payload.get("precolor") or [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad JSON payload: {exc}") from exc
    graph = build_plane_graph(n, rotations, outer_dart=outer)
    return _assemble(graph, colors, precolor)


def _assemble(
    graph: PlaneGraph, colors: dict[int, int], precolor: list[tuple[int, int]]
) -> GraphDocument:
    path = None
    if precolor:
        path = PrecoloredPath(
            tuple(v for v, _ in precolor), tuple(c for _, c in precolor)
        )
        path.validate_on(graph)
    return GraphDocument(
        graph=graph, coloring=colors or None, path=path
    )


def export_dot(graph: PlaneGraph, coloring: dict[int, int] | None = None) -> str:
    """Graphviz text with colors as labels; color-4 vertices doubled, outer marked."""
    lines = ["graph fum {", "  node [shape=circle];"]
    outer = graph.outer_vertices
    for v in range(graph.n):
        attrs = []
        if coloring is not None:
            attrs.append(f'label="{v}:{coloring[v]}"')
            if coloring[v] == 4:
                attrs.append("style=filled fillcolor=gray")
        else:
            attrs.append(f'label="{v}"')
        if v in outer:
            attrs.append("peripheries=2")
        lines.append(f"  {v} [{' '.join(attrs)}];")
    for u, v in graph.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"

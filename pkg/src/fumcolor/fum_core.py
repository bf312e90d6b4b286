"""FUM-coloring domain: colorings, precolored paths, X sets and verifiers.

A facial unique-maximum (FUM) coloring is a proper vertex coloring by
positive integers such that every face has exactly one incident vertex
attaining the face's maximum color.  Uniqueness counts distinct vertices:
a cut vertex repeated on a face walk attains the maximum once.

For a disconnected graph the shared unbounded region is checked once,
over the union of all component outer boundaries plus isolated vertices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InvalidPrecoloredPath, PartialColoring, PrecoloringMismatch
from .plane_graph import PlaneGraph

Coloring = Mapping[int, int]


class Scope(enum.Enum):
    ALL = "all"
    INTERNAL = "internal"


class InducedClass(enum.Enum):
    STAR_FOREST = "star_forest"
    ACYCLIC = "acyclic"
    MAX_DEG2 = "max_deg2"
    MAX_DEG3 = "max_deg3"
    OTHER = "other"


@dataclass(frozen=True)
class PrecoloredPath:
    """A path of 0, 1 or 2 outer-face vertices precolored from {1, 2, 3}."""

    vertices: tuple[int, ...] = ()
    colors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.vertices) != len(self.colors):
            raise InvalidPrecoloredPath("vertices and colors differ in length")
        if len(self.vertices) > 2:
            raise InvalidPrecoloredPath("at most two vertices may be precolored")
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidPrecoloredPath("repeated path vertex")
        for c in self.colors:
            if c not in (1, 2, 3):
                raise InvalidPrecoloredPath(f"path color {c} outside {{1,2,3}}")
        if len(self.vertices) == 2 and self.colors[0] == self.colors[1]:
            raise InvalidPrecoloredPath("adjacent path vertices share a color")

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def color_of(self, v: int) -> int:
        return self.colors[self.vertices.index(v)]

    def items(self):
        return zip(self.vertices, self.colors)

    def validate_on(self, graph: PlaneGraph) -> None:
        """Check the path actually lies on the outer face of ``graph``."""
        for v in self.vertices:
            if not 0 <= v < graph.n:
                raise InvalidPrecoloredPath(f"path vertex {v} outside graph")
            if v not in graph.outer_vertices:
                raise InvalidPrecoloredPath(f"path vertex {v} not on the outer face")
        if len(self.vertices) == 2:
            u, v = self.vertices
            fs = graph.face_set
            on_outer = any(
                (u, v) in fs.faces[i].walk or (v, u) in fs.faces[i].walk
                for i in fs.outer_all
            )
            if not on_outer:
                raise InvalidPrecoloredPath(
                    f"path {u},{v} is not consecutive on the outer walk"
                )


EMPTY_PATH = PrecoloredPath()


@dataclass(frozen=True)
class FaceCheck:
    """Unique-maximum check of one face ('outer' is the merged outer region)."""

    face: int | str
    max_color: int
    attaining: tuple[int, ...]
    ok: bool


@dataclass(frozen=True)
class VerificationReport:
    proper_ok: bool
    violating_edge: tuple[int, int] | None
    per_face: tuple[FaceCheck, ...]
    checks: tuple[tuple[str, bool], ...] = ()

    @property
    def overall(self) -> bool:
        return (
            self.proper_ok
            and all(fc.ok for fc in self.per_face)
            and all(ok for _, ok in self.checks)
        )

    def failures(self) -> list[str]:
        out = []
        if not self.proper_ok:
            out.append(f"improper edge {self.violating_edge}")
        out.extend(
            f"face {fc.face}: max {fc.max_color} attained by {fc.attaining}"
            for fc in self.per_face
            if not fc.ok
        )
        out.extend(name for name, ok in self.checks if not ok)
        return out


def _require_total(graph: PlaneGraph, coloring: Coloring) -> None:
    for v in range(graph.n):
        if v not in coloring:
            raise PartialColoring(f"vertex {v} is uncolored")
        if coloring[v] < 1:
            raise PartialColoring(f"vertex {v} has non-positive color {coloring[v]}")


def is_proper(
    graph: PlaneGraph, coloring: Coloring
) -> tuple[bool, tuple[int, int] | None]:
    """True iff adjacent vertices always differ; else returns a violating edge."""
    _require_total(graph, coloring)
    for u, v in graph.edges:
        if coloring[u] == coloring[v]:
            return False, (u, v)
    return True, None


def _check_face(tag: int | str, vertices: Iterable[int], coloring: Coloring) -> FaceCheck:
    vs = list(vertices)
    mx = max(coloring[v] for v in vs)
    attaining = tuple(sorted(v for v in vs if coloring[v] == mx))
    return FaceCheck(tag, mx, attaining, len(attaining) == 1)


def verify_fum(
    graph: PlaneGraph, coloring: Coloring, scope: Scope = Scope.ALL
) -> VerificationReport:
    """Check the facial unique-maximum property face by face."""
    _require_total(graph, coloring)
    proper_ok, edge = is_proper(graph, coloring)
    face_checks = [
        _check_face(i, graph.face_set.faces[i].vertex_set, coloring)
        for i in graph.face_set.internal_ids
    ]
    if scope is Scope.ALL and graph.outer_vertices:
        face_checks.append(_check_face("outer", graph.outer_vertices, coloring))
    return VerificationReport(proper_ok, edge, tuple(face_checks))


def verify_extension(
    graph: PlaneGraph, path: PrecoloredPath, coloring: Coloring
) -> VerificationReport:
    """Check the precoloring-extension contract.

    Passes iff the coloring extends ``path``, is proper, uses colors from
    {1,2,3,4}, puts no 4 on the outer face, and gives every internal face a
    unique maximum.  A coloring that disagrees with the precoloring raises
    PrecoloringMismatch rather than failing softly.
    """
    _require_total(graph, coloring)
    path.validate_on(graph)
    for v, c in path.items():
        if coloring[v] != c:
            raise PrecoloringMismatch(f"vertex {v} colored {coloring[v]}, precolored {c}")
    proper_ok, edge = is_proper(graph, coloring)
    face_checks = tuple(
        _check_face(i, graph.face_set.faces[i].vertex_set, coloring)
        for i in graph.face_set.internal_ids
    )
    in_range = all(1 <= coloring[v] <= 4 for v in range(graph.n))
    outer_ok = all(coloring[v] != 4 for v in graph.outer_vertices)
    checks = (("colors_in_1..4", in_range), ("no_color4_on_outer", outer_ok))
    return VerificationReport(proper_ok, edge, face_checks, checks)


# --- the X set and star forests ----------------------------------------------


@dataclass(frozen=True)
class XSet:
    members: frozenset[int]
    induced_class: InducedClass


def _induced_adjacency(graph: PlaneGraph, members: frozenset[int]) -> dict[int, list[int]]:
    return {
        v: [w for w in graph.rotations[v] if w in members] for v in members
    }


def _induced_components(adj: dict[int, list[int]]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for start in adj:
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def is_star_forest(graph: PlaneGraph, vertices: Iterable[int]) -> bool:
    """True iff every component of the induced subgraph is a star.

    A star is a tree with at most one vertex of degree greater than 1; the
    empty set is a star forest.
    """
    members = frozenset(vertices)
    adj = _induced_adjacency(graph, members)
    for comp in _induced_components(adj):
        m = sum(len(adj[v]) for v in comp) // 2
        if m != len(comp) - 1:
            return False  # contains a cycle
        if sum(1 for v in comp if len(adj[v]) > 1) > 1:
            return False
    return True


def _classify_induced(graph: PlaneGraph, members: frozenset[int]) -> InducedClass:
    adj = _induced_adjacency(graph, members)
    maxdeg = max((len(adj[v]) for v in members), default=0)
    acyclic = all(
        sum(len(adj[v]) for v in comp) // 2 == len(comp) - 1
        for comp in _induced_components(adj)
    )
    if acyclic and is_star_forest(graph, members):
        return InducedClass.STAR_FOREST
    if acyclic:
        return InducedClass.ACYCLIC
    if maxdeg <= 2:
        return InducedClass.MAX_DEG2
    if maxdeg <= 3:
        return InducedClass.MAX_DEG3
    return InducedClass.OTHER


def compute_xset(
    graph: PlaneGraph,
    path: PrecoloredPath | None = None,
    include_path_degree3: bool = False,
) -> XSet:
    """Vertices of degree >= 4, optionally plus degree-3 vertices of ``path``."""
    members = {v for v in range(graph.n) if graph.degree(v) >= 4}
    if include_path_degree3 and path is not None:
        members.update(v for v in path.vertices if graph.degree(v) == 3)
    members_f = frozenset(members)
    return XSet(members_f, _classify_induced(graph, members_f))

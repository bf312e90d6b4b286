"""Constructive 4-coloring by recursive precoloring extension.

Entry point ``fum_color_star_forest`` colors any plane graph whose
degree->=4 vertices induce a star forest with at most 4 colors so that
every face has a unique maximum.  It deletes one outer vertex, solves the
resulting extension problem and gives the deleted vertex color 4.

``extend_precoloring`` solves the extension problem itself: given a path
of at most two precolored outer vertices (colors in {1,2,3}), produce a
coloring with colors in {1,2,3,4}, no 4 on the outer face and a unique
maximum on every internal face.  The recursion dispatches on the boundary
structure; every case either splits the graph at a separator, deletes a
small set of vertices around the boundary, or bottoms out on trees and
cycles.  Each recursive step re-checks the precoloring-transfer condition
and each child result is re-verified, so a wrong coloring can never
propagate silently.
"""

from __future__ import annotations

import sys
import tempfile
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    ChildContractFailure,
    HypothesisViolated,
    InternalCaseExhaustion,
    InvalidPrecoloredPath,
)
from .fum_core import (
    EMPTY_PATH,
    InducedClass,
    PrecoloredPath,
    Scope,
    compute_xset,
    verify_extension,
    verify_fum,
)
from .plane_graph import (
    Cycle,
    Disconnected,
    PlaneGraph,
    WalkWithCutVertex,
    chords_of_outer_cycle,
    classify_boundary,
    induced_plane_subgraph,
    split_at_separator,
)

COMPONENTS = "Components"
TREE_BASE = "TreeBase"
CUT_VERTEX = "CutVertex"
CHORD = "Chord"
CYCLE_BASE = "CycleBase"
LOW_DEGREE_VERTEX = "LowDegreeVertex"
THREE_HIGH_ON_C = "ThreeHighOnC"
TWO_TWO_P = "TwoTwoP"
FOUR_CYCLE_C = "FourCycleC"
TWO_VERTEX_IN_P = "TwoVertexInP"


@dataclass(frozen=True)
class ExtensionProblem:
    graph: PlaneGraph
    path: PrecoloredPath = EMPTY_PATH
    depth: int = 0


@dataclass(frozen=True)
class CaseStep:
    """One fired dispatch case; vertices are in the local graph's indexing."""

    label: str
    vertices: tuple[int, ...]


CaseTrace = tuple[CaseStep, ...]


def _bump_recursion_limit(n: int) -> None:
    need = 8 * n + 2000
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def _dump_problem(graph: PlaneGraph, path: PrecoloredPath, reason: str) -> str:
    from .formats import GraphDocument, GraphFormat, serialize

    doc = GraphDocument(graph=graph, path=path)
    text = serialize(doc, GraphFormat.ROTATION_TEXT).decode()
    try:
        with tempfile.NamedTemporaryFile(
            "w", prefix="fum-exhaustion-", suffix=".rot", delete=False
        ) as fh:
            fh.write(text)
            loc = fh.name
    except OSError:
        loc = "<unwritable>"
    return f"{reason}; problem dumped to {loc}:\n{text}"


def _exhaust(graph: PlaneGraph, path: PrecoloredPath, reason: str) -> InternalCaseExhaustion:
    return InternalCaseExhaustion(_dump_problem(graph, path, reason))


def check_transfer(
    subgraph: PlaneGraph,
    new_path: PrecoloredPath,
    parent: ExtensionProblem,
    vertex_map: Sequence[int] | None = None,
) -> bool:
    """Precoloring-transfer condition for recursing into ``subgraph``.

    Every newly precolored vertex (not already on the parent path) must
    have lost a neighbor whenever its degree in the subgraph is 3, and the
    subgraph's own X set must still induce a star forest.  ``vertex_map``
    maps subgraph indices back to parent indices (identity by default).
    """
    vm = list(vertex_map) if vertex_map is not None else list(range(subgraph.n))
    parent_path_vertices = parent.path.vertex_set
    for v in new_path.vertices:
        pv = vm[v]
        if pv in parent_path_vertices:
            continue
        if subgraph.degree(v) == 3 and subgraph.degree(v) >= parent.graph.degree(pv):
            return False
    xs = compute_xset(subgraph, new_path, include_path_degree3=True)
    return xs.induced_class is InducedClass.STAR_FOREST


def fum_color_star_forest(graph: PlaneGraph) -> tuple[dict[int, int], CaseTrace]:
    """FUM 4-coloring of a plane graph whose degree->=4 set induces a star forest."""
    xs = compute_xset(graph)
    if xs.induced_class is not InducedClass.STAR_FOREST:
        raise HypothesisViolated(
            f"degree->=4 vertices {sorted(xs.members)} induce {xs.induced_class.value}"
        )
    if graph.n == 0:
        return {}, ()
    _bump_recursion_limit(graph.n)
    v = min(graph.outer_vertices)
    kept = [u for u in range(graph.n) if u != v]
    sub = induced_plane_subgraph(graph, kept)
    sub_coloring, trace = extend_precoloring(ExtensionProblem(sub, EMPTY_PATH))
    coloring = {kept[i]: c for i, c in sub_coloring.items()}
    coloring[v] = 4
    report = verify_fum(graph, coloring, Scope.ALL)
    if not report.overall:
        raise ChildContractFailure(f"final coloring failed: {report.failures()}")
    return coloring, trace


def extend_precoloring(problem: ExtensionProblem) -> tuple[dict[int, int], CaseTrace]:
    """Extend the precolored path across the whole graph; verified on return."""
    graph, path = problem.graph, problem.path
    path.validate_on(graph)
    xs = compute_xset(graph, path, include_path_degree3=True)
    if xs.induced_class is not InducedClass.STAR_FOREST:
        raise HypothesisViolated(
            f"X set {sorted(xs.members)} induces {xs.induced_class.value}"
        )
    _bump_recursion_limit(graph.n)
    trace: list[CaseStep] = []
    coloring = _extend(graph, path, problem.depth, trace)
    report = verify_extension(graph, path, coloring)
    if not report.overall:
        raise ChildContractFailure(f"extension failed: {report.failures()}")
    return coloring, tuple(trace)


# --- recursion ----------------------------------------------------------------


def _recurse(
    graph: PlaneGraph,
    parent_path: PrecoloredPath,
    kept: Sequence[int],
    child_path: PrecoloredPath,
    depth: int,
    trace: list[CaseStep],
) -> dict[int, int]:
    """Solve the extension problem on graph[kept]; returns parent-indexed colors."""
    kept = sorted(kept)
    rank = {v: i for i, v in enumerate(kept)}
    sub = induced_plane_subgraph(graph, kept)
    try:
        local_path = PrecoloredPath(
            tuple(rank[v] for v in child_path.vertices), child_path.colors
        )
        local_path.validate_on(sub)
    except InvalidPrecoloredPath as exc:
        raise _exhaust(graph, parent_path, f"child path invalid: {exc}") from exc
    parent_problem = ExtensionProblem(graph, parent_path, depth)
    if not check_transfer(sub, local_path, parent_problem, vertex_map=kept):
        raise _exhaust(graph, parent_path, "precoloring transfer check failed")
    sub_coloring = _extend(sub, local_path, depth + 1, trace)
    report = verify_extension(sub, local_path, sub_coloring)
    if not report.overall:
        raise ChildContractFailure(f"child contract failed: {report.failures()}")
    return {kept[i]: c for i, c in sub_coloring.items()}


def _extend(
    graph: PlaneGraph,
    path: PrecoloredPath,
    depth: int,
    trace: list[CaseStep],
) -> dict[int, int]:
    n = graph.n
    all_vertices = set(range(n))
    path_set = path.vertex_set

    # 1: one recursion per component; the path stays with its own component
    comps = graph.components
    if len(comps) > 1:
        trace.append(CaseStep(COMPONENTS, tuple(c[0] for c in comps)))
        coloring: dict[int, int] = {}
        for comp in comps:
            sub_path = path if path_set and path_set <= set(comp) else EMPTY_PATH
            coloring.update(_recurse(graph, path, comp, sub_path, depth, trace))
        return coloring

    # 2: no internal faces means a tree; greedy proper coloring in {1,2,3}
    if not graph.face_set.internal_ids:
        trace.append(CaseStep(TREE_BASE, path.vertices))
        return _tree_coloring(graph, path)

    boundary = classify_boundary(graph)

    # 3: pinched outer walk; split at the cut vertex
    if isinstance(boundary, WalkWithCutVertex):
        v = boundary.vertex
        yprime, z = split_at_separator(graph, (v,), path.vertices)
        if len(yprime) >= n or len(z) >= n:
            raise _exhaust(graph, path, f"degenerate split at cut vertex {v}")
        trace.append(CaseStep(CUT_VERTEX, (v,)))
        first = _recurse(graph, path, yprime, path, depth, trace)
        handoff = PrecoloredPath((v,), (first[v],))
        second = _recurse(graph, path, z, handoff, depth, trace)
        assert second[v] == first[v]
        return {**second, **first}

    assert isinstance(boundary, Cycle)
    cyc = boundary.vertices
    cyc_set = set(cyc)
    pos = {v: i for i, v in enumerate(cyc)}
    k = len(cyc)

    # 4: split along a chord of the outer cycle
    chords = chords_of_outer_cycle(graph)
    if chords:
        u, v = chords[0]
        yprime, z = split_at_separator(graph, (u, v), path.vertices)
        if len(yprime) >= n or len(z) >= n:
            raise _exhaust(graph, path, f"degenerate split at chord {u},{v}")
        trace.append(CaseStep(CHORD, (u, v)))
        first = _recurse(graph, path, yprime, path, depth, trace)
        handoff = PrecoloredPath((u, v), (first[u], first[v]))
        second = _recurse(graph, path, z, handoff, depth, trace)
        assert second[u] == first[u] and second[v] == first[v]
        return {**second, **first}

    # 5: the whole graph is a cycle
    if k == n:
        trace.append(CaseStep(CYCLE_BASE, (cyc[0],)))
        return _cycle_coloring(cyc, path)

    # 6: a non-precolored 2- or 3-vertex on the boundary
    low = sorted(v for v in cyc if v not in path_set and graph.degree(v) in (2, 3))
    if low:
        v = low[0]
        if graph.degree(v) == 2:
            u = _inner_face_pick(graph, path, v, cyc_set)
        else:
            off = [w for w in graph.rotations[v] if w not in cyc_set]
            if len(off) != 1:
                raise _exhaust(graph, path, f"3-vertex {v} lacks a unique interior neighbor")
            u = off[0]
        trace.append(CaseStep(LOW_DEGREE_VERTEX, (v, u)))
        coloring = _recurse(graph, path, all_vertices - {u, v}, path, depth, trace)
        coloring[u] = 4
        w1, w2 = cyc[(pos[v] - 1) % k], cyc[(pos[v] + 1) % k]
        coloring[v] = min({1, 2, 3} - {coloring[w1], coloring[w2]})
        return coloring

    boundary_free = [v for v in cyc if v not in path_set]

    # 7: exactly three non-precolored boundary vertices (all of degree >= 4)
    if len(boundary_free) == 3:
        if not path.vertices:
            raise _exhaust(graph, path, "empty path with three high boundary vertices")
        i_first, i_last = _path_block(cyc, path, graph, path_set)
        p_first, p_last = cyc[i_first], cyc[i_last]
        if any(graph.degree(p) != 2 for p in path.vertices):
            raise _exhaust(graph, path, "path vertex of degree != 2 in three-high case")
        v1, v2, v3 = (cyc[(i_last + j) % k] for j in (1, 2, 3))
        u = _inner_face_pick(graph, path, p_last, cyc_set)
        col_v2 = path.color_of(p_last)
        col_v3 = min({1, 2, 3} - {path.color_of(p_first), col_v2})
        trace.append(CaseStep(THREE_HIGH_ON_C, (p_first, p_last, v1, v2, v3, u)))
        handoff = PrecoloredPath((v2, v3), (col_v2, col_v3))
        coloring = _recurse(
            graph, path, all_vertices - {p_first, p_last, u}, handoff, depth, trace
        )
        for p, c in path.items():
            coloring[p] = c
        coloring[u] = 4
        return coloring

    # 8: the path is two 2-vertices
    if len(path) == 2 and all(graph.degree(p) == 2 for p in path.vertices):
        if len(boundary_free) not in (1, 2):
            raise _exhaust(graph, path, "unexpected boundary size in two-2-vertex case")
        i_first, i_last = _path_block(cyc, path, graph, path_set)
        p_first, p_last = cyc[i_first], cyc[i_last]
        u = _inner_face_pick(graph, path, p_last, cyc_set)
        if len(boundary_free) == 1:
            w = boundary_free[0]
            col_w = min({1, 2, 3} - {path.color_of(p_first), path.color_of(p_last)})
            handoff = PrecoloredPath((w,), (col_w,))
            involved = (p_first, p_last, w, u)
        else:
            near_first = cyc[(i_first - 1) % k]
            near_last = cyc[(i_last + 1) % k]
            col_nf = min({1, 2, 3} - {path.color_of(p_first)})
            col_nl = min({1, 2, 3} - {path.color_of(p_last), col_nf})
            handoff = PrecoloredPath((near_first, near_last), (col_nf, col_nl))
            involved = (p_first, p_last, near_first, near_last, u)
        trace.append(CaseStep(TWO_TWO_P, involved))
        coloring = _recurse(
            graph, path, all_vertices - {p_first, p_last, u}, handoff, depth, trace
        )
        for p, c in path.items():
            coloring[p] = c
        coloring[u] = 4
        return coloring

    # 9: a 4-cycle boundary with one precolored 2-vertex
    if k == 4:
        if len(path) != 2:
            raise _exhaust(graph, path, "4-cycle boundary without a 2-vertex path")
        twos = [p for p in path.vertices if graph.degree(p) == 2]
        if len(twos) != 1:
            raise _exhaust(graph, path, "expected exactly one 2-vertex on the path")
        p2 = twos[0]
        p1 = next(p for p in path.vertices if p != p2)
        v1 = next(w for w in (cyc[(pos[p2] - 1) % k], cyc[(pos[p2] + 1) % k]) if w != p1)
        v2 = next(w for w in (cyc[(pos[p1] - 1) % k], cyc[(pos[p1] + 1) % k]) if w != p2)
        u = _inner_face_pick(graph, path, p2, cyc_set)
        trace.append(CaseStep(FOUR_CYCLE_C, (p1, p2, v1, v2, u)))
        handoff = PrecoloredPath((p1, v2), (path.color_of(p1), path.color_of(p2)))
        coloring = _recurse(graph, path, all_vertices - {p2, u}, handoff, depth, trace)
        coloring[p2] = path.color_of(p2)
        coloring[u] = 4
        return coloring

    # 10: a triangle boundary with a precolored 2-vertex
    twos = sorted(p for p in path.vertices if graph.degree(p) == 2)
    if twos and k == 3:
        p = twos[0]
        rest = [cyc[(pos[p] + 1) % 3], cyc[(pos[p] + 2) % 3]]
        if len(path) == 2:
            v2 = next(q for q in path.vertices if q != p)
            v1 = next(w for w in rest if w != v2)
            if v1 in path_set:
                raise _exhaust(graph, path, "no boundary vertex outside the path")
            col_v1 = min({1, 2, 3} - {path.color_of(p), path.color_of(v2)})
            handoff = PrecoloredPath((v1, v2), (col_v1, path.color_of(v2)))
        else:
            v1, v2 = rest
            col_v2 = min({1, 2, 3} - {path.color_of(p)})
            col_v1 = min({1, 2, 3} - {path.color_of(p), col_v2})
            handoff = PrecoloredPath((v1, v2), (col_v1, col_v2))
        u = _inner_face_pick(graph, path, p, cyc_set)
        trace.append(CaseStep(TWO_VERTEX_IN_P, (p, v1, v2, u)))
        coloring = _recurse(graph, path, all_vertices - {p, u}, handoff, depth, trace)
        coloring[p] = path.color_of(p)
        coloring[u] = 4
        return coloring

    # 11: unreachable while the entry hypothesis holds
    raise _exhaust(graph, path, "no dispatch case applies")


# --- case helpers --------------------------------------------------------------


def _path_block(
    cyc: tuple[int, ...],
    path: PrecoloredPath,
    graph: PlaneGraph,
    path_set: frozenset[int],
) -> tuple[int, int]:
    """Positions of the path on the boundary cycle, in walk order."""
    pos = {v: i for i, v in enumerate(cyc)}
    k = len(cyc)
    if len(path) == 1:
        i = pos[path.vertices[0]]
        return i, i
    a, b = path.vertices
    ia, ib = pos[a], pos[b]
    if (ia + 1) % k == ib:
        return ia, ib
    if (ib + 1) % k == ia:
        return ib, ia
    raise _exhaust(graph, path, "path not consecutive on the boundary cycle")


def _inner_face_pick(
    graph: PlaneGraph, path: PrecoloredPath, v: int, cyc_set: set[int]
) -> int:
    """Interior helper vertex for a degree-2 boundary vertex ``v``.

    Returns the smallest vertex on v's unique internal face that is not on
    the boundary cycle.  Deleting v merges exactly that face into the outer
    region, so the chosen vertex lies on the outer face of the reduced
    graph, and coloring it 4 later restores a unique maximum on every face
    the deletions disturbed.
    """
    ring = graph.rotations[v]
    if len(ring) != 2:
        raise _exhaust(graph, path, f"vertex {v} is not a 2-vertex")
    owner = graph.face_set.dart_to_face
    outer_ids = set(graph.face_set.outer_all)
    inner = {owner[(v, ring[0])], owner[(v, ring[1])]} - outer_ids
    if len(inner) != 1:
        raise _exhaust(graph, path, f"2-vertex {v} lacks a unique internal face")
    face = graph.face_set.faces[inner.pop()]
    candidates = sorted(face.vertex_set - cyc_set)
    if not candidates:
        raise _exhaust(graph, path, f"internal face at {v} has no interior vertex")
    return candidates[0]


def _tree_coloring(graph: PlaneGraph, path: PrecoloredPath) -> dict[int, int]:
    coloring = dict(path.items())
    queue: deque[int] = deque(path.vertices)
    if not path.vertices and graph.n:
        coloring[0] = 1
        queue.append(0)
    seen = set(coloring)
    while queue:
        u = queue.popleft()
        for w in graph.rotations[u]:
            if w in seen:
                continue
            seen.add(w)
            used = {coloring[x] for x in graph.rotations[w] if x in coloring}
            coloring[w] = min(c for c in (1, 2, 3) if c not in used)
            queue.append(w)
    assert len(coloring) == graph.n
    return coloring


def _cycle_coloring(cyc: tuple[int, ...], path: PrecoloredPath) -> dict[int, int]:
    """Color a bare cycle: one 3, the rest alternating 1 and 2.

    The vertex colored 3 absorbs any parity break; if the path already uses
    only {1,2} the alternation phase is locked to it.
    """
    k = len(cyc)
    coloring = dict(path.items())
    anchor = next((v for v, c in path.items() if c == 3), None)
    if anchor is None:
        anchor = min(v for v in cyc if v not in path.vertex_set)
        coloring[anchor] = 3
    pos = {v: i for i, v in enumerate(cyc)}
    seq = [cyc[(pos[anchor] + j) % k] for j in range(1, k)]
    even_color = 1
    for j, v in enumerate(seq):
        if v in coloring and coloring[v] in (1, 2):
            even_color = coloring[v] if j % 2 == 0 else 3 - coloring[v]
            break
    for j, v in enumerate(seq):
        want = even_color if j % 2 == 0 else 3 - even_color
        if v in coloring:
            assert coloring[v] == want
        else:
            coloring[v] = want
    return coloring

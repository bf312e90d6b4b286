"""Combinatorial plane graphs encoded as rotation systems.

A plane graph is stored as, for each vertex, the cyclic sequence of its
neighbors in counterclockwise embedding order.  Faces are orbits of darts
(directed edges) under one fixed rule: after traversing the dart u -> v,
continue with v -> w where w is the successor of u in the rotation at v.
This makes the face structure, and in particular the designated outer
face, a deterministic function of the input with no geometry involved.

For a disconnected graph every component is taken to be drawn side by
side in the shared unbounded region, so each component with edges owns
exactly one "outer" orbit; ``FaceSet.outer_all`` collects them and
``FaceSet.outer`` is the designated primary one (vertex 0's component by
default, overridable at build time).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    AsymmetricRotation,
    DuplicateNeighbor,
    IndexOutOfRange,
    NonPlanarEmbedding,
    NotACycleBoundary,
    NotASeparator,
    SelfLoop,
)

Dart = tuple[int, int]


@dataclass(frozen=True)
class Face:
    """One face: a closed walk of darts plus the distinct vertices on it."""

    walk: tuple[Dart, ...]
    vertex_set: frozenset[int]

    def __len__(self) -> int:
        return len(self.walk)


@dataclass(frozen=True)
class FaceSet:
    """All faces of an embedding with the outer designation.

    ``outer`` is the primary outer face (or None for the empty graph);
    ``outer_all`` lists the outer orbit of every component with edges.
    """

    faces: tuple[Face, ...]
    outer: int | None
    outer_all: tuple[int, ...]

    @cached_property
    def dart_to_face(self) -> dict[Dart, int]:
        owner: dict[Dart, int] = {}
        for i, face in enumerate(self.faces):
            for dart in face.walk:
                owner[dart] = i
        return owner

    @property
    def internal_ids(self) -> tuple[int, ...]:
        skip = set(self.outer_all)
        return tuple(i for i in range(len(self.faces)) if i not in skip)


@dataclass(frozen=True)
class PlaneGraph:
    """Immutable plane graph; all operations on it are pure functions."""

    n: int
    rotations: tuple[tuple[int, ...], ...]
    face_set: FaceSet

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(ring) for ring in self.rotations)

    @cached_property
    def m(self) -> int:
        return sum(len(ring) for ring in self.rotations) // 2

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        out = []
        for v, ring in enumerate(self.rotations):
            for w in ring:
                if v < w:
                    out.append((v, w))
        return tuple(sorted(out))

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            comp = []
            queue = deque([start])
            seen[start] = True
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in self.rotations[u]:
                    if not seen[w]:
                        seen[w] = True
                        queue.append(w)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @property
    def faces(self) -> tuple[Face, ...]:
        return self.face_set.faces

    def internal_faces(self) -> tuple[Face, ...]:
        return tuple(self.face_set.faces[i] for i in self.face_set.internal_ids)

    @cached_property
    def outer_vertices(self) -> frozenset[int]:
        """Vertices incident to the unbounded region, isolated ones included."""
        verts: set[int] = set()
        for i in self.face_set.outer_all:
            verts.update(self.face_set.faces[i].vertex_set)
        for v in range(self.n):
            if not self.rotations[v]:
                verts.add(v)
        return frozenset(verts)

    def outer_walk(self) -> tuple[Dart, ...]:
        if self.face_set.outer is None:
            return ()
        return self.face_set.faces[self.face_set.outer].walk


# --- boundary classification -------------------------------------------------


@dataclass(frozen=True)
class Cycle:
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class WalkWithCutVertex:
    vertex: int


@dataclass(frozen=True)
class NoInternalFaces:
    pass


@dataclass(frozen=True)
class Disconnected:
    components: tuple[tuple[int, ...], ...]


BoundaryClass = Cycle | WalkWithCutVertex | NoInternalFaces | Disconnected


# --- face tracing ------------------------------------------------------------


def _trace_orbits(rotations: Sequence[Sequence[int]]) -> list[tuple[Dart, ...]]:
    succ: dict[Dart, Dart] = {}
    for v, ring in enumerate(rotations):
        deg = len(ring)
        for i, u in enumerate(ring):
            succ[(u, v)] = (v, ring[(i + 1) % deg])
    orbits: list[tuple[Dart, ...]] = []
    seen: set[Dart] = set()
    for v, ring in enumerate(rotations):
        for w in ring:
            dart = (v, w)
            if dart in seen:
                continue
            walk = []
            cur = dart
            while cur not in seen:
                seen.add(cur)
                walk.append(cur)
                cur = succ[cur]
            orbits.append(tuple(walk))
    return orbits


def _component_labels(rotations: Sequence[Sequence[int]]) -> list[int]:
    n = len(rotations)
    label = [-1] * n
    nxt = 0
    for start in range(n):
        if label[start] != -1:
            continue
        label[start] = nxt
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in rotations[u]:
                if label[w] == -1:
                    label[w] = nxt
                    queue.append(w)
        nxt += 1
    return label


def _default_dart(rotations: Sequence[Sequence[int]], vertices: Iterable[int]) -> Dart | None:
    for v in sorted(vertices):
        if rotations[v]:
            return (v, min(rotations[v]))
    return None


def _face_set_from_rotations(
    rotations: Sequence[tuple[int, ...]],
    primary_dart: Dart | None = None,
    extra_candidates: Sequence[Dart] = (),
) -> FaceSet:
    """Trace orbits and designate outer faces.

    ``primary_dart`` fixes the primary outer orbit; ``extra_candidates`` are
    tried in order to designate the outer orbit of further components (used
    when a subgraph inherits its outer faces from a parent graph).  Any
    component still undesignated falls back to the orbit of its
    lexicographically smallest dart.
    """
    n = len(rotations)
    if not any(rotations):
        if n == 0:
            return FaceSet((), None, ())
        return FaceSet((Face((), frozenset()),), 0, (0,))

    orbits = _trace_orbits(rotations)
    faces = tuple(Face(walk, frozenset(u for u, _ in walk)) for walk in orbits)
    owner: dict[Dart, int] = {}
    for i, face in enumerate(faces):
        for dart in face.walk:
            owner[dart] = i
    comp = _component_labels(rotations)
    ncomp = max(comp) + 1

    designated: dict[int, int] = {}
    primary: int | None = None

    def try_dart(dart: Dart) -> None:
        nonlocal primary
        face_id = owner.get(dart)
        if face_id is None:
            return
        c = comp[dart[0]]
        if c not in designated:
            designated[c] = face_id
            if primary is None:
                primary = face_id

    if primary_dart is None:
        primary_dart = _default_dart(rotations, range(n))
    try_dart(primary_dart)  # type: ignore[arg-type]
    for dart in extra_candidates:
        try_dart(dart)

    # default rule per component still lacking a designation
    by_comp: dict[int, list[int]] = {}
    for v in range(n):
        by_comp.setdefault(comp[v], []).append(v)
    for c in range(ncomp):
        if c in designated:
            continue
        dart = _default_dart(rotations, by_comp[c])
        if dart is not None:
            designated[c] = owner[dart]

    outer_all = tuple(sorted(set(designated.values())))
    assert primary is not None
    return FaceSet(faces, primary, outer_all)


# --- construction ------------------------------------------------------------


def build_plane_graph(
    n: int,
    rotations: Sequence[Sequence[int]],
    outer_dart: Dart | None = None,
) -> PlaneGraph:
    """Validate a rotation system and return it with faces traced.

    Rejects self-loops, repeated neighbors, asymmetric rotations and any
    embedding whose components fail Euler's formula.  ``outer_dart``
    overrides the default outer-face designation (the face traced from the
    lexicographically smallest dart of vertex 0).
    """
    rots = tuple(tuple(ring) for ring in rotations)
    if len(rots) != n:
        raise IndexOutOfRange(f"expected {n} rotations, got {len(rots)}")
    for v, ring in enumerate(rots):
        for u in ring:
            if not 0 <= u < n:
                raise IndexOutOfRange(f"vertex {v} lists neighbor {u} outside [0, {n})")
            if u == v:
                raise SelfLoop(f"vertex {v} lists itself")
        if len(set(ring)) != len(ring):
            raise DuplicateNeighbor(f"vertex {v} repeats a neighbor in {ring}")
    neighbor_sets = [set(ring) for ring in rots]
    for v, ring in enumerate(rots):
        for u in ring:
            if v not in neighbor_sets[u]:
                raise AsymmetricRotation(f"{v} lists {u} but {u} does not list {v}")

    if outer_dart is not None:
        u, v = outer_dart
        if not (0 <= u < n) or v not in neighbor_sets[u]:
            raise IndexOutOfRange(f"outer dart {outer_dart} is not a dart of the graph")

    face_set = _face_set_from_rotations(rots, outer_dart)
    _check_euler(rots, face_set)
    return PlaneGraph(n, rots, face_set)


def _check_euler(rotations: tuple[tuple[int, ...], ...], face_set: FaceSet) -> None:
    comp = _component_labels(rotations)
    ncomp = (max(comp) + 1) if comp else 0
    nverts = [0] * ncomp
    degsum = [0] * ncomp
    nfaces = [0] * ncomp
    for v in range(len(rotations)):
        nverts[comp[v]] += 1
        degsum[comp[v]] += len(rotations[v])
    for face in face_set.faces:
        if face.walk:
            nfaces[comp[face.walk[0][0]]] += 1
    for c in range(ncomp):
        m_c = degsum[c] // 2
        if m_c == 0:
            continue  # isolated vertex, trivially planar
        if nverts[c] - m_c + nfaces[c] != 2:
            raise NonPlanarEmbedding(
                f"component {c}: n={nverts[c]} m={m_c} f={nfaces[c]} violates Euler"
            )


def trace_faces(graph: PlaneGraph) -> FaceSet:
    """Re-trace all faces of ``graph``; deterministic for identical input."""
    fs = graph.face_set
    primary = None
    if fs.outer is not None and fs.faces[fs.outer].walk:
        primary = fs.faces[fs.outer].walk[0]
    return _face_set_from_rotations(graph.rotations, primary)


# --- boundary structure ------------------------------------------------------


def classify_boundary(graph: PlaneGraph) -> BoundaryClass:
    """Classify the outer boundary: disconnected, tree-like, pinched or a cycle."""
    if len(graph.components) > 1:
        return Disconnected(graph.components)
    if not graph.face_set.internal_ids:
        return NoInternalFaces()
    seen: set[int] = set()
    order: list[int] = []
    for u, _ in graph.outer_walk():
        if u in seen:
            return WalkWithCutVertex(u)
        seen.add(u)
        order.append(u)
    return Cycle(tuple(order))


def chords_of_outer_cycle(graph: PlaneGraph) -> list[tuple[int, int]]:
    """All edges joining two non-consecutive vertices of the outer cycle."""
    boundary = classify_boundary(graph)
    if not isinstance(boundary, Cycle):
        raise NotACycleBoundary(f"boundary is {type(boundary).__name__}")
    cyc = boundary.vertices
    pos = {v: i for i, v in enumerate(cyc)}
    k = len(cyc)
    chords = []
    for u, v in graph.edges:
        if u in pos and v in pos:
            gap = abs(pos[u] - pos[v])
            if gap not in (1, k - 1):
                chords.append((u, v))
    return sorted(chords)


# --- interior closure and splits ---------------------------------------------


def interior_closure(graph: PlaneGraph, vertices: Iterable[int]) -> frozenset[int]:
    """Close a vertex set under "drawn inside an internal face of its induced subgraph".

    Returns Y plus every vertex of the graph lying strictly inside some
    bounded region of the drawing of G[Y].  Computed by merging the faces of
    G across every edge that G[Y] does not keep; regions not containing the
    unbounded one are interior.
    """
    y = frozenset(vertices)
    if not y:
        raise ValueError("interior_closure requires a nonempty vertex set")
    fs = graph.face_set
    owner = fs.dart_to_face
    parent = list(range(len(fs.faces)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for u, v in graph.edges:
        if u not in y or v not in y:
            a, b = find(owner[(u, v)]), find(owner[(v, u)])
            if a != b:
                parent[a] = b

    outer_classes = {find(i) for i in fs.outer_all}
    closure = set(y)
    for x in range(graph.n):
        if x in y or not graph.rotations[x]:
            continue
        face = owner[(x, graph.rotations[x][0])]
        if find(face) not in outer_classes:
            closure.add(x)
    return frozenset(closure)


def induced_plane_subgraph(graph: PlaneGraph, vertices: Iterable[int]) -> PlaneGraph:
    """Induced subgraph with the embedding inherited from the parent.

    Vertices are relabeled to 0..k-1 in increasing order of their original
    index (``sorted(vertices)`` is the new-to-old map).  The outer face of
    each component is the face containing the first surviving dart of the
    parent's outer walk; components exposed by deletion fall back to darts
    of parent faces incident to deleted vertices.
    """
    s = frozenset(vertices)
    for v in s:
        if not 0 <= v < graph.n:
            raise IndexOutOfRange(f"vertex {v} outside graph")
    kept = sorted(s)
    rank = {v: i for i, v in enumerate(kept)}
    rots = tuple(
        tuple(rank[w] for w in graph.rotations[v] if w in s) for v in kept
    )

    fs = graph.face_set
    candidates: list[Dart] = []
    if fs.outer is not None:
        order = [fs.outer] + [i for i in fs.outer_all if i != fs.outer]
        for i in order:
            candidates.extend(fs.faces[i].walk)
    deleted = set(range(graph.n)) - s
    if deleted:
        for face in fs.faces:
            if face.vertex_set & deleted:
                candidates.extend(face.walk)

    surviving = [
        (rank[u], rank[v]) for (u, v) in candidates if u in s and v in s
    ]
    primary = surviving[0] if surviving else None
    face_set = _face_set_from_rotations(rots, primary, surviving)
    sub = PlaneGraph(len(kept), rots, face_set)
    _check_euler(rots, face_set)
    return sub


def split_at_separator(
    graph: PlaneGraph,
    separator: Sequence[int],
    path_vertices: Iterable[int] = (),
) -> tuple[frozenset[int], frozenset[int]]:
    """Split at a cut vertex or a chord's endpoints.

    Returns (Yprime, Z): Yprime is the separator plus the component of
    G - separator meeting ``path_vertices`` (or the smallest-index component
    if none does), closed under interior_closure; Z is everything else plus
    the separator.  Their union is V and their intersection is exactly the
    separator.
    """
    sep = tuple(dict.fromkeys(separator))
    if not 1 <= len(sep) <= 2:
        raise NotASeparator(f"separator must have 1 or 2 vertices, got {sep}")
    for v in sep:
        if not 0 <= v < graph.n:
            raise IndexOutOfRange(f"separator vertex {v} outside graph")
    sep_set = set(sep)
    rest = [v for v in range(graph.n) if v not in sep_set]
    if not rest:
        raise NotASeparator("separator covers the whole graph")

    comp: dict[int, int] = {}
    comps: list[list[int]] = []
    for start in rest:
        if start in comp:
            continue
        cid = len(comps)
        comp[start] = cid
        queue = deque([start])
        members = [start]
        while queue:
            u = queue.popleft()
            for w in graph.rotations[u]:
                if w in sep_set or w in comp:
                    continue
                comp[w] = cid
                members.append(w)
                queue.append(w)
        comps.append(sorted(members))
    if len(comps) < 2:
        raise NotASeparator(f"{sep} does not disconnect the graph")

    anchored = [v for v in path_vertices if v not in sep_set]
    if anchored:
        cids = {comp[v] for v in anchored}
        if len(cids) != 1:
            raise NotASeparator("path vertices straddle the separator")
        target = comps[cids.pop()]
    else:
        target = min(comps, key=lambda c: c[0])

    yprime = interior_closure(graph, sep_set | set(target))
    z = frozenset(set(range(graph.n)) - yprime) | sep_set
    assert yprime | z == set(range(graph.n))
    assert yprime & z == sep_set
    return yprime, frozenset(z)

"""Instance supply: planar_code parsing, enumeration, random graphs, searches.

The planar_code wire format: the ASCII header ">>planar_code<<" followed
by graph records; each record is a vertex-count byte then, per vertex,
its neighbors in rotation order (1-indexed bytes), each list terminated
by a zero byte.  Only the one-byte encoding (n < 256) is supported.

The internal enumerator produces all connected simple plane graphs (one
representative per isomorphism class of embedded graphs, mirror images
identified) by expanding every abstract connected graph into its genus-0
rotation systems.  An ``abstract_filter`` prunes before the expensive
expansion; it must only test embedding-independent properties.
"""

from __future__ import annotations

import concurrent.futures
import enum
import json
import random
import time
from collections import deque
from dataclasses import dataclass
from itertools import permutations, product
from typing import BinaryIO, Callable, Iterable, Iterator, Sequence

from . import _smallgraphs as sg
from .errors import (
    BadHeader,
    GraphInputError,
    IndexOutOfRange,
    TruncatedGraph,
    UnrepresentableInFormat,
)
from .exact_solver import ChiFumResult, Limits, Status, chi_fum
from .fum_core import InducedClass, compute_xset, is_star_forest
from .plane_graph import PlaneGraph, _trace_orbits, build_plane_graph

PLANAR_CODE_HEADER = b">>planar_code<<"


# --- planar_code --------------------------------------------------------------


def parse_planar_code(
    data: bytes | BinaryIO, lenient: bool = False
) -> Iterator[PlaneGraph]:
    """Yield validated plane graphs from a planar_code stream.

    In lenient mode, graphs that fail validation (non-simple, asymmetric,
    nonplanar) are skipped; structural stream errors are never skippable.
    """
    buf = data if isinstance(data, (bytes, bytearray)) else data.read()
    if not bytes(buf).startswith(PLANAR_CODE_HEADER):
        raise BadHeader("stream does not start with >>planar_code<<")
    i = len(PLANAR_CODE_HEADER)
    total = len(buf)
    while i < total:
        n = buf[i]
        i += 1
        if n == 0:
            raise TruncatedGraph(f"zero vertex count at offset {i - 1}")
        rotations = []
        for _ in range(n):
            ring = []
            while True:
                if i >= total:
                    raise TruncatedGraph("stream ended inside a rotation list")
                b = buf[i]
                i += 1
                if b == 0:
                    break
                if b > n:
                    raise IndexOutOfRange(f"neighbor byte {b} exceeds n={n}")
                ring.append(b - 1)
            rotations.append(tuple(ring))
        try:
            yield build_plane_graph(n, rotations)
        except GraphInputError:
            if not lenient:
                raise


def encode_planar_code(graph: PlaneGraph) -> bytes:
    """Single-graph planar_code record (no header), 1-indexed."""
    if graph.n == 0 or graph.n > 255:
        raise UnrepresentableInFormat(f"planar_code needs 1 <= n <= 255, got {graph.n}")
    out = bytearray([graph.n])
    for ring in graph.rotations:
        out.extend(w + 1 for w in ring)
        out.append(0)
    return bytes(out)


def planar_code_stream(graphs: Iterable[PlaneGraph]) -> bytes:
    out = bytearray(PLANAR_CODE_HEADER)
    for g in graphs:
        out.extend(encode_planar_code(g))
    return bytes(out)


# --- canonical forms ----------------------------------------------------------


def _relabel_code(
    rotations: Sequence[tuple[int, ...]],
    start: tuple[int, int] | None,
    mirror: bool = False,
) -> bytes:
    """planar_code-style bytes after BFS relabeling from a starting dart.

    The rotation of each vertex is read starting at the dart through which
    the vertex was first discovered; vertices are numbered in discovery
    order.  Components not reached from the start are appended from their
    smallest vertex.  This is a complete invariant of the embedded graph
    for a fixed (start, mirror) choice.
    """
    rots = [tuple(reversed(r)) for r in rotations] if mirror else [tuple(r) for r in rotations]
    n = len(rots)
    label: dict[int, int] = {}
    entry: dict[int, int] = {}
    order: list[int] = []

    def bfs(s: int, t: int) -> None:
        label[s] = len(order)
        order.append(s)
        entry[s] = t
        queue = deque([s])
        while queue:
            u = queue.popleft()
            ring = rots[u]
            if ring:
                k = ring.index(entry[u])
                ring = ring[k:] + ring[:k]
            for w in ring:
                if w not in label:
                    label[w] = len(order)
                    order.append(w)
                    entry[w] = u
                    queue.append(w)

    if start is not None:
        bfs(start[0], start[1])
    for v in range(n):
        if v not in label:
            if rots[v]:
                bfs(v, min(rots[v]))
            else:
                label[v] = len(order)
                order.append(v)

    out = bytearray([n])
    for v in order:
        ring = rots[v]
        if ring:
            k = ring.index(entry[v]) if v in entry else 0
            ring = ring[k:] + ring[:k]
        out.extend(label[w] + 1 for w in ring)
        out.append(0)
    return bytes(out)


def canonical_id(graph: PlaneGraph) -> str:
    """Stable per-graph identity: hex of the BFS-relabeled planar_code bytes."""
    if graph.n == 0:
        return "empty"
    start = None
    if graph.rotations[0]:
        start = (0, min(graph.rotations[0]))
    return _relabel_code(graph.rotations, start).hex()


def embedded_cert(rotations: Sequence[tuple[int, ...]]) -> bytes:
    """Canonical form of a connected embedded graph, mirror images identified."""
    best: bytes | None = None
    for mirror in (False, True):
        for v, ring in enumerate(rotations):
            for w in ring:
                cand = _relabel_code(rotations, (v, w), mirror)
                if best is None or cand < best:
                    best = cand
    if best is None:  # edgeless (single vertex)
        best = _relabel_code(rotations, None)
    return best


# --- internal enumerator -------------------------------------------------------


def _plane_embeddings(adj: sg.Adjacency) -> list[PlaneGraph]:
    """All genus-0 rotation systems of a connected abstract graph, up to
    embedded isomorphism (including reflection)."""
    n = len(adj)
    m = sum(len(s) for s in adj) // 2
    if not sg.planar_edge_bound(adj):
        return []
    if m == 0:  # the single-vertex graph has no darts but one face
        return [build_plane_graph(n, [()] * n)]
    choices: list[list[tuple[int, ...]]] = []
    for v in range(n):
        nbrs = sorted(adj[v])
        if len(nbrs) <= 2:
            choices.append([tuple(nbrs)])
        else:
            first = nbrs[0]
            choices.append([(first, *rest) for rest in permutations(nbrs[1:])])
    target_faces = 2 - n + m
    seen: dict[bytes, tuple[tuple[int, ...], ...]] = {}
    for combo in product(*choices):
        if len(_trace_orbits(combo)) != target_faces:
            continue
        cert = embedded_cert(combo)
        if cert not in seen:
            seen[cert] = combo
    out = []
    for cert in sorted(seen):
        code = PLANAR_CODE_HEADER + cert
        out.extend(parse_planar_code(code))
    return out


def enumerate_small(
    n_max: int,
    abstract_filter: Callable[[sg.Adjacency], bool] | None = None,
    max_degree: int | None = None,
) -> Iterator[PlaneGraph]:
    """All connected simple plane graphs with at most n_max vertices.

    One representative per embedded-isomorphism class, deterministic order.
    ``abstract_filter`` (on the abstract adjacency) and ``max_degree`` prune
    graphs before their embeddings are expanded; both must be
    embedding-independent properties.
    """
    if n_max > 7 and max_degree is None and abstract_filter is None:
        raise ValueError("unfiltered enumeration is capped at n_max <= 7")
    for _, adj in sg.connected_graphs(n_max, max_degree_cap=max_degree):
        if abstract_filter is not None and not abstract_filter(adj):
            continue
        yield from _plane_embeddings(adj)


# --- random plane graphs --------------------------------------------------------


@dataclass(frozen=True)
class Triangulation:
    pass


@dataclass(frozen=True)
class TriangulationMinusRandomEdges:
    p: float


RandomModel = Triangulation | TriangulationMinusRandomEdges


def random_plane_graph(
    seed: int, n: int, model: RandomModel = Triangulation()
) -> PlaneGraph:
    """Seeded random plane graph; byte-identical for identical arguments.

    The triangulation model inserts each new vertex into a random internal
    face of the running triangulation, so every face (outer included) stays
    a triangle and m = 3n - 6.  The deletion model then removes each
    non-boundary edge with probability p and deterministically restores the
    cheapest deleted edges needed to stay connected.
    """
    if n < 3:
        raise ValueError("random plane graphs need n >= 3")
    rng = random.Random(seed)
    rotations: list[list[int]] = [[1, 2], [2, 0], [0, 1]]
    # internal faces as dart triples ((a,b),(b,c),(c,a))
    faces: list[tuple[tuple[int, int], ...]] = [((1, 0), (0, 2), (2, 1))]
    for v in range(3, n):
        fi = rng.randrange(len(faces))
        (a, b), (b2, c), (c2, a2) = faces[fi]
        assert b == b2 and c == c2 and a == a2
        rotations[b].insert(rotations[b].index(a) + 1, v)
        rotations[c].insert(rotations[c].index(b) + 1, v)
        rotations[a].insert(rotations[a].index(c) + 1, v)
        rotations.append([a, c, b])
        faces[fi] = ((a, b), (b, v), (v, a))
        faces.append(((b, c), (c, v), (v, b)))
        faces.append(((c, a), (a, v), (v, c)))

    if isinstance(model, TriangulationMinusRandomEdges) and model.p > 0:
        boundary = {(0, 1), (1, 2), (0, 2)}
        edges = sorted(
            (u, w)
            for u in range(n)
            for w in rotations[u]
            if u < w and (u, w) not in boundary
        )
        doomed = [e for e in edges if rng.random() < model.p]
        doomed_set = set(doomed)
        for u, w in doomed:
            rotations[u].remove(w)
            rotations[w].remove(u)
        # deterministically re-add deleted edges bridging components
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u in range(n):
            for w in rotations[u]:
                ru, rw = find(u), find(w)
                if ru != rw:
                    parent[ru] = rw
        for u, w in doomed:
            ru, rw = find(u), find(w)
            if ru != rw:
                parent[ru] = rw
                rotations[u].append(w)
                rotations[w].append(u)
                doomed_set.discard((u, w))

    return build_plane_graph(n, rotations)


# --- hypothesis filters ----------------------------------------------------------


class FilterKind(enum.Enum):
    STAR_FOREST_X = "star-forest-x"
    ACYCLIC_X = "acyclic-x"
    MAX_DEG2_X = "max-deg2-x"
    MAX_DEG3_X = "max-deg3-x"
    CONNECTED_MAX_DEG4 = "connected-max-deg4"
    SUBCUBIC = "subcubic"
    ALL = "all"


def apply_filter(graph: PlaneGraph, kind: FilterKind) -> bool:
    """Pure hypothesis predicate; embedding-independent for every kind."""
    if kind is FilterKind.ALL:
        return True
    if kind is FilterKind.SUBCUBIC:
        return all(graph.degree(v) <= 3 for v in range(graph.n))
    if kind is FilterKind.CONNECTED_MAX_DEG4:
        return len(graph.components) <= 1 and all(
            graph.degree(v) <= 4 for v in range(graph.n)
        )
    xset = compute_xset(graph)
    if kind is FilterKind.STAR_FOREST_X:
        return is_star_forest(graph, xset.members)
    if kind is FilterKind.ACYCLIC_X:
        return xset.induced_class in (InducedClass.STAR_FOREST, InducedClass.ACYCLIC)
    members = xset.members
    maxdeg = max(
        (sum(1 for w in graph.rotations[v] if w in members) for v in members),
        default=0,
    )
    if kind is FilterKind.MAX_DEG2_X:
        return maxdeg <= 2
    if kind is FilterKind.MAX_DEG3_X:
        return maxdeg <= 3
    raise ValueError(f"unknown filter {kind}")


# --- counterexample search -------------------------------------------------------


@dataclass(frozen=True)
class GraphRecord:
    index: int
    graph_id: str
    n: int
    passed_filter: bool
    chi: int | None
    certified: bool
    timed_out: bool
    runtime: float


@dataclass(frozen=True)
class SearchReport:
    source: str
    filter_kind: FilterKind
    threshold: int
    records: tuple[GraphRecord, ...]
    counterexamples: tuple[str, ...]
    witnesses: tuple[tuple[str, tuple[tuple[int, int], ...]], ...]
    total_seconds: float

    @property
    def solved(self) -> int:
        return sum(1 for r in self.records if r.passed_filter)


def _solve_one(
    args: tuple[int, PlaneGraph, FilterKind, int, Limits]
) -> tuple[GraphRecord, tuple[tuple[int, int], ...] | None]:
    index, graph, kind, threshold, limits = args
    gid = canonical_id(graph)
    if not apply_filter(graph, kind):
        return GraphRecord(index, gid, graph.n, False, None, False, False, 0.0), None
    t0 = time.monotonic()
    result: ChiFumResult = chi_fum(graph, threshold, limits)
    dt = time.monotonic() - t0
    timed_out = Status.TIMEOUT in result.statuses
    record = GraphRecord(
        index, gid, graph.n, True, result.value, result.certified, timed_out, dt
    )
    witness = None
    if result.witness is not None:
        witness = tuple(sorted(result.witness.items()))
    return record, witness


def search_counterexamples(
    source: Iterable[PlaneGraph],
    kind: FilterKind,
    threshold: int,
    limits: Limits | None = None,
    source_name: str = "",
    jobs: int = 1,
) -> SearchReport:
    """chi_fum sweep over a graph source, flagging certified exceedances.

    A graph counts as a counterexample only when the solver exhausted every
    budget up to ``threshold`` without timing out; a timeout is recorded as
    such and never treated as an exceedance.
    """
    if threshold < 1:
        raise ValueError("threshold must be at least 1")
    limits = limits or Limits()
    t0 = time.monotonic()
    tasks = [(i, g, kind, threshold, limits) for i, g in enumerate(source)]
    if jobs > 1 and len(tasks) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_solve_one, tasks, chunksize=8))
    else:
        outcomes = [_solve_one(t) for t in tasks]
    outcomes.sort(key=lambda pair: pair[0].index)
    records = tuple(rec for rec, _ in outcomes)
    witnesses = tuple(
        (rec.graph_id, wit) for rec, wit in outcomes if wit is not None
    )
    counterexamples = tuple(
        rec.graph_id
        for rec in records
        if rec.passed_filter and rec.chi is None and rec.certified
    )
    return SearchReport(
        source=source_name,
        filter_kind=kind,
        threshold=threshold,
        records=records,
        counterexamples=counterexamples,
        witnesses=witnesses,
        total_seconds=time.monotonic() - t0,
    )


def format_report(report: SearchReport) -> str:
    """Line-delimited report: one graph per line plus a summary block."""
    lines = []
    for r in report.records:
        chi = str(r.chi) if r.chi is not None else f">{report.threshold}" if r.certified else "unknown"
        lines.append(
            f"id={r.graph_id} n={r.n} filter={int(r.passed_filter)} "
            f"chi={chi if r.passed_filter else '-'} certified={int(r.certified)} "
            f"timeout={int(r.timed_out)} t={r.runtime:.3f}"
        )
    lines.append("# summary")
    lines.append(f"# source={report.source or '-'}")
    lines.append(f"# filter={report.filter_kind.value} threshold={report.threshold}")
    lines.append(f"# graphs={len(report.records)} solved={report.solved}")
    lines.append(f"# counterexamples={len(report.counterexamples)}")
    for gid in report.counterexamples:
        lines.append(f"# counterexample {gid}")
    lines.append(f"# seconds={report.total_seconds:.3f}")
    return "\n".join(lines) + "\n"


def write_report(report: SearchReport, path: str, witness_path: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_report(report))
    if witness_path is not None:
        with open(witness_path, "w", encoding="utf-8") as fh:
            for gid, witness in report.witnesses:
                fh.write(json.dumps({"id": gid, "coloring": dict(witness)}, sort_keys=True))
                fh.write("\n")

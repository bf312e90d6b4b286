"""Exhaustive backtracking solver for FUM colorability and chi_fum.

Ground truth for the rest of the package: every witness is re-verified
before it is returned, and "not colorable" is reported only when the
search completed within its limits.  Vertices are tried in BFS order from
the outer face so faces complete early; a face is pruned as soon as its
maximum is attained twice and no uncolored vertex on it can exceed that
maximum within the color budget.
"""

from __future__ import annotations

import enum
import time
from collections import deque
from dataclasses import dataclass, field

from .errors import FumError
from .fum_core import (
    PrecoloredPath,
    Scope,
    verify_extension,
    verify_fum,
)
from .plane_graph import PlaneGraph


@dataclass(frozen=True)
class Limits:
    max_nodes: int = 5_000_000
    max_seconds: float = 120.0


class Status(enum.Enum):
    COLORABLE = "colorable"
    NOT_COLORABLE = "not_colorable"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class SolveStats:
    nodes: int
    seconds: float


@dataclass(frozen=True)
class SolveResult:
    status: Status
    witness: dict[int, int] | None
    stats: SolveStats


@dataclass(frozen=True)
class ChiFumResult:
    """Result of a chi_fum computation.

    ``value`` is the smallest budget found colorable (None if none up to
    k_max was); ``certified`` means every smaller budget was exhausted
    without timeout, so the value is exact (or, when value is None, that
    chi_fum > k_max is proven).
    """

    value: int | None
    witness: dict[int, int] | None
    certified: bool
    statuses: tuple[Status, ...]
    stats: SolveStats


class _Timeout(Exception):
    pass


class _Search:
    def __init__(
        self,
        graph: PlaneGraph,
        k: int,
        path: PrecoloredPath | None,
        limits: Limits,
    ):
        self.graph = graph
        self.extension_mode = path is not None
        self.path = path if path is not None else PrecoloredPath()
        self.k = min(k, 4) if self.extension_mode else k
        self.limits = limits
        self.nodes = 0
        self.deadline = time.monotonic() + limits.max_seconds

        fs = graph.face_set
        face_vertices = [sorted(fs.faces[i].vertex_set) for i in fs.internal_ids]
        if not self.extension_mode and graph.outer_vertices:
            face_vertices.append(sorted(graph.outer_vertices))
        self.face_vertices = face_vertices
        self.faces_at = [[] for _ in range(graph.n)]
        for fi, verts in enumerate(face_vertices):
            for v in verts:
                self.faces_at[v].append(fi)

        self.remaining = [len(verts) for verts in face_vertices]
        self.face_max = [0] * len(face_vertices)
        self.face_max_count = [0] * len(face_vertices)

        outer = graph.outer_vertices
        self.cap = [
            min(self.k, 3) if (self.extension_mode and v in outer) else self.k
            for v in range(graph.n)
        ]
        self.color = [0] * graph.n
        self.order = self._bfs_order()

    def _bfs_order(self) -> list[int]:
        g = self.graph
        seeds: list[int] = list(self.path.vertices)
        fs = g.face_set
        if fs.outer is not None:
            ids = [fs.outer] + [i for i in fs.outer_all if i != fs.outer]
            for i in ids:
                for u, _ in fs.faces[i].walk:
                    seeds.append(u)
        seeds.extend(v for v in range(g.n) if not g.rotations[v])
        order: list[int] = []
        seen: set[int] = set()
        queue: deque[int] = deque()
        for v in seeds:
            if v not in seen:
                seen.add(v)
                queue.append(v)
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in g.rotations[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        for v in range(g.n):  # safety net; unreachable vertices do not exist
            if v not in seen:
                order.append(v)
        return order

    def run(self) -> SolveResult:
        t0 = time.monotonic()
        try:
            # precolored vertices go first; a path color above budget is a
            # definitive "no" (the search space is empty, not an error)
            feasible = all(c <= self.cap[v] for v, c in self.path.items())
            found = feasible and self._place_precolored(0)
        except _Timeout:
            return SolveResult(
                Status.TIMEOUT, None, SolveStats(self.nodes, time.monotonic() - t0)
            )
        stats = SolveStats(self.nodes, time.monotonic() - t0)
        if not found:
            return SolveResult(Status.NOT_COLORABLE, None, stats)
        witness = {v: self.color[v] for v in range(self.graph.n)}
        self._verify(witness)
        return SolveResult(Status.COLORABLE, witness, stats)

    def _verify(self, witness: dict[int, int]) -> None:
        if self.extension_mode:
            report = verify_extension(self.graph, self.path, witness)
        else:
            report = verify_fum(self.graph, witness, Scope.ALL)
        if not report.overall:
            raise FumError(f"solver produced an invalid witness: {report.failures()}")

    def _place_precolored(self, i: int) -> bool:
        if i == len(self.path.vertices):
            return self._solve(0)
        v, c = self.path.vertices[i], self.path.colors[i]
        ok, undo = self._assign(v, c)
        if ok and self._place_precolored(i + 1):
            return True
        self._undo(v, undo)
        return False

    def _solve(self, idx: int) -> bool:
        n = self.graph.n
        while idx < n and self.color[self.order[idx]] != 0:
            idx += 1
        if idx == n:
            return True
        v = self.order[idx]
        for c in range(1, self.cap[v] + 1):
            self.nodes += 1
            if self.nodes % 1024 == 0:
                if self.nodes > self.limits.max_nodes:
                    raise _Timeout
                if time.monotonic() > self.deadline:
                    raise _Timeout
            ok, undo = self._assign(v, c)
            if ok and self._solve(idx + 1):
                return True
            self._undo(v, undo)
        return False

    def _assign(self, v: int, c: int) -> tuple[bool, list[tuple[int, int, int, int]]]:
        undo: list[tuple[int, int, int, int]] = []
        for w in self.graph.rotations[v]:
            if self.color[w] == c:
                return False, undo
        self.color[v] = c
        for fi in self.faces_at[v]:
            undo.append((fi, self.remaining[fi], self.face_max[fi], self.face_max_count[fi]))
            self.remaining[fi] -= 1
            if c > self.face_max[fi]:
                self.face_max[fi] = c
                self.face_max_count[fi] = 1
            elif c == self.face_max[fi]:
                self.face_max_count[fi] += 1
            if self.face_max_count[fi] >= 2:
                if self.remaining[fi] == 0 or self.face_max[fi] >= self.k:
                    return False, undo
        return True, undo

    def _undo(self, v: int, undo: list[tuple[int, int, int, int]]) -> None:
        self.color[v] = 0
        for fi, rem, mx, cnt in reversed(undo):
            self.remaining[fi] = rem
            self.face_max[fi] = mx
            self.face_max_count[fi] = cnt


def fum_colorable(
    graph: PlaneGraph,
    k: int,
    path: PrecoloredPath | None = None,
    limits: Limits | None = None,
) -> SolveResult:
    """Decide whether a FUM coloring with colors <= k exists.

    With ``path`` set (an extension problem, possibly with an empty path)
    the contract changes: colors are capped at 4, the precoloring is fixed,
    color 4 is banned from the outer face and only internal faces need a
    unique maximum.  A LimitExceeded condition surfaces as Status.TIMEOUT,
    never as a wrong answer.
    """
    if k < 1:
        raise ValueError("color budget must be at least 1")
    if path is not None:
        path.validate_on(graph)
    return _Search(graph, k, path, limits or Limits()).run()


def chi_fum(
    graph: PlaneGraph,
    k_max: int,
    limits: Limits | None = None,
    path: PrecoloredPath | None = None,
) -> ChiFumResult:
    """Smallest k <= k_max admitting a FUM coloring, with witness."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    statuses: list[Status] = []
    nodes = 0
    seconds = 0.0
    certified = True
    for k in range(1, k_max + 1):
        result = fum_colorable(graph, k, path=path, limits=limits)
        statuses.append(result.status)
        nodes += result.stats.nodes
        seconds += result.stats.seconds
        if result.status is Status.TIMEOUT:
            certified = False
        elif result.status is Status.COLORABLE:
            return ChiFumResult(
                k, result.witness, certified, tuple(statuses), SolveStats(nodes, seconds)
            )
    return ChiFumResult(None, None, certified, tuple(statuses), SolveStats(nodes, seconds))

"""Small abstract-graph machinery for the internal enumerator.

Connected simple graphs are generated by vertex augmentation (every
connected graph on k+1 vertices arises from a connected graph on k
vertices by attaching one new vertex), deduplicated per level with a
canonical certificate.  Certificates come from iterated degree refinement
followed by a minimum-adjacency-string search over the refinement-respecting
relabelings; exact and fast enough for the n <= 8 sizes used here.

Graphs are represented as a tuple of frozensets (neighbor sets).
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Callable, Iterator

Adjacency = tuple[frozenset[int], ...]


def graph_from_edges(n: int, edges) -> Adjacency:
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    return tuple(frozenset(s) for s in nbrs)


def edge_list(adj: Adjacency) -> list[tuple[int, int]]:
    return [(u, v) for u in range(len(adj)) for v in adj[u] if u < v]


def max_degree(adj: Adjacency) -> int:
    return max((len(s) for s in adj), default=0)


def is_connected(adj: Adjacency) -> bool:
    n = len(adj)
    if n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def _refine_colors(adj: Adjacency) -> list[int]:
    n = len(adj)
    colors = [len(adj[v]) for v in range(n)]
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)
        ]
        ranking = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [ranking[sigs[v]] for v in range(n)]
        if new == colors:
            return colors
        colors = new


def canonical_cert(adj: Adjacency) -> bytes:
    """Isomorphism-complete certificate of an abstract graph."""
    n = len(adj)
    if n == 0:
        return b"\x00"
    colors = _refine_colors(adj)
    classes: dict[int, list[int]] = {}
    for v in range(n):
        classes.setdefault(colors[v], []).append(v)
    ordered_classes = [classes[c] for c in sorted(classes)]

    best: bytes | None = None
    # all relabelings that respect the refinement classes
    def orderings() -> Iterator[list[int]]:
        def rec(i: int, prefix: list[int]) -> Iterator[list[int]]:
            if i == len(ordered_classes):
                yield prefix
                return
            for perm in permutations(ordered_classes[i]):
                yield from rec(i + 1, prefix + list(perm))

        yield from rec(0, [])

    for order in orderings():
        position = {v: i for i, v in enumerate(order)}
        bits = bytearray()
        acc = 0
        nbits = 0
        for i in range(n):
            for j in range(i + 1, n):
                acc = (acc << 1) | (1 if order[j] in adj[order[i]] else 0)
                nbits += 1
                if nbits == 8:
                    bits.append(acc)
                    acc, nbits = 0, 0
        if nbits:
            bits.append(acc << (8 - nbits))
        cand = bytes([n]) + bytes(bits)
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def connected_graphs(
    n_max: int,
    max_degree_cap: int | None = None,
) -> Iterator[tuple[int, Adjacency]]:
    """All connected simple graphs up to n_max vertices, one per iso class.

    Yields (n, adjacency) in increasing n; deterministic order.  The degree
    cap, when given, restricts the whole enumeration (sound: deleting a
    non-cut vertex never raises a degree).
    """
    if n_max < 1:
        return
    level: dict[bytes, Adjacency] = {canonical_cert((frozenset(),)): (frozenset(),)}
    yield 1, (frozenset(),)
    for n in range(2, n_max + 1):
        nxt: dict[bytes, Adjacency] = {}
        for base in level.values():
            k = len(base)
            attachable = [
                v
                for v in range(k)
                if max_degree_cap is None or len(base[v]) < max_degree_cap
            ]
            max_new = len(attachable)
            if max_degree_cap is not None:
                max_new = min(max_new, max_degree_cap)
            for size in range(1, max_new + 1):
                for subset in combinations(attachable, size):
                    nbrs = [set(s) for s in base] + [set(subset)]
                    for v in subset:
                        nbrs[v].add(k)
                    cand = tuple(frozenset(s) for s in nbrs)
                    cert = canonical_cert(cand)
                    if cert not in nxt:
                        nxt[cert] = cand
        level = nxt
        for cert in sorted(level):
            yield n, level[cert]


# --- abstract predicates used as embedding-independent prefilters --------------


def degree_ge4_set(adj: Adjacency) -> frozenset[int]:
    return frozenset(v for v in range(len(adj)) if len(adj[v]) >= 4)


def induces_star_forest(adj: Adjacency, members: frozenset[int]) -> bool:
    sub = {v: [w for w in adj[v] if w in members] for v in members}
    seen: set[int] = set()
    for start in members:
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in sub[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        m = sum(len(sub[v]) for v in comp) // 2
        if m != len(comp) - 1:
            return False
        if sum(1 for v in comp if len(sub[v]) > 1) > 1:
            return False
    return True


def star_forest_x(adj: Adjacency) -> bool:
    return induces_star_forest(adj, degree_ge4_set(adj))


def planar_edge_bound(adj: Adjacency) -> bool:
    n = len(adj)
    m = sum(len(s) for s in adj) // 2
    return n < 3 or m <= 3 * n - 6

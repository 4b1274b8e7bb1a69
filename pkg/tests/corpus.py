"""Shared test corpus and independent oracles.

The named corpus is the fixed set of small graphs used for exhaustive
cross-checks; the random generator produces seeded connected graphs so
failures reproduce.  Oracles here deliberately avoid the library's
predicate implementations: geodesic membership is decided by explicitly
enumerating shortest paths over the BFS dag.
"""

from __future__ import annotations

import random
from collections import deque
from itertools import combinations

from bfgp.graphs import Graph, build_butterfly, build_cycle, build_path


def _complete(n: int) -> Graph:
    return Graph(n, list(combinations(range(n), 2)))


def _complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i + 1) for i in range(leaves)])


def _grid(rows: int, cols: int) -> Graph:
    def vid(i, j):
        return i * cols + j

    edges = []
    for i in range(rows):
        for j in range(cols):
            if j + 1 < cols:
                edges.append((vid(i, j), vid(i, j + 1)))
            if i + 1 < rows:
                edges.append((vid(i, j), vid(i + 1, j)))
    return Graph(rows * cols, edges)


def _cube() -> Graph:
    edges = [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)]
    return Graph(8, edges)


def _petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, edges)


def named_corpus(max_n: int = 10) -> list[tuple[str, Graph]]:
    """Fixed small-graph corpus, filtered to at most max_n vertices."""
    graphs = [
        ("P1", build_path(1)), ("P2", build_path(2)), ("P3", build_path(3)),
        ("P5", build_path(5)), ("P8", build_path(8)),
        ("C3", build_cycle(3)), ("C4", build_cycle(4)), ("C5", build_cycle(5)),
        ("C6", build_cycle(6)), ("C7", build_cycle(7)), ("C8", build_cycle(8)),
        ("C9", build_cycle(9)), ("C10", build_cycle(10)),
        ("K2", _complete(2)), ("K3", _complete(3)), ("K4", _complete(4)),
        ("K5", _complete(5)),
        ("K23", _complete_bipartite(2, 3)), ("K33", _complete_bipartite(3, 3)),
        ("star5", _star(5)),
        ("grid2x3", _grid(2, 3)), ("grid2x4", _grid(2, 4)), ("grid3x3", _grid(3, 3)),
        ("cube", _cube()), ("petersen", _petersen()),
        ("BF1", build_butterfly(1)),
    ]
    return [(name, g) for name, g in graphs if g.n <= max_n]


def random_connected_graph(n: int, p: float, seed: int) -> Graph:
    """Seeded G(n, p), resampled until connected."""
    rng = random.Random(seed)
    while True:
        edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
        g = Graph(n, edges)
        if _connected(g):
            return g


def random_corpus(count: int, seed: int = 20240, max_n: int = 9) -> list[tuple[str, Graph]]:
    out = []
    for i in range(count):
        n = 4 + i % (max_n - 3)
        p = 0.25 + 0.05 * (i % 10)
        out.append((f"rand{i}(n={n})", random_connected_graph(n, p, seed + i)))
    return out


def _connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    q = deque([0])
    while q:
        u = q.popleft()
        for v in g.adj[u]:
            if v not in seen:
                seen.add(v)
                q.append(v)
    return len(seen) == g.n


def bfs_dist(g: Graph, source: int) -> list[int]:
    """Plain BFS, kept separate from the library on purpose."""
    dist = [-1] * g.n
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        for v in g.adj[u]:
            if dist[v] == -1:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def all_geodesics(g: Graph, x: int, z: int) -> list[tuple[int, ...]]:
    """Every shortest x-z path, by DFS over the BFS dag from x."""
    dist = bfs_dist(g, x)
    if dist[z] == -1:
        return []
    paths = []

    def back(v, suffix):
        if v == x:
            paths.append((x,) + suffix)
            return
        for u in g.adj[v]:
            if dist[u] == dist[v] - 1:
                back(u, (v,) + suffix)

    back(z, ())
    return paths


def on_some_geodesic(g: Graph, x: int, y: int, z: int) -> bool:
    """Oracle for lies_between: y appears on an explicitly enumerated geodesic."""
    return any(y in path for path in all_geodesics(g, x, z))


def oracle_collinear(g: Graph, x: int, y: int, z: int) -> bool:
    return (on_some_geodesic(g, x, y, z) or on_some_geodesic(g, y, x, z)
            or on_some_geodesic(g, x, z, y))

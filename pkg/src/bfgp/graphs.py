"""Graph representation and generators.

Graphs are simple, undirected, immutable after construction, with dense
vertex ids 0..n-1.  The butterfly generator uses a fixed canonical
encoding so that vertex ids, and everything derived from them (witness
files, golden outputs), are stable across runs:

* a vertex is a (level, row) pair with level in 0..r and row a bitstring
  of length r, written a_1 a_2 ... a_r with a_1 leftmost;
* id = level * 2^r + integer value of the row, a_1 being the most
  significant bit;
* levels l and l+1 are joined by straight edges (same row) and cross
  edges flipping bit l+1.

Level-0 and level-r vertices have degree 2, all others degree 4.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .errors import InvalidParameterError, UnsupportedFamilyError

FAMILY_BUTTERFLY = "butterfly"
FAMILY_CYCLE = "cycle"
FAMILY_PATH = "path"
FAMILY_CUSTOM = "custom"


@dataclass(frozen=True)
class ButterflyLabel:
    """(level, row) name of a butterfly vertex; row is a bitstring of length r."""

    level: int
    row: str

    def __str__(self) -> str:
        return f"[{self.row},{self.level}]"


class Graph:
    """Immutable simple undirected graph.

    Attributes:
        n: vertex count; ids are exactly 0..n-1.
        edges: sorted tuple of (u, v) pairs with u < v.
        adj: per-vertex sorted neighbor tuples.
        family: one of the FAMILY_* tags.
        family_param: r for butterflies, n for cycles/paths, None otherwise.
    """

    __slots__ = ("n", "edges", "adj", "family", "family_param")

    def __init__(self, n: int, edges, family: str = FAMILY_CUSTOM,
                 family_param: int | None = None):
        if n < 0:
            raise InvalidParameterError(f"vertex count must be >= 0, got {n}")
        seen = set()
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"edge {e} out of range for n={n}")
            if u == v:
                raise InvalidParameterError(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidParameterError(f"duplicate edge {key}")
            seen.add(key)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        nbrs = [[] for _ in range(n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "adj", tuple(tuple(sorted(a)) for a in nbrs))
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "family_param", family_param)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and self.edges == other.edges
                and self.family == other.family
                and self.family_param == other.family_param)

    def __hash__(self):
        return hash((self.n, self.edges, self.family, self.family_param))

    def __repr__(self) -> str:
        tag = self.family if self.family_param is None else f"{self.family}({self.family_param})"
        return f"Graph({tag}, n={self.n}, m={self.num_edges})"

    def ref(self) -> str:
        """Stable content reference used in set/cover files."""
        h = hashlib.sha256()
        h.update(f"{self.n}:".encode())
        h.update(",".join(f"{u}-{v}" for u, v in self.edges).encode())
        tag = self.family if self.family_param is None else f"{self.family}:{self.family_param}"
        return f"{tag}#{h.hexdigest()[:12]}"


@dataclass(frozen=True)
class VertexClassification:
    """Degree classes of a butterfly: X (degree 2) and Y (degree 4).

    X splits into the level-0 part X0 and the level-r part Xr.  Each of
    those splits further into two halves by a fixed bit test: X0 by bit 1
    (X0p: a_1 = 0, X0pp: a_1 = 1) and Xr by bit r (Xrp: a_r = 1,
    Xrpp: a_r = 0).  The halving is one fixed convention for the four
    boundary subclasses; any balanced, id-consistent split plays the same
    role downstream.
    """

    X: tuple[int, ...]
    Y: tuple[int, ...]
    X0: tuple[int, ...]
    Xr: tuple[int, ...]
    X0p: tuple[int, ...]
    X0pp: tuple[int, ...]
    Xrp: tuple[int, ...]
    Xrpp: tuple[int, ...]


def build_butterfly(r: int) -> Graph:
    """r-dimensional butterfly: (r+1)*2^r vertices, r*2^(r+1) edges."""
    if r < 1:
        raise InvalidParameterError(f"butterfly dimension must be >= 1, got {r}")
    nrows = 1 << r
    n = (r + 1) * nrows
    edges = []
    for lev in range(r):
        bit = 1 << (r - 1 - lev)  # bit lev+1, with bit 1 the most significant
        base = lev * nrows
        for row in range(nrows):
            u = base + row
            edges.append((u, u + nrows))
            edges.append((u, base + nrows + (row ^ bit)))
    return Graph(n, edges, FAMILY_BUTTERFLY, r)


def build_cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError(f"cycle length must be >= 3, got {n}")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return Graph(n, edges, FAMILY_CYCLE, n)


def build_path(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError(f"path order must be >= 1, got {n}")
    edges = [(i, i + 1) for i in range(n - 1)]
    return Graph(n, edges, FAMILY_PATH, n)


def butterfly_dim(g: Graph) -> int:
    if g.family != FAMILY_BUTTERFLY or g.family_param is None:
        raise UnsupportedFamilyError(f"butterfly graph required, got {g.family}")
    return g.family_param


def row_value(row: str) -> int:
    """Bitstring a_1...a_r -> integer with a_1 most significant."""
    return int(row, 2) if row else 0


def row_string(value: int, r: int) -> str:
    return format(value, f"0{r}b")


def label_of(g: Graph, v: int) -> ButterflyLabel:
    r = butterfly_dim(g)
    if not 0 <= v < g.n:
        raise InvalidParameterError(f"vertex id {v} out of range for n={g.n}")
    nrows = 1 << r
    return ButterflyLabel(level=v // nrows, row=row_string(v % nrows, r))


def id_of(g: Graph, label: ButterflyLabel) -> int:
    r = butterfly_dim(g)
    if not 0 <= label.level <= r:
        raise InvalidParameterError(f"level {label.level} out of range 0..{r}")
    if len(label.row) != r or any(c not in "01" for c in label.row):
        raise InvalidParameterError(f"row {label.row!r} is not a bitstring of length {r}")
    return label.level * (1 << r) + row_value(label.row)


def classify_vertices(g: Graph) -> VertexClassification:
    """Split butterfly vertices into degree classes and boundary subclasses."""
    r = butterfly_dim(g)
    if r < 2:
        raise InvalidParameterError("classification needs r >= 2")
    nrows = 1 << r
    msb = 1 << (r - 1)  # bit 1
    x0 = list(range(nrows))
    xr = list(range(r * nrows, (r + 1) * nrows))
    y = list(range(nrows, r * nrows))
    x0p = [v for v in x0 if not v % nrows & msb]
    x0pp = [v for v in x0 if v % nrows & msb]
    xrp = [v for v in xr if v % nrows & 1]      # bit r set
    xrpp = [v for v in xr if not v % nrows & 1]
    return VertexClassification(
        X=tuple(x0 + xr), Y=tuple(y),
        X0=tuple(x0), Xr=tuple(xr),
        X0p=tuple(x0p), X0pp=tuple(x0pp),
        Xrp=tuple(xrp), Xrpp=tuple(xrpp),
    )

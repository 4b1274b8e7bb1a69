"""General position sets: verification, construction, and exact search.

A vertex set is in general position when no member lies on a geodesic
between two others.  Finding a maximum one is equivalent to a maximum
independent set in the 3-uniform hypergraph whose hyperedges are the
collinear triples, which is what the branch-and-bound solver below works
on.  Everything is deterministic: ties break on smallest vertex id and
the only randomness (greedy 'random' order) sits behind an explicit seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations

from .budget import Budget
from .errors import InvalidParameterError, NotConnectedError
from .geodesy import DistanceMatrix, is_collinear_triple
from .graphs import Graph, build_butterfly

PROVENANCE_CONSTRUCTION = "construction"
PROVENANCE_EXACT = "solver-exact"
PROVENANCE_LOWER_BOUND = "solver-lower-bound"
PROVENANCE_USER = "user"

VERIFIED = "verified-general-position"
VIOLATION = "violation"


@dataclass(frozen=True)
class VertexSet:
    members: tuple[int, ...]
    provenance: str = PROVENANCE_USER
    graph_ref: str = ""

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class GpWitness:
    status: str
    triple: tuple[int, int, int] | None = None
    middle: int | None = None

    @property
    def ok(self) -> bool:
        return self.status == VERIFIED


@dataclass(frozen=True)
class SolveResult:
    best_set: VertexSet
    size: int
    optimal: bool
    nodes_explored: int
    elapsed_s: float
    budget_exhausted: bool


def _validate_members(g: Graph, members) -> tuple[int, ...]:
    ms = tuple(sorted(members))
    if len(set(ms)) != len(ms):
        raise InvalidParameterError("set members must be distinct")
    for v in ms:
        if not 0 <= v < g.n:
            raise InvalidParameterError(f"vertex id {v} out of range for n={g.n}")
    return ms


def verify_general_position(g: Graph, dm: DistanceMatrix, s: VertexSet) -> GpWitness:
    """Check all triples of s; report the lexicographically first violation."""
    members = _validate_members(g, s.members)
    for u, v in combinations(members, 2):
        if not dm.reachable(u, v):
            raise NotConnectedError(f"set members {u} and {v} are not connected")
    rows = dm.rows
    for x, y, z in combinations(members, 3):
        dxy = rows[x][y]
        dyz = rows[y][z]
        dxz = rows[x][z]
        if dxy + dyz == dxz or dxy + dxz == dyz or dxz + dyz == dxy:
            # the middle vertex is unique for distinct, mutually reachable vertices
            if dxy + dxz == dyz:
                mid = x
            elif dxy + dyz == dxz:
                mid = y
            else:
                mid = z
            return GpWitness(status=VIOLATION, triple=(x, y, z), middle=mid)
    return GpWitness(status=VERIFIED)


def construct_butterfly_gp_set(r: int) -> VertexSet:
    """Known optimal general position set of BF(r), size 2^r + 2^(r-2).

    Union of three families: level-0 vertices with a_r = 1, level-r
    vertices with a_1 = 1, and level-1 vertices with a_1 = a_r = 0.
    """
    if r < 2:
        raise InvalidParameterError(f"construction needs r >= 2, got {r}")
    nrows = 1 << r
    msb = 1 << (r - 1)
    level0 = [row for row in range(nrows) if row & 1]
    levelr = [r * nrows + row for row in range(nrows) if row & msb]
    level1 = [nrows + row for row in range(nrows) if not row & msb and not row & 1]
    members = tuple(sorted(level0 + levelr + level1))
    g_ref = build_butterfly(r).ref()
    return VertexSet(members=members, provenance=PROVENANCE_CONSTRUCTION, graph_ref=g_ref)


def collinear_triples(dm: DistanceMatrix, pool) -> list[tuple[int, int, int]]:
    """All collinear triples within pool, in lexicographic order."""
    out = []
    rows = dm.rows
    for x, y, z in combinations(sorted(pool), 3):
        dxy = rows[x][y]
        dyz = rows[y][z]
        dxz = rows[x][z]
        if dxy + dyz == dxz or dxy + dxz == dyz or dxz + dyz == dxy:
            out.append((x, y, z))
    return out


def greedy_gp_lower_bound(g: Graph, dm: DistanceMatrix, order: str = "degree",
                          seed: int = 0, pool=None) -> VertexSet:
    """Inclusion-maximal general position set from a single deterministic scan."""
    vertices = sorted(pool) if pool is not None else list(range(g.n))
    if order == "degree":
        vertices.sort(key=lambda v: (g.degree(v), v))
    elif order == "id":
        vertices.sort()
    elif order == "random":
        rng = random.Random(seed)
        rng.shuffle(vertices)
    else:
        raise InvalidParameterError(f"unknown order {order!r}")
    rows = dm.rows
    chosen: list[int] = []
    for v in vertices:
        rv = rows[v]
        ok = True
        for a, b in combinations(chosen, 2):
            dab = rows[a][b]
            dav = rv[a]
            dbv = rv[b]
            if dav + dbv == dab or dav + dab == dbv or dbv + dab == dav:
                ok = False
                break
        if ok:
            chosen.append(v)
    return VertexSet(members=tuple(sorted(chosen)),
                     provenance=PROVENANCE_LOWER_BOUND, graph_ref=g.ref())


class _GpSearch:
    """Bitmask branch and bound over one pool.

    State is (chosen, free) vertex masks plus the list of still-active
    triple masks (all members chosen or free).  A triple with two chosen
    members forces exclusion of the third; free vertices in no active
    triple are always safe to take.  The bound is |chosen| + |free| minus
    a greedy packing of disjoint constraint free-parts (pairs before
    triples), since each packed constraint forces at least one exclusion.
    Branching: include-first on the free vertex hitting the most active
    triples, smallest id on ties.
    """

    def __init__(self, pool: list[int], triples, budget: Budget):
        self.pool = pool
        self.index = {v: i for i, v in enumerate(pool)}
        self.tmasks = [
            (1 << self.index[a]) | (1 << self.index[b]) | (1 << self.index[c])
            for a, b, c in triples
        ]
        self.node_limit = budget.node_limit
        self.deadline = (time.monotonic() + budget.time_limit_s
                         if budget.time_limit_s is not None else None)
        self.nodes = 0
        self.stopped = False
        self.best_size = -1
        self.best_mask = 0

    def seed_incumbent(self, members) -> None:
        mask = 0
        for v in members:
            mask |= 1 << self.index[v]
        size = len(members)
        if size > self.best_size:
            self.best_size = size
            self.best_mask = mask

    def run(self) -> None:
        full = (1 << len(self.pool)) - 1
        self._search(0, full, self.tmasks)

    def _search(self, chosen: int, free: int, active) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            self.stopped = True
            return
        if self.deadline is not None and self.nodes % 1024 == 0:
            if time.monotonic() > self.deadline:
                self.stopped = True
                return

        # propagate: drop dead triples, exclude third members of 2-chosen triples
        while True:
            alive = chosen | free
            nact = []
            forced = 0
            for t in active:
                if t & alive == t:
                    fp = t & free
                    if fp == 0:
                        return  # three chosen members: infeasible branch
                    if fp & (fp - 1) == 0:
                        forced |= fp
                    else:
                        nact.append(t)
            active = nact
            if not forced:
                break
            free &= ~forced

        # vertices under no active constraint are always safe to take
        constrained = 0
        for t in active:
            constrained |= t
        freebies = free & ~constrained
        if freebies:
            chosen |= freebies
            free &= ~freebies

        if not active:
            size = _popcount(chosen)
            if size > self.best_size:
                self.best_size = size
                self.best_mask = chosen
            return

        # greedy packing bound on forced exclusions: pairs first, then triples
        pairs = []
        trips = []
        for t in active:
            fp = t & free
            if _popcount(fp) == 2:
                pairs.append(fp)
            else:
                trips.append(fp)
        used = 0
        packed = 0
        for fp in pairs:
            if fp & used == 0:
                packed += 1
                used |= fp
        for fp in trips:
            if fp & used == 0:
                packed += 1
                used |= fp
        if _popcount(chosen) + _popcount(free) - packed <= self.best_size:
            return

        # branch vertex: most active constraints, smallest id on ties
        counts: dict[int, int] = {}
        for t in active:
            fp = t & free
            while fp:
                b = fp & -fp
                counts[b] = counts.get(b, 0) + 1
                fp ^= b
        branch = max(counts.items(), key=lambda kv: (kv[1], -kv[0].bit_length()))[0]

        self._search(chosen | branch, free & ~branch, active)
        if self.stopped:
            return
        self._search(chosen, free & ~branch, active)

    def best_members(self) -> tuple[int, ...]:
        return tuple(sorted(
            self.pool[i] for i in range(len(self.pool)) if self.best_mask >> i & 1
        ))


def _popcount(x: int) -> int:
    return bin(x).count("1")


def max_general_position(g: Graph, dm: DistanceMatrix, pool=None,
                         budget: Budget | None = None) -> SolveResult:
    """Exact maximum general position set restricted to pool (default: all).

    Runs branch and bound over the collinear-triple hypergraph, warm
    started from the degree-order greedy set.  If the node (or advisory
    time) budget runs out the best set found so far is returned with
    optimal = False.
    """
    if g.n == 0:
        raise InvalidParameterError("graph has no vertices")
    budget = budget or Budget()
    if pool is None:
        pool_ids = list(range(g.n))
    elif isinstance(pool, VertexSet):
        pool_ids = sorted(pool.members)
    else:
        pool_ids = sorted(pool)
    if len(set(pool_ids)) != len(pool_ids):
        raise InvalidParameterError("pool members must be distinct")
    for v in pool_ids:
        if not 0 <= v < g.n:
            raise InvalidParameterError(f"pool vertex {v} out of range")
    if g.n > 1 and not all(dm.reachable(0, v) for v in range(1, g.n)):
        raise NotConnectedError("graph must be connected")

    t0 = time.perf_counter()
    triples = collinear_triples(dm, pool_ids)
    search = _GpSearch(pool_ids, triples, budget)
    warm = greedy_gp_lower_bound(g, dm, order="degree", pool=pool_ids)
    search.seed_incumbent(warm.members)
    search.run()
    elapsed = time.perf_counter() - t0

    members = search.best_members()
    optimal = not search.stopped
    provenance = PROVENANCE_EXACT if optimal else PROVENANCE_LOWER_BOUND
    best = VertexSet(members=members, provenance=provenance, graph_ref=g.ref())
    return SolveResult(
        best_set=best,
        size=len(members),
        optimal=optimal,
        nodes_explored=search.nodes,
        elapsed_s=elapsed,
        budget_exhausted=search.stopped,
    )


def vertex_set_to_dict(s: VertexSet) -> dict:
    return {"graph_ref": s.graph_ref, "ids": list(s.members), "provenance": s.provenance}


def vertex_set_from_dict(doc: dict) -> VertexSet:
    from .errors import GraphParseError

    if not isinstance(doc, dict) or "ids" not in doc:
        raise GraphParseError("vertex set JSON needs an 'ids' array")
    ids = doc["ids"]
    if not isinstance(ids, list) or not all(isinstance(v, int) for v in ids):
        raise GraphParseError("'ids' must be an array of integers")
    return VertexSet(members=tuple(sorted(ids)),
                     provenance=doc.get("provenance", PROVENANCE_USER),
                     graph_ref=doc.get("graph_ref", ""))


def witness_to_dict(w: GpWitness) -> dict:
    return {
        "status": w.status,
        "triple": list(w.triple) if w.triple is not None else None,
        "middle": w.middle,
    }


def brute_force_max_gp(g: Graph, dm: DistanceMatrix, pool=None) -> tuple[int, tuple[int, ...]]:
    """Independent oracle: enumerate all subsets.  Only for tiny graphs."""
    pool_ids = sorted(pool) if pool is not None else list(range(g.n))
    k = len(pool_ids)
    if k > 20:
        raise InvalidParameterError(f"brute force limited to 20 pool vertices, got {k}")
    index = {v: i for i, v in enumerate(pool_ids)}
    tmasks = [
        (1 << index[a]) | (1 << index[b]) | (1 << index[c])
        for a, b, c in collinear_triples(dm, pool_ids)
    ]
    best_size = 0
    best_mask = 0
    for mask in range(1 << k):
        if _popcount(mask) <= best_size:
            continue
        if all(t & mask != t for t in tmasks):
            best_size = _popcount(mask)
            best_mask = mask
    members = tuple(sorted(pool_ids[i] for i in range(k) if best_mask >> i & 1))
    return best_size, members

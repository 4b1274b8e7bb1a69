"""Isometric cycle covers of butterflies, cover verification, and bounds.

The butterfly constructor searches a fixed candidate family: each
candidate cycle is the union of the four unique monotone paths between a
level-0 vertex pair whose rows differ only in bit r and a level-r vertex
pair whose rows differ only in bit 1.  Those pair choices are forced if
the cycle is to be isometric, because antipodal cycle vertices must
realize graph distance 2r, and 2r between two level-0 (level-r) rows
means exactly bit r (bit 1) differs.  Candidates are screened for
isometry against the distance matrix and an edge partition is found by
deterministic first-fit backtracking, so any returned cover is correct
by verification rather than by construction.

`min_cover_exact` is the independent route for tiny graphs: enumerate
every isometric cycle (or maximal isometric path) and solve minimum
vertex set-cover by branch and bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .budget import DEFAULT_COVER_NODES, Budget
from .errors import (
    InvalidCoverError,
    InvalidCycleError,
    InvalidParameterError,
    InvalidPathError,
    SearchInconclusiveError,
    TooLargeError,
    UnverifiedCoverError,
)
from .geodesy import (
    DistanceMatrix,
    all_pairs_distances,
    check_cycle,
    check_path,
    is_isometric_cycle,
    is_isometric_path,
)
from .graphs import Graph, build_butterfly, butterfly_dim

KIND_CYCLE = "cycle-cover"
KIND_PATH = "path-cover"

# verifier flags in check order; a report passes iff all are true
FLAG_ORDER = (
    "lengths_ok",
    "count_ok",
    "edge_disjoint",
    "edge_partition",
    "all_isometric",
    "level0_pairs_ok",
    "incidence_ok",
    "vertex_cover",
)


@dataclass(frozen=True)
class CycleCover:
    kind: str
    cycles: tuple[tuple[int, ...], ...]
    graph_ref: str = ""

    def __len__(self) -> int:
        return len(self.cycles)


@dataclass(frozen=True)
class CoverReport:
    flags: dict[str, bool]
    first_failure: dict | None = None
    incidence: tuple[int, ...] = field(default=())

    @property
    def passes(self) -> bool:
        return all(self.flags.values())


def _cycle_edges(seq) -> frozenset[tuple[int, int]]:
    L = len(seq)
    return frozenset(
        (seq[i], seq[(i + 1) % L]) if seq[i] < seq[(i + 1) % L]
        else (seq[(i + 1) % L], seq[i])
        for i in range(L)
    )


def _path_edges(seq) -> frozenset[tuple[int, int]]:
    return frozenset(
        (seq[i], seq[i + 1]) if seq[i] < seq[i + 1] else (seq[i + 1], seq[i])
        for i in range(len(seq) - 1)
    )


def _validate_structure(g: Graph, cover: CycleCover) -> None:
    for i, seq in enumerate(cover.cycles):
        try:
            if cover.kind == KIND_CYCLE:
                check_cycle(g, seq)
            else:
                check_path(g, seq)
        except (InvalidCycleError, InvalidPathError) as e:
            raise InvalidCoverError(str(e), cycle_index=i) from e


def verify_cover(g: Graph, dm: DistanceMatrix, cover: CycleCover) -> CoverReport:
    """Family-agnostic verification: structure, isometry, vertex coverage.

    Butterfly-specific flags are vacuously true here; use verify_bf_cover
    for the full butterfly contract.
    """
    _validate_structure(g, cover)
    flags = {name: True for name in FLAG_ORDER}
    first_failure = None

    seen_edges: set[tuple[int, int]] = set()
    dup = None
    for i, seq in enumerate(cover.cycles):
        es = _cycle_edges(seq) if cover.kind == KIND_CYCLE else _path_edges(seq)
        overlap = seen_edges & es
        if overlap and dup is None:
            dup = (i, min(overlap))
        seen_edges |= es
    if dup is not None:
        flags["edge_disjoint"] = False
        flags["edge_partition"] = False
        first_failure = {"check": "edge_disjoint", "cycle_index": dup[0],
                         "detail": f"edge {dup[1]} already covered"}
    if seen_edges != set(g.edges):
        flags["edge_partition"] = False

    for i, seq in enumerate(cover.cycles):
        if cover.kind == KIND_CYCLE:
            ok, pair = is_isometric_cycle(g, dm, seq)
            detail = f"pair {pair} violates cycle distance" if not ok else ""
        else:
            ok = is_isometric_path(g, dm, seq)
            detail = "path is not a geodesic" if not ok else ""
        if not ok:
            flags["all_isometric"] = False
            if first_failure is None:
                first_failure = {"check": "all_isometric", "cycle_index": i, "detail": detail}
            break

    incidence = [0] * g.n
    for seq in cover.cycles:
        for v in seq:
            incidence[v] += 1
    if any(c == 0 for c in incidence):
        flags["vertex_cover"] = False
        if first_failure is None:
            v = incidence.index(0)
            first_failure = {"check": "vertex_cover", "cycle_index": None,
                             "detail": f"vertex {v} uncovered"}
    return CoverReport(flags=flags, first_failure=first_failure,
                       incidence=tuple(incidence))


def verify_bf_cover(g: Graph, dm: DistanceMatrix, cover: CycleCover) -> CoverReport:
    """Full butterfly cover contract, checked in order:

    (a) every sequence is a genuine cycle (garbage raises InvalidCoverError);
    (b) every length is 4r;
    (c) there are 2^(r-1) cycles;
    (d) cycles are pairwise edge-disjoint and their union is all edges
        (with (b) and (c) holding, disjointness alone forces the
        partition, since 2^(r-1) * 4r equals r * 2^(r+1));
    (e) every cycle is isometric;
    (f) every cycle has exactly two level-0 vertices;
    (g) every degree-2 vertex lies in exactly 1 cycle and every degree-4
        vertex in exactly 2.
    """
    r = butterfly_dim(g)
    if r < 2:
        raise InvalidParameterError("cover verification needs r >= 2")
    if cover.kind != KIND_CYCLE:
        raise InvalidParameterError("butterfly verification applies to cycle covers")
    _validate_structure(g, cover)

    flags = {name: True for name in FLAG_ORDER}
    failures: list[dict] = []
    nrows = 1 << r

    for i, seq in enumerate(cover.cycles):
        if len(seq) != 4 * r:
            flags["lengths_ok"] = False
            failures.append({"check": "lengths_ok", "cycle_index": i,
                             "detail": f"length {len(seq)}, expected {4 * r}"})
            break

    if len(cover.cycles) != 1 << (r - 1):
        flags["count_ok"] = False
        failures.append({"check": "count_ok", "cycle_index": None,
                         "detail": f"{len(cover.cycles)} cycles, expected {1 << (r - 1)}"})

    seen_edges: set[tuple[int, int]] = set()
    for i, seq in enumerate(cover.cycles):
        es = _cycle_edges(seq)
        overlap = seen_edges & es
        if overlap:
            flags["edge_disjoint"] = False
            failures.append({"check": "edge_disjoint", "cycle_index": i,
                             "detail": f"edge {min(overlap)} already covered"})
            break
        seen_edges |= es
    if not flags["edge_disjoint"] or seen_edges != set(g.edges):
        flags["edge_partition"] = False
        if flags["edge_disjoint"]:
            missing = min(set(g.edges) - seen_edges)
            failures.append({"check": "edge_partition", "cycle_index": None,
                             "detail": f"edge {missing} uncovered"})

    for i, seq in enumerate(cover.cycles):
        ok, pair = is_isometric_cycle(g, dm, seq)
        if not ok:
            flags["all_isometric"] = False
            failures.append({"check": "all_isometric", "cycle_index": i,
                             "detail": f"pair {pair} violates cycle distance"})
            break

    for i, seq in enumerate(cover.cycles):
        lvl0 = sum(1 for v in seq if v < nrows)
        if lvl0 != 2:
            flags["level0_pairs_ok"] = False
            failures.append({"check": "level0_pairs_ok", "cycle_index": i,
                             "detail": f"{lvl0} level-0 vertices, expected 2"})
            break

    incidence = [0] * g.n
    for seq in cover.cycles:
        for v in seq:
            incidence[v] += 1
    for v in range(g.n):
        expected = 1 if g.degree(v) == 2 else 2
        if incidence[v] != expected:
            flags["incidence_ok"] = False
            failures.append({"check": "incidence_ok", "cycle_index": None,
                             "detail": f"vertex {v} in {incidence[v]} cycles, expected {expected}"})
            break
    if any(c == 0 for c in incidence):
        flags["vertex_cover"] = False

    order = {name: k for k, name in enumerate(FLAG_ORDER)}
    failures.sort(key=lambda f: order[f["check"]])
    return CoverReport(flags=flags,
                       first_failure=failures[0] if failures else None,
                       incidence=tuple(incidence))


def _monotone_row(x: int, y: int, lev: int, r: int) -> int:
    """Row at the given level on the unique monotone path [0,x]..[r,y]."""
    full = (1 << r) - 1
    hi = ((full >> (r - lev)) << (r - lev)) if lev else 0
    return (y & hi) | (x & ~hi & full)


def candidate_cycle(r: int, uc: int, vc: int) -> tuple[int, ...]:
    """Candidate isometric cycle of length 4r.

    uc is the level-0 row pair representative (bit r clear, partner
    uc|1); vc the level-r representative (bit 1 clear, partner with the
    top bit set).  The cycle walks the four monotone paths between the
    corners: up from [0,uc] to [r,vc], down to [0,uc|1], up to the
    partner of vc, and back down.
    """
    nrows = 1 << r
    msb = 1 << (r - 1)
    u0, u1 = uc, uc | 1
    v0, v1 = vc, vc | msb
    seq = []
    for lev in range(r):
        seq.append(lev * nrows + _monotone_row(u0, v0, lev, r))
    for lev in range(r, 0, -1):
        seq.append(lev * nrows + _monotone_row(u1, v0, lev, r))
    for lev in range(r):
        seq.append(lev * nrows + _monotone_row(u1, v1, lev, r))
    for lev in range(r, 0, -1):
        seq.append(lev * nrows + _monotone_row(u0, v1, lev, r))
    return tuple(seq)


def construct_bf_cycle_cover(r: int, budget: Budget | None = None) -> CycleCover:
    """Edge partition of BF(r) into 2^(r-1) isometric cycles of length 4r.

    Backtracks over lexicographically ordered candidates.  Each level-0
    pair must end up in exactly one cycle (its two edges appear on no
    other candidate containing it), so the search assigns one level-r
    pair to each level-0 pair, first fit, pruning on edge collisions.
    Raises SearchInconclusiveError when the node budget runs out, which
    is not evidence that no cover exists.
    """
    if r < 2:
        raise InvalidParameterError(f"cover construction needs r >= 2, got {r}")
    budget = budget or Budget(node_limit=DEFAULT_COVER_NODES)
    g = build_butterfly(r)
    dm = all_pairs_distances(g)
    nrows = 1 << r
    msb = 1 << (r - 1)
    u_reps = [u for u in range(nrows) if not u & 1]
    v_reps = [v for v in range(nrows) if not v & msb]

    candidates: dict[tuple[int, int], tuple[tuple[int, ...], frozenset]] = {}
    for uc in u_reps:
        for vc in v_reps:
            seq = candidate_cycle(r, uc, vc)
            if len(set(seq)) != len(seq):
                continue
            ok, _ = is_isometric_cycle(g, dm, seq)
            if ok:
                candidates[(uc, vc)] = (seq, _cycle_edges(seq))

    nodes = 0
    used_edges: set = set()
    assignment: list[tuple[int, int]] = []
    used_v: set[int] = set()

    def search(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget.node_limit:
            raise SearchInconclusiveError(
                f"cover search for r={r} exhausted {budget.node_limit} nodes",
                nodes_explored=nodes)
        if i == len(u_reps):
            return True
        uc = u_reps[i]
        for vc in v_reps:
            if vc in used_v:
                continue
            cand = candidates.get((uc, vc))
            if cand is None:
                continue
            seq, es = cand
            if used_edges & es:
                continue
            assignment.append((uc, vc))
            used_v.add(vc)
            used_edges.update(es)
            if search(i + 1):
                return True
            assignment.pop()
            used_v.remove(vc)
            used_edges.difference_update(es)
        return False

    if not search(0):
        raise SearchInconclusiveError(
            f"no edge partition found within the candidate family for r={r}",
            nodes_explored=nodes)

    cover = CycleCover(
        kind=KIND_CYCLE,
        cycles=tuple(candidates[key][0] for key in assignment),
        graph_ref=g.ref(),
    )
    report = verify_bf_cover(g, dm, cover)
    if not report.passes:
        raise SearchInconclusiveError(
            f"constructed cover failed verification: {report.first_failure}")
    return cover


def gp_upper_bounds(cover: CycleCover, verified: CoverReport) -> dict[str, int]:
    """Certified bounds from a verified cover of k members.

    A vertex cover by k isometric cycles gives gp <= 3k; by k isometric
    paths, gp <= 2k.  Soundness rests on two report flags, all_isometric
    and vertex_cover, and covers failing either are refused; the
    remaining flags are structural diagnostics that do not weaken the
    bound.
    """
    if not (verified.flags.get("all_isometric", False)
            and verified.flags.get("vertex_cover", False)):
        raise UnverifiedCoverError("bounds require a cover that passed verification")
    k = len(cover.cycles)
    if cover.kind == KIND_CYCLE:
        return {"from_ic": 3 * k}
    return {"from_ip": 2 * k}


def cover_to_dict(cover: CycleCover) -> dict:
    return {
        "graph_ref": cover.graph_ref,
        "kind": cover.kind,
        "cycles": [list(seq) for seq in cover.cycles],
    }


def cover_from_dict(doc: dict) -> CycleCover:
    from .errors import GraphParseError

    if not isinstance(doc, dict) or "cycles" not in doc:
        raise GraphParseError("cover JSON needs a 'cycles' array")
    kind = doc.get("kind", KIND_CYCLE)
    if kind not in (KIND_CYCLE, KIND_PATH):
        raise GraphParseError(f"unknown cover kind {kind!r}")
    cycles = doc["cycles"]
    if not isinstance(cycles, list):
        raise GraphParseError("'cycles' must be an array of id arrays")
    parsed = []
    for i, seq in enumerate(cycles):
        if not isinstance(seq, list) or not all(isinstance(v, int) for v in seq):
            raise GraphParseError(f"cycle #{i} must be an array of integers")
        parsed.append(tuple(seq))
    return CycleCover(kind=kind, cycles=tuple(parsed), graph_ref=doc.get("graph_ref", ""))


def report_to_dict(report: CoverReport) -> dict:
    return {
        "passes": report.passes,
        "flags": dict(report.flags),
        "first_failure": report.first_failure,
        "incidence": list(report.incidence),
    }


MAX_EXACT_COVER_VERTICES = 16


def enumerate_isometric_cycles(g: Graph, dm: DistanceMatrix) -> list[tuple[int, ...]]:
    """Every simple isometric cycle, one canonical orientation each."""
    cycles: list[tuple[int, ...]] = []
    adj = g.adj

    def dfs(start: int, path: list[int], onpath: set[int]) -> None:
        u = path[-1]
        for w in adj[u]:
            if w == start and len(path) >= 3 and path[1] < path[-1]:
                ok, _ = is_isometric_cycle(g, dm, path)
                if ok:
                    cycles.append(tuple(path))
            elif w > start and w not in onpath:
                path.append(w)
                onpath.add(w)
                dfs(start, path, onpath)
                path.pop()
                onpath.remove(w)

    for s in range(g.n):
        dfs(s, [s], {s})
    return cycles


def enumerate_maximal_isometric_paths(g: Graph, dm: DistanceMatrix) -> list[tuple[int, ...]]:
    """All geodesics not properly contained in a longer geodesic."""
    rows = dm.rows
    adj = g.adj
    geodesics: list[tuple[int, ...]] = []

    def extend(path: list[int], target: int) -> None:
        u = path[-1]
        if u == target:
            geodesics.append(tuple(path))
            return
        du = rows[u][target]
        for w in adj[u]:
            if rows[w][target] == du - 1:
                path.append(w)
                extend(path, target)
                path.pop()

    for s in range(g.n):
        for t in range(s, g.n):
            if rows[s][t] > 0 or s == t:
                extend([s], t)

    # keep one orientation, then drop geodesics contained in longer ones
    canon = {min(p, p[::-1]) for p in geodesics}
    paths = sorted(canon, key=lambda p: (-len(p), p))
    kept: list[tuple[int, ...]] = []

    def contains(big: tuple[int, ...], small: tuple[int, ...]) -> bool:
        L, S = len(big), len(small)
        for i in range(L - S + 1):
            if big[i:i + S] == small or big[i:i + S] == small[::-1]:
                return True
        return False

    for p in paths:
        if not any(contains(q, p) for q in kept):
            kept.append(p)
    return kept


def min_cover_exact(g: Graph, dm: DistanceMatrix, kind: str = KIND_CYCLE,
                    size_cap: int = 8) -> int | None:
    """Exact minimum isometric cycle (or path) vertex-cover number.

    Enumeration plus branch and bound; guarded to tiny graphs.  Returns
    None when no cover of size <= size_cap exists among the candidates.
    """
    if g.n > MAX_EXACT_COVER_VERTICES:
        raise TooLargeError(
            f"exact cover enumeration guarded to n <= {MAX_EXACT_COVER_VERTICES}, got {g.n}")
    if kind == KIND_CYCLE:
        members = enumerate_isometric_cycles(g, dm)
    elif kind == KIND_PATH:
        members = enumerate_maximal_isometric_paths(g, dm)
    else:
        raise InvalidParameterError(f"unknown cover kind {kind!r}")
    sets = [frozenset(m) for m in members]
    if not sets:
        return None
    universe = set(range(g.n))
    covering: dict[int, list[int]] = {v: [] for v in universe}
    for i, s in enumerate(sets):
        for v in s:
            covering[v].append(i)
    if any(not covering[v] for v in universe):
        return None

    best: int | None = None

    def bnb(count: int, covered: set) -> None:
        nonlocal best
        if best is not None and count >= best:
            return
        if covered == universe:
            best = count
            return
        if count >= size_cap:
            return
        # branch on the uncovered vertex with the fewest candidate sets
        v = min(universe - covered, key=lambda u: (len(covering[u]), u))
        for i in covering[v]:
            bnb(count + 1, covered | sets[i])

    bnb(0, set())
    return best

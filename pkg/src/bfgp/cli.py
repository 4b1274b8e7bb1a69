"""Command-line surface.

Subcommands: generate | gpset construct/verify/max | cover
construct/verify/bounds | report.  Every run prints exactly one JSON
document to stdout (including failure paths) and emits a run manifest
with input/output digests and timing; the result JSON itself carries no
timestamps, so identical inputs, seed, and node budget reproduce it byte
for byte.

Exit codes: 0 success/verified, 1 verification failed, 2 usage or parse
error, 3 inconclusive (budget exhausted without an answer).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from datetime import datetime, timezone

from . import cycle_cover as cc
from . import genpos, geodesy, graph_io, graphs
from .budget import DEFAULT_COVER_NODES, DEFAULT_SOLVER_NODES, Budget
from .errors import (
    BfgpError,
    GraphParseError,
    InvalidParameterError,
    SearchInconclusiveError,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse prints usage and exits; we need a JSON document on stdout instead
    def error(self, message):
        raise _UsageError(message)


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class Run:
    """Tracks file digests and emits the result document plus the manifest."""

    def __init__(self, argv: list[str], args: argparse.Namespace):
        self.argv = argv
        self.args = args
        self.inputs: dict[str, str] = {}
        self.outputs: dict[str, str] = {}
        self.started_at = datetime.now(timezone.utc).isoformat()
        self.t0 = time.perf_counter()

    def read_bytes(self, path: str) -> bytes:
        with open(path, "rb") as f:
            data = f.read()
        self.inputs[path] = _sha256(data)
        return data

    def write_bytes(self, path: str, data: bytes) -> None:
        with open(path, "wb") as f:
            f.write(data)
        self.outputs[path] = _sha256(data)

    def write_json(self, path: str, doc) -> None:
        self.write_bytes(path, _dumps(doc).encode())

    def note(self, line: str) -> None:
        if not getattr(self.args, "quiet", False):
            print(line, file=sys.stderr)

    def finish(self, result: dict, exit_code: int) -> int:
        sys.stdout.write(_dumps(result))
        manifest = {
            "command": self.argv,
            "seed": getattr(self.args, "seed", 0),
            "node_budget": getattr(self.args, "node_budget", None),
            "time_budget_s": getattr(self.args, "time_budget", None),
            "inputs": self.inputs,
            "outputs": self.outputs,
            "started_at": self.started_at,
            "elapsed_s": time.perf_counter() - self.t0,
            "exit_code": exit_code,
            "result_summary": _summarize(result),
        }
        target = getattr(self.args, "manifest", None)
        if target is None and getattr(self.args, "out", None):
            target = self.args.out + ".manifest.json"
        if target:
            with open(target, "w") as f:
                f.write(_dumps(manifest))
        else:
            print("manifest: " + json.dumps(manifest), file=sys.stderr)
        return exit_code


def _summarize(result: dict) -> dict:
    keep = ("command", "status", "size", "optimal", "num_vertices", "num_edges",
            "cycles", "passes", "bounds", "error")
    return {k: result[k] for k in keep if k in result}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output file path")
    p.add_argument("--seed", type=int, default=0, help="seed for any randomized order")
    p.add_argument("--node-budget", type=int, default=None,
                   help="deterministic search node limit")
    p.add_argument("--time-budget", type=float, default=None,
                   help="advisory wall-clock limit in seconds")
    p.add_argument("--manifest", help="write the run manifest to this path")
    p.add_argument("--quiet", action="store_true", help="suppress stderr chatter")


def build_parser() -> _Parser:
    parser = _Parser(prog="bfgp", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a graph file")
    p.add_argument("family", choices=["butterfly", "cycle", "path"])
    p.add_argument("--r", type=int, help="butterfly dimension")
    p.add_argument("--n", type=int, help="cycle/path order")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    _add_common(p)

    p = sub.add_parser("gpset", help="general position sets")
    gsub = p.add_subparsers(dest="action", required=True)

    q = gsub.add_parser("construct", help="write the built-in optimal butterfly set")
    q.add_argument("--r", type=int, required=True)
    _add_common(q)

    q = gsub.add_parser("verify", help="check a set for general position")
    q.add_argument("--graph", required=True)
    q.add_argument("--set", dest="set_path", required=True)
    _add_common(q)

    q = gsub.add_parser("max", help="exact maximum general position set")
    q.add_argument("--graph")
    q.add_argument("--r", type=int, help="solve on BF(r) without a graph file")
    q.add_argument("--pool", default="all",
                   help="'all', 'deg2', or 'file:PATH' with a vertex-set JSON")
    _add_common(q)

    p = sub.add_parser("cover", help="isometric cycle covers")
    csub = p.add_subparsers(dest="action", required=True)

    q = csub.add_parser("construct", help="build the butterfly cycle cover")
    q.add_argument("--r", type=int, required=True)
    _add_common(q)

    q = csub.add_parser("verify", help="verify a cover file")
    q.add_argument("--graph", required=True)
    q.add_argument("--cover", required=True)
    _add_common(q)

    q = csub.add_parser("bounds", help="certified gp upper bounds from a cover")
    q.add_argument("--graph", required=True)
    q.add_argument("--cover", required=True)
    _add_common(q)

    p = sub.add_parser("report", help="summary table across butterfly dimensions")
    p.add_argument("--r-min", type=int, default=2)
    p.add_argument("--r-max", type=int, default=4)
    p.add_argument("--exact-max-r", type=int, default=3,
                   help="run the exact solver for r up to this value")
    _add_common(p)

    return parser


def _load_graph(run: Run, path: str) -> graphs.Graph:
    return graph_io.import_graph(run.read_bytes(path))


def _graph_for(run: Run) -> graphs.Graph:
    args = run.args
    if getattr(args, "graph", None):
        return _load_graph(run, args.graph)
    if getattr(args, "r", None) is not None:
        return graphs.build_butterfly(args.r)
    raise _UsageError("either --graph or --r is required")


def _solver_budget(args, default_nodes: int) -> Budget:
    nodes = args.node_budget if args.node_budget is not None else default_nodes
    return Budget(node_limit=nodes, time_limit_s=args.time_budget)


def cmd_generate(run: Run) -> int:
    args = run.args
    if args.family == "butterfly":
        if args.r is None:
            raise _UsageError("butterfly needs --r")
        g = graphs.build_butterfly(args.r)
    elif args.family == "cycle":
        if args.n is None:
            raise _UsageError("cycle needs --n")
        g = graphs.build_cycle(args.n)
    else:
        if args.n is None:
            raise _UsageError("path needs --n")
        g = graphs.build_path(args.n)
    payload = graph_io.export_graph(g, args.format)
    result = {
        "command": "generate",
        "family": g.family,
        "param": g.family_param,
        "num_vertices": g.n,
        "num_edges": g.num_edges,
        "graph_ref": g.ref(),
    }
    if args.out:
        run.write_bytes(args.out, payload)
        result["path"] = args.out
    elif args.format == "dot":
        result["dot"] = payload.decode()
    else:
        result["graph"] = graph_io.graph_to_dict(g)
    run.note(f"{g.family}({g.family_param}): {g.n} vertices, {g.num_edges} edges")
    return run.finish(result, EXIT_OK)


def cmd_gpset_construct(run: Run) -> int:
    args = run.args
    s = genpos.construct_butterfly_gp_set(args.r)
    doc = genpos.vertex_set_to_dict(s)
    result = {"command": "gpset-construct", "r": args.r, "size": len(s), "set": doc}
    if args.out:
        run.write_json(args.out, doc)
        result["path"] = args.out
    run.note(f"BF({args.r}) general position set of size {len(s)}")
    return run.finish(result, EXIT_OK)


def cmd_gpset_verify(run: Run) -> int:
    args = run.args
    g = _load_graph(run, args.graph)
    s = genpos.vertex_set_from_dict(json.loads(run.read_bytes(args.set_path)))
    dm = geodesy.all_pairs_distances(g)
    witness = genpos.verify_general_position(g, dm, s)
    wdoc = genpos.witness_to_dict(witness)
    result = {"command": "gpset-verify", "size": len(s), "status": witness.status,
              "witness": wdoc}
    if args.out:
        run.write_json(args.out, wdoc)
        result["path"] = args.out
    run.note(f"set of size {len(s)}: {witness.status}")
    return run.finish(result, EXIT_OK if witness.ok else EXIT_VERIFY_FAILED)


def _resolve_pool(run: Run, g: graphs.Graph):
    spec = run.args.pool
    if spec == "all":
        return None, "all"
    if spec == "deg2":
        return [v for v in range(g.n) if g.degree(v) == 2], "deg2"
    if spec.startswith("file:"):
        path = spec[len("file:"):]
        s = genpos.vertex_set_from_dict(json.loads(run.read_bytes(path)))
        return sorted(s.members), f"file:{path}"
    raise _UsageError(f"unknown pool {spec!r}")


def cmd_gpset_max(run: Run) -> int:
    args = run.args
    g = _graph_for(run)
    pool, pool_desc = _resolve_pool(run, g)
    dm = geodesy.all_pairs_distances(g)
    res = genpos.max_general_position(g, dm, pool=pool,
                                      budget=_solver_budget(args, DEFAULT_SOLVER_NODES))
    doc = {
        "command": "gpset-max",
        "graph_ref": g.ref(),
        "pool": pool_desc,
        "size": res.size,
        "optimal": res.optimal,
        "nodes_explored": res.nodes_explored,
        "budget_exhausted": res.budget_exhausted,
        "set": genpos.vertex_set_to_dict(res.best_set),
    }
    if args.out:
        run.write_json(args.out, doc)
    run.note(f"max general position on {g.ref()} pool={pool_desc}: "
             f"size {res.size} optimal={res.optimal}")
    return run.finish(doc, EXIT_OK if res.optimal else EXIT_INCONCLUSIVE)


def cmd_cover_construct(run: Run) -> int:
    args = run.args
    budget = Budget(node_limit=args.node_budget
                    if args.node_budget is not None else DEFAULT_COVER_NODES,
                    time_limit_s=args.time_budget)
    try:
        cover = cc.construct_bf_cycle_cover(args.r, budget=budget)
    except SearchInconclusiveError as e:
        result = {"command": "cover-construct", "r": args.r, "status": "inconclusive",
                  "nodes_explored": e.nodes_explored, "error": str(e)}
        return run.finish(result, EXIT_INCONCLUSIVE)
    g = graphs.build_butterfly(args.r)
    dm = geodesy.all_pairs_distances(g)
    report = cc.verify_bf_cover(g, dm, cover)
    cdoc = cc.cover_to_dict(cover)
    result = {
        "command": "cover-construct",
        "r": args.r,
        "status": "ok",
        "cycles": len(cover),
        "cycle_length": 4 * args.r,
        "passes": report.passes,
        "report": cc.report_to_dict(report),
    }
    if args.out:
        run.write_json(args.out, cdoc)
        result["path"] = args.out
    run.note(f"BF({args.r}) cover: {len(cover)} cycles of length {4 * args.r}, "
             f"verified={report.passes}")
    return run.finish(result, EXIT_OK)


def _verify_cover_for(g: graphs.Graph, dm, cover: cc.CycleCover) -> cc.CoverReport:
    if g.family == graphs.FAMILY_BUTTERFLY and cover.kind == cc.KIND_CYCLE:
        return cc.verify_bf_cover(g, dm, cover)
    return cc.verify_cover(g, dm, cover)


def cmd_cover_verify(run: Run) -> int:
    args = run.args
    g = _load_graph(run, args.graph)
    cover = cc.cover_from_dict(json.loads(run.read_bytes(args.cover)))
    dm = geodesy.all_pairs_distances(g)
    report = _verify_cover_for(g, dm, cover)
    rdoc = cc.report_to_dict(report)
    result = {"command": "cover-verify", "cycles": len(cover), "passes": report.passes,
              "report": rdoc}
    if args.out:
        run.write_json(args.out, rdoc)
        result["path"] = args.out
    run.note(f"cover of {len(cover)} members: passes={report.passes}")
    return run.finish(result, EXIT_OK if report.passes else EXIT_VERIFY_FAILED)


def cmd_cover_bounds(run: Run) -> int:
    args = run.args
    g = _load_graph(run, args.graph)
    cover = cc.cover_from_dict(json.loads(run.read_bytes(args.cover)))
    dm = geodesy.all_pairs_distances(g)
    report = _verify_cover_for(g, dm, cover)
    try:
        bounds = cc.gp_upper_bounds(cover, report)
    except BfgpError as e:
        result = {"command": "cover-bounds", "error": str(e),
                  "report": cc.report_to_dict(report)}
        return run.finish(result, EXIT_VERIFY_FAILED)
    result = {"command": "cover-bounds", "cover_size": len(cover), "bounds": bounds,
              "report": cc.report_to_dict(report)}
    for name, value in bounds.items():
        run.note(f"gp <= {value}  ({name} from a verified cover of {len(cover)})")
    return run.finish(result, EXIT_OK)


def cmd_report(run: Run) -> int:
    args = run.args
    if args.r_min < 2 or args.r_max < args.r_min:
        raise _UsageError("need 2 <= r-min <= r-max")
    rows = []
    for r in range(args.r_min, args.r_max + 1):
        g = graphs.build_butterfly(r)
        dm = geodesy.all_pairs_distances(g)
        s = genpos.construct_butterfly_gp_set(r)
        verified = genpos.verify_general_position(g, dm, s).ok
        row = {
            "r": r,
            "set_size": len(s),
            "set_verified": verified,
            "cover_cycles": None,
            "cover_verified": None,
            "gp_upper_bound": None,
            "gp_exact": None,
            "exact_optimal": None,
        }
        try:
            cover = cc.construct_bf_cycle_cover(
                r, budget=_solver_budget(args, DEFAULT_COVER_NODES))
            report = cc.verify_bf_cover(g, dm, cover)
            row["cover_cycles"] = len(cover)
            row["cover_verified"] = report.passes
            row["gp_upper_bound"] = cc.gp_upper_bounds(cover, report)["from_ic"]
        except SearchInconclusiveError:
            pass
        if r <= args.exact_max_r:
            res = genpos.max_general_position(
                g, dm, budget=_solver_budget(args, DEFAULT_SOLVER_NODES))
            row["gp_exact"] = res.size
            row["exact_optimal"] = res.optimal
        rows.append(row)
        run.note(f"r={r}: set {row['set_size']} verified={row['set_verified']} "
                 f"cover {row['cover_cycles']} bound {row['gp_upper_bound']} "
                 f"exact {row['gp_exact']}")
    result = {"command": "report", "rows": rows}
    if args.out:
        run.write_json(args.out, result)
    return run.finish(result, EXIT_OK)


_DISPATCH = {
    ("generate", None): cmd_generate,
    ("gpset", "construct"): cmd_gpset_construct,
    ("gpset", "verify"): cmd_gpset_verify,
    ("gpset", "max"): cmd_gpset_max,
    ("cover", "construct"): cmd_cover_construct,
    ("cover", "verify"): cmd_cover_verify,
    ("cover", "bounds"): cmd_cover_bounds,
    ("report", None): cmd_report,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        sys.stdout.write(_dumps({"error": str(e), "kind": "usage"}))
        return EXIT_USAGE
    run = Run(argv, args)
    handler = _DISPATCH[(args.command, getattr(args, "action", None))]
    try:
        return handler(run)
    except _UsageError as e:
        return run.finish({"error": str(e), "kind": "usage"}, EXIT_USAGE)
    except (InvalidParameterError, GraphParseError) as e:
        return run.finish({"error": str(e), "kind": type(e).__name__}, EXIT_USAGE)
    except SearchInconclusiveError as e:
        return run.finish({"error": str(e), "kind": "inconclusive",
                           "nodes_explored": e.nodes_explored}, EXIT_INCONCLUSIVE)
    except (OSError, json.JSONDecodeError) as e:
        return run.finish({"error": str(e), "kind": "io"}, EXIT_USAGE)
    except BfgpError as e:
        return run.finish({"error": str(e), "kind": type(e).__name__}, EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())

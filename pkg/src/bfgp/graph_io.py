"""Graph serialization.

JSON is the round-trip format: an object with `family`, an optional
`r`/`n` parameter, `num_vertices`, `edges` as [u, v] pairs with u < v,
and for butterflies a `labels` array of {id, level, row} records.  DOT
export is one-way and render-ready; butterfly vertices are named
L<level>_<row>.
"""

from __future__ import annotations

import json

from .errors import GraphParseError, InvalidParameterError
from .graphs import (
    FAMILY_BUTTERFLY,
    FAMILY_CUSTOM,
    FAMILY_CYCLE,
    FAMILY_PATH,
    Graph,
    build_butterfly,
    label_of,
)


def graph_to_dict(g: Graph) -> dict:
    doc = {"family": g.family}
    if g.family == FAMILY_BUTTERFLY:
        doc["r"] = g.family_param
    elif g.family in (FAMILY_CYCLE, FAMILY_PATH):
        doc["n"] = g.family_param
    doc["num_vertices"] = g.n
    doc["edges"] = [[u, v] for u, v in g.edges]
    if g.family == FAMILY_BUTTERFLY:
        doc["labels"] = [
            {"id": v, "level": lbl.level, "row": lbl.row}
            for v in range(g.n)
            for lbl in (label_of(g, v),)
        ]
    return doc


def export_graph(g: Graph, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(graph_to_dict(g), indent=2) + "\n").encode()
    if fmt == "dot":
        return export_dot(g).encode()
    raise InvalidParameterError(f"unknown export format {fmt!r}")


def export_dot(g: Graph) -> str:
    if g.family == FAMILY_BUTTERFLY:
        names = {v: f"L{lbl.level}_{lbl.row}" for v in range(g.n)
                 for lbl in (label_of(g, v),)}
    else:
        names = {v: str(v) for v in range(g.n)}
    tag = g.family if g.family_param is None else f"{g.family}_{g.family_param}"
    lines = [f"graph {tag} {{"]
    for v in range(g.n):
        lines.append(f"  {names[v]};")
    for u, v in g.edges:
        lines.append(f"  {names[u]} -- {names[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def import_graph(data: bytes | str) -> Graph:
    """Parse the JSON graph format back into a Graph."""
    if isinstance(data, bytes):
        data = data.decode()
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise GraphParseError(f"invalid JSON: {e.msg}", line=e.lineno, column=e.colno) from e
    if not isinstance(doc, dict):
        raise GraphParseError("top-level JSON value must be an object")
    family = doc.get("family", FAMILY_CUSTOM)
    if family not in (FAMILY_BUTTERFLY, FAMILY_CYCLE, FAMILY_PATH, FAMILY_CUSTOM):
        raise GraphParseError(f"unknown family {family!r}")
    param = doc.get("r") if family == FAMILY_BUTTERFLY else doc.get("n")
    if "num_vertices" not in doc:
        raise GraphParseError("missing num_vertices")
    n = doc["num_vertices"]
    if not isinstance(n, int) or n < 0:
        raise GraphParseError(f"num_vertices must be a non-negative integer, got {n!r}")
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        raise GraphParseError("edges must be an array")
    edges = []
    for i, e in enumerate(raw_edges):
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(x, int) for x in e)):
            raise GraphParseError(f"edge #{i} must be a pair of integers, got {e!r}")
        edges.append((e[0], e[1]))
    try:
        g = Graph(n, edges, family, param)
    except Exception as e:
        raise GraphParseError(f"inconsistent graph: {e}") from e
    _check_family_consistency(g)
    return g


def _check_family_consistency(g: Graph) -> None:
    # labels and classification lean on the canonical butterfly encoding,
    # so a mislabeled family tag must not survive import
    if g.family == FAMILY_BUTTERFLY:
        if not isinstance(g.family_param, int) or g.family_param < 1:
            raise GraphParseError("butterfly graphs need an integer r >= 1")
        reference = build_butterfly(g.family_param)
        if g.n != reference.n or g.edges != reference.edges:
            raise GraphParseError(
                f"edges do not match the canonical butterfly encoding for r={g.family_param}")
    elif g.family in (FAMILY_CYCLE, FAMILY_PATH):
        if g.family_param is not None and g.family_param != g.n:
            raise GraphParseError(
                f"family parameter {g.family_param} disagrees with {g.n} vertices")


def load_graph(path: str) -> Graph:
    with open(path, "rb") as f:
        return import_graph(f.read())


def save_graph(g: Graph, path: str, fmt: str = "json") -> None:
    with open(path, "wb") as f:
        f.write(export_graph(g, fmt))

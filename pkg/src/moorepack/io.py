"""Graph, coloring and ovoid files.

Graph files are JSON objects ``{"n", "adj", "labels", "side", "meta"}`` with
0-based vertex indices.  A plain adjacency-list text format is accepted as
well: either one line per vertex (``v: u w x`` or just ``u w x`` on line v),
or a bracketed list of lists such as ``[ [ 64, 65, 78 ], ... ]``, which is
read as 1-based.  Coloring files are ``{"colors": [...]}``.
"""
from __future__ import annotations

import ast
import json
from pathlib import Path

from .coloring import PackingColoring
from .errors import FileFormatError
from .generators import parse_label
from .graph import Graph


def graph_to_dict(g: Graph) -> dict:
    out = {"n": g.n, "adj": [list(nb) for nb in g.adj]}
    if g.labels is not None:
        out["labels"] = [str(lab) for lab in g.labels]
    if g.side is not None:
        out["side"] = list(g.side)
    out["meta"] = dict(g.meta)
    return out


def dumps_graph(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), separators=(",", ":"), ensure_ascii=False) + "\n"


def write_graph(g: Graph, path) -> None:
    Path(path).write_text(dumps_graph(g), encoding="utf-8")


def graph_from_dict(d: dict) -> Graph:
    if not isinstance(d, dict) or "adj" not in d:
        raise FileFormatError("graph JSON needs an 'adj' list")
    adj = d["adj"]
    n = d.get("n", len(adj))
    if n != len(adj):
        raise FileFormatError(f"n={n} but adj has {len(adj)} rows")
    labels = d.get("labels")
    if labels is not None:
        labels = [parse_label(lab) if isinstance(lab, str) else lab for lab in labels]
    try:
        return Graph(adj, labels=labels, side=d.get("side"), meta=d.get("meta") or {})
    except (TypeError, ValueError) as exc:
        raise FileFormatError(str(exc)) from exc


def parse_adjacency_text(text: str) -> Graph:
    """Plain adjacency lists; see the module docstring for the accepted layouts."""
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    if not body:
        raise FileFormatError("empty adjacency text")
    if body.startswith("["):
        try:
            rows = ast.literal_eval(body.rstrip(";").rstrip(")"))
        except (ValueError, SyntaxError) as exc:
            raise FileFormatError(f"bad bracketed adjacency list: {exc}") from exc
        try:
            adj = [[int(u) - 1 for u in row] for row in rows]
        except (TypeError, ValueError) as exc:
            raise FileFormatError(f"bad bracketed adjacency list: {exc}") from exc
    else:
        lines = [ln for ln in body.splitlines() if ln.strip()]
        keyed = all(":" in ln for ln in lines)
        rows: dict[int, list[int]] = {}
        try:
            for i, ln in enumerate(lines):
                if keyed:
                    head, tail = ln.split(":", 1)
                    rows[int(head)] = [int(t) for t in tail.replace(",", " ").split()]
                else:
                    rows[i] = [int(t) for t in ln.replace(",", " ").split()]
        except ValueError as exc:
            raise FileFormatError(f"bad adjacency line: {exc}") from exc
        n = max(rows) + 1
        if sorted(rows) != list(range(n)):
            raise FileFormatError("adjacency lines must cover vertices 0..n-1")
        adj = [rows[v] for v in range(n)]
    try:
        return Graph(adj)
    except ValueError as exc:
        raise FileFormatError(str(exc)) from exc


def load_graph(path) -> Graph:
    """Read a GraphFile (JSON) or a plain adjacency-list text file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"{path}: {exc}") from exc
        return graph_from_dict(data)
    return parse_adjacency_text(text)


def coloring_from_dict(d, n: int | None = None) -> PackingColoring:
    """``{"colors": [...]}``; entry i colors vertex i.

    With ``"paper_numbering": true`` entry i (counting from 1) colors vertex
    i of the 1-based fixture numbering, i.e. internal vertex i - 1, which is
    the same position in the list.  A ``colors`` object keyed by vertex id is
    also accepted, keys shifted down by one under paper numbering.
    """
    if isinstance(d, list):
        d = {"colors": d}
    if not isinstance(d, dict) or "colors" not in d:
        raise FileFormatError("coloring JSON needs a 'colors' entry")
    raw = d["colors"]
    shift = 1 if d.get("paper_numbering") else 0
    if isinstance(raw, dict):
        try:
            items = {int(k) - shift: v for k, v in raw.items()}
        except ValueError as exc:
            raise FileFormatError(f"bad vertex key: {exc}") from exc
        size = n if n is not None else max(items) + 1
        if sorted(items) != list(range(size)):
            raise FileFormatError("coloring keys do not cover every vertex")
        raw = [items[v] for v in range(size)]
    if not isinstance(raw, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in raw):
        raise FileFormatError("colors must be a list of integers")
    if any(c < 1 for c in raw):
        raise FileFormatError("colors must be positive")
    if n is not None and len(raw) != n:
        raise FileFormatError(f"coloring has {len(raw)} entries, graph has {n} vertices")
    return PackingColoring(tuple(raw))


def load_coloring(path, n: int | None = None) -> PackingColoring:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"cannot read coloring {path}: {exc}") from exc
    return coloring_from_dict(data, n)


def dumps_coloring(c: PackingColoring, **extra) -> str:
    return json.dumps({"colors": list(c.colors), **extra}, separators=(",", ":")) + "\n"


def ovoid_to_json(g: Graph, vertices) -> str:
    labels = [str(g.labels[v]) if g.labels is not None else str(v) for v in sorted(vertices)]
    return json.dumps(labels, ensure_ascii=False) + "\n"


def load_ovoid(path, g: Graph) -> list[int]:
    """Ovoid file: JSON list of vertex labels (or bare indices for unlabeled graphs)."""
    try:
        items = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"cannot read ovoid {path}: {exc}") from exc
    if not isinstance(items, list):
        raise FileFormatError("ovoid file must hold a JSON list")
    out = []
    for it in items:
        if g.labels is not None and isinstance(it, str):
            lab = parse_label(it)
            if lab not in g.index_of:
                raise FileFormatError(f"unknown vertex label {it!r}")
            out.append(g.index_of[lab])
        elif isinstance(it, int) and 0 <= it < g.n:
            out.append(it)
        elif isinstance(it, str) and it.isdigit() and int(it) < g.n:
            out.append(int(it))
        else:
            raise FileFormatError(f"bad ovoid entry {it!r}")
    return sorted(out)


def distances_csv(g: Graph) -> str:
    from .graph import INF

    lines = []
    for row in g.distances:
        lines.append(",".join("inf" if int(x) == INF else str(int(x)) for x in row))
    return "\n".join(lines) + "\n"

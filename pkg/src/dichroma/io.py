"""Plain-text graph formats and JSON sidecars.

Digraph file::

    n m
    u v        (m lines, 0-indexed arcs)

Undirected file: same, but the header is ``u n m``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .digraph import Digraph, GraphFormatError, UndirectedGraph


def _lines(text: str) -> list[list[str]]:
    return [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _parse_pairs(rows, m, n, what):
    if len(rows) != m:
        raise GraphFormatError(f"header announces {m} {what}s, found {len(rows)}")
    pairs = []
    seen = set()
    for row in rows:
        if len(row) != 2:
            raise GraphFormatError(f"bad {what} line: {' '.join(row)!r}")
        try:
            u, v = int(row[0]), int(row[1])
        except ValueError as exc:
            raise GraphFormatError(f"non-integer {what} line: {' '.join(row)!r}") from exc
        if u == v:
            raise GraphFormatError(f"loop {u} {v}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"{what} {u} {v} out of range")
        key = (u, v) if what == "arc" else (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate {what} {u} {v}")
        seen.add(key)
        pairs.append((u, v))
    return pairs


def parse_graph(text: str) -> Digraph | UndirectedGraph:
    rows = _lines(text)
    if not rows:
        raise GraphFormatError("empty graph file")
    head = rows[0]
    try:
        if len(head) == 3 and head[0] == "u":
            n, m = int(head[1]), int(head[2])
            return UndirectedGraph(n, _parse_pairs(rows[1:], m, n, "edge"))
        if len(head) == 2:
            n, m = int(head[0]), int(head[1])
            return Digraph(n, _parse_pairs(rows[1:], m, n, "arc"))
    except ValueError as exc:
        if isinstance(exc, GraphFormatError):
            raise
        raise GraphFormatError(f"bad header {' '.join(head)!r}") from exc
    raise GraphFormatError(f"bad header {' '.join(head)!r}")


def parse_digraph(text: str) -> Digraph:
    g = parse_graph(text)
    if not isinstance(g, Digraph):
        raise GraphFormatError("expected a digraph file, got an undirected one")
    return g


def format_graph(g: Digraph | UndirectedGraph) -> str:
    if isinstance(g, Digraph):
        pairs = g.sorted_arcs()
        lines = [f"{g.n} {len(pairs)}"]
    else:
        pairs = g.sorted_edges()
        lines = [f"u {g.n} {len(pairs)}"]
    lines += [f"{u} {v}" for u, v in pairs]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Digraph | UndirectedGraph:
    return parse_graph(Path(path).read_text())


def write_graph(g, path) -> None:
    Path(path).write_text(format_graph(g))


def read_json(path):
    return json.loads(Path(path).read_text())


def write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")

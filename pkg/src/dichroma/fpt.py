"""Dynamic program over a nice tree decomposition deciding whether a digraph
has an acyclic k-coloring.

A table entry is a pair ``(f, H)``: a coloring of the bag and the digraph on
the bag whose arcs are the monochromatic dipaths of the processed subgraph.
Only reachable (positive) entries are stored.

Internally a state is the key ``(colors, rows)`` aligned with the sorted bag:
``colors[i]`` is the color of ``bag[i]`` and ``rows[i]`` is a bitmask over
graph vertices of the bag vertices reachable from ``bag[i]`` by a
monochromatic dipath.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Iterable

from .digraph import Digraph, VertexColoring, iter_bits, max_degree_bound, underlying
from .exact import ColoringCertificate, make_certificate
from .treewidth import (
    FORGET,
    INTRODUCE,
    JOIN,
    LEAF,
    InvalidDecomposition,
    NiceTreeDecomposition,
    nice_decomposition,
    validate_nice,
)

DEFAULT_STATE_BUDGET = 2_000_000


class StateBudgetExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class Representation:
    """Digraph on a bag; arcs are pairs of graph vertices from ``bag``."""

    bag: tuple[int, ...]
    arcs: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        members = set(self.bag)
        for u, v in self.arcs:
            if u == v or u not in members or v not in members:
                raise ValueError(f"arc ({u},{v}) not over the bag")

    def rows(self) -> tuple[int, ...]:
        out = {v: 0 for v in self.bag}
        for u, v in self.arcs:
            out[u] |= 1 << v
        return tuple(out[v] for v in self.bag)

    @classmethod
    def from_rows(cls, bag, rows) -> Representation:
        # closing a cyclic digraph sets diagonal bits; loops are not arcs
        return cls(tuple(bag), frozenset((u, w) for u, r in zip(bag, rows)
                                         for w in iter_bits(r) if w != u))

    def is_transitive(self) -> bool:
        return transitive_closure(self) == self

    def is_acyclic(self) -> bool:
        # close the raw rows: the closed Representation has no loops left
        return rows_acyclic(self.bag, close_rows(self.bag, self.rows()))

    def induced(self, keep: Iterable[int]) -> Representation:
        keep = set(keep)
        bag = tuple(v for v in self.bag if v in keep)
        return Representation(bag, frozenset((u, v) for u, v in self.arcs if u in keep and v in keep))


def close_rows(bag, rows) -> list[int]:
    """Warshall's closure on bag-aligned bitmask rows."""
    rows = list(rows)
    for k, vk in enumerate(bag):
        bk = 1 << vk
        rk = rows[k]
        for i in range(len(rows)):
            if rows[i] & bk:
                rows[i] |= rk
    return rows


def rows_acyclic(bag, closed_rows) -> bool:
    return not any((r >> v) & 1 for v, r in zip(bag, closed_rows))


def transitive_closure(h: Representation) -> Representation:
    return Representation.from_rows(h.bag, close_rows(h.bag, h.rows()))


def minimal_representation(G: Digraph, bag, f) -> Representation:
    """Closure of the monochromatic arcs of ``G`` inside ``bag``; ``f`` maps
    bag vertices to colors (a dict or a sequence aligned with ``bag``)."""
    bag = tuple(bag)
    color = f if isinstance(f, dict) else dict(zip(bag, f))
    arcs = frozenset((u, v) for u in bag for v in bag
                     if u != v and G.has_arc(u, v) and color[u] == color[v])
    return transitive_closure(Representation(bag, arcs))


def meets_state_invariants(G: Digraph, bag, colors, rows) -> bool:
    """Acyclic, transitive and containing the minimal representation."""
    closed = close_rows(bag, rows)
    if list(rows) != closed or not rows_acyclic(bag, rows):
        return False
    hf = minimal_representation(G, bag, colors).rows()
    return all(a & b == a for a, b in zip(hf, rows))


def is_feasible(G: Digraph, bag, v: int, rows, colors=None) -> bool:
    """Feasibility of ``H`` at the node introducing ``v``.

    Every ``u`` with a ``u -> v`` arc in ``H`` that is not an in-neighbour of
    ``v`` in ``G`` must have an ``H``-arc to some in-neighbour of ``v`` in the
    bag; symmetrically for out-neighbours.  (All ``G``-neighbours of ``v`` in
    the processed subgraph lie in the bag.)

    Given ``colors`` (aligned with ``bag``), only neighbours sharing ``v``'s
    color count as witnesses.  Without it any neighbour does, which also
    admits arcs between differently colored vertices.
    """
    pos = {u: i for i, u in enumerate(bag)}
    bag_mask = sum(1 << u for u in bag)
    if colors is not None:
        cv = colors[bag.index(v)]
        bag_mask = sum(1 << u for u, c in zip(bag, colors) if c == cv)
    in_g = G.in_mask[v] & bag_mask
    out_g = G.out_mask[v] & bag_mask
    vbit = 1 << v
    for u in bag:
        if u == v:
            continue
        row = rows[pos[u]]
        if row & vbit and not (in_g >> u) & 1 and not row & in_g:
            return False
    row_v = rows[pos[v]]
    for u in iter_bits(row_v & ~out_g):
        if not any(rows[pos[w]] >> u & 1 for w in iter_bits(out_g)):
            return False
    return True


# ---------------------------------------------------------------------------
# tables


@dataclass
class DPTable:
    node: int
    bag: tuple[int, ...]
    # key -> provenance: None (leaf), child key (introduce/forget), (left, right) (join)
    states: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.states)

    def representations(self):
        for colors, rows in self.states:
            yield dict(zip(self.bag, colors)), Representation.from_rows(self.bag, rows)


def state_bound(k: int, b: int) -> int:
    """``k^b * 3^(b(b-1)/2)``: colorings times acyclic orientation patterns."""
    return k ** b * 3 ** (b * (b - 1) // 2)


def _check_size(table: DPTable, limit: int):
    if len(table.states) > limit:
        raise StateBudgetExceeded(f"node {table.node}: more than {limit} states")


def dp_leaf(node_id: int, bag, k: int, *, first: bool = False) -> DPTable:
    """One state per color of the single vertex; with ``first`` only color 1
    (names of colors are interchangeable, so one leaf may be pinned)."""
    (v,) = bag
    table = DPTable(node_id, (v,))
    for c in ([1] if first else range(1, k + 1)):
        table.states[((c,), (0,))] = None
    return table


def dp_introduce(node_id: int, bag, v: int, child: DPTable, G: Digraph, k: int,
                 limit: int = DEFAULT_STATE_BUDGET) -> DPTable:
    bag = tuple(bag)
    p = bag.index(v)
    cbag = child.bag
    table = DPTable(node_id, bag)
    out_v = G.out_mask[v]
    in_v = G.in_mask[v]
    vbit = 1 << v
    cbits = [1 << u for u in cbag]
    states = table.states
    for key in sorted(child.states):
        colors, rows = key
        for c in range(1, k + 1):
            same = 0
            for b, col in zip(cbits, colors):
                if col == c:
                    same |= b
            out_m = out_v & same
            in_m = in_v & same
            reach = out_m
            into = in_m
            for b, r in zip(cbits, rows):
                if out_m & b:
                    reach |= r
                if r & in_m:
                    into |= b
            if reach & into:
                continue  # v would close a monochromatic dicycle
            newrows = [(r | vbit | reach) if into & b else r for b, r in zip(cbits, rows)]
            newrows.insert(p, reach)
            newkey = (colors[:p] + (c,) + colors[p:], tuple(newrows))
            if newkey not in states:
                states[newkey] = key
        if len(states) > limit:
            _check_size(table, limit)
    return table


def dp_forget(node_id: int, bag, v: int, child: DPTable,
              limit: int = DEFAULT_STATE_BUDGET) -> DPTable:
    bag = tuple(bag)
    p = child.bag.index(v)
    clear = ~(1 << v)
    table = DPTable(node_id, bag)
    states = table.states
    for key in sorted(child.states):
        colors, rows = key
        newkey = (colors[:p] + colors[p + 1:],
                  tuple(r & clear for i, r in enumerate(rows) if i != p))
        if newkey not in states:
            states[newkey] = key
    _check_size(table, limit)
    return table


def dp_join(node_id: int, bag, left: DPTable, right: DPTable,
            limit: int = DEFAULT_STATE_BUDGET) -> DPTable:
    bag = tuple(bag)
    table = DPTable(node_id, bag)
    states = table.states
    by_colors: dict[tuple, list] = {}
    for key in sorted(right.states):
        by_colors.setdefault(key[0], []).append(key)
    for lkey in sorted(left.states):
        colors, lrows = lkey
        for rkey in by_colors.get(colors, ()):
            rows = close_rows(bag, [a | b for a, b in zip(lrows, rkey[1])])
            if not rows_acyclic(bag, rows):
                continue
            newkey = (colors, tuple(rows))
            if newkey not in states:
                states[newkey] = (lkey, rkey)
        if len(states) > limit:
            _check_size(table, limit)
    return table


# ---------------------------------------------------------------------------
# driver


@dataclass
class FPTRun:
    k: int
    decided: bool
    tables: dict[int, DPTable]
    coloring: list[int] | None = None

    def stats(self, nd: NiceTreeDecomposition) -> list[dict]:
        rows = []
        for t in nd.post_order():
            node = nd.nodes[t]
            b = len(node.bag)
            rows.append({"node": t, "kind": node.kind, "bag_size": b, "k": self.k,
                         "states": len(self.tables[t]), "bound": state_bound(self.k, b)})
        return rows


def run_dp(G: Digraph, nd: NiceTreeDecomposition, k: int, *,
           symmetry_breaking: bool = True, state_limit: int = DEFAULT_STATE_BUDGET,
           check_invariants: bool = False, validate: bool = True) -> FPTRun:
    """Fill every table bottom-up.  With ``check_invariants`` every stored
    state is checked against the necessary conditions (acyclic, transitive,
    containing the minimal representation) and introduce-node states against
    feasibility (same-color witnesses, which implies the unrestricted form)."""
    if validate:
        ok, report = validate_nice(nd, underlying(G))
        if not ok:
            raise InvalidDecomposition(report)
    tables: dict[int, DPTable] = {}
    first_leaf = symmetry_breaking
    for t in nd.post_order():
        node = nd.nodes[t]
        if node.kind == LEAF:
            table = dp_leaf(t, node.bag, k, first=first_leaf)
            first_leaf = False
        elif node.kind == INTRODUCE:
            table = dp_introduce(t, node.bag, node.vertex, tables[node.children[0]], G, k, state_limit)
        elif node.kind == FORGET:
            table = dp_forget(t, node.bag, node.vertex, tables[node.children[0]], state_limit)
        elif node.kind == JOIN:
            table = dp_join(t, node.bag, tables[node.children[0]], tables[node.children[1]], state_limit)
        else:
            raise InvalidDecomposition(f"unknown node kind {node.kind!r}")
        if check_invariants:
            for colors, rows in table.states:
                if not meets_state_invariants(G, table.bag, colors, rows):
                    raise AssertionError(f"node {t}: state violates the representation invariants")
                if node.kind == INTRODUCE and not is_feasible(G, table.bag, node.vertex, rows, colors):
                    raise AssertionError(f"node {t}: infeasible representation")
        tables[t] = table
    if nd.root is None:
        return FPTRun(k, True, tables, [])
    root = tables[nd.root]
    decided = bool(root.states)
    coloring = reconstruct(G, nd, tables) if decided else None
    return FPTRun(k, decided, tables, coloring)


def reconstruction_path(nd: NiceTreeDecomposition, tables: dict[int, DPTable]) -> dict[int, tuple]:
    """The state chosen at every node when following provenance links down
    from the (single, empty-bag) root state."""
    chosen = {}
    (root_key,) = tables[nd.root].states
    stack = [(nd.root, root_key)]
    while stack:
        t, key = stack.pop()
        chosen[t] = key
        node = nd.nodes[t]
        prov = tables[t].states[key]
        if node.kind in (INTRODUCE, FORGET):
            stack.append((node.children[0], prov))
        elif node.kind == JOIN:
            stack.append((node.children[0], prov[0]))
            stack.append((node.children[1], prov[1]))
    return chosen


def reconstruct(G: Digraph, nd: NiceTreeDecomposition, tables) -> list[int]:
    colors = [0] * G.n
    for t, (cols, _) in reconstruction_path(nd, tables).items():
        for v, c in zip(nd.nodes[t].bag, cols):
            colors[v] = c
    return colors


def _default_nice(G: Digraph, nd):
    return nice_decomposition(underlying(G)) if nd is None else nd


def fpt_decide(G: Digraph, nd: NiceTreeDecomposition | None, k: int, **kw) -> tuple[bool, ColoringCertificate | None]:
    """Decide ``chi_a(G) <= k``; on success return a verified certificate."""
    nd = _default_nice(G, nd)
    if k < 1:
        return G.n == 0, None
    run = run_dp(G, nd, k, **kw)
    if not run.decided:
        return False, None
    return True, make_certificate(G, VertexColoring(run.coloring, k))


def fpt_dichromatic(G: Digraph, nd: NiceTreeDecomposition | None = None, *,
                    on_run=None, **kw) -> tuple[int, ColoringCertificate]:
    """Smallest ``k`` for which the dynamic program succeeds, trying
    ``k = 1, 2, ...`` up to ``min(width + 1, 1 + min(max outdeg, max indeg))``.

    ``on_run(run)`` is called with every :class:`FPTRun` (table dumps)."""
    nd = _default_nice(G, nd)
    if G.n == 0:
        return 0, ColoringCertificate(VertexColoring([], 0), [])
    top = min(nd.width + 1, max_degree_bound(G))
    for k in range(1, top + 1):
        run = run_dp(G, nd, k, **kw)
        if on_run is not None:
            on_run(run)
        if run.decided:
            return k, make_certificate(G, VertexColoring(run.coloring, k))
    raise AssertionError("no coloring within the width bound")  # pragma: no cover


def write_table_csv(rows: list[dict], path) -> None:
    fields = ["k", "node", "kind", "bag_size", "states", "bound"]
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=fields)
        w.writeheader()
        for r in rows:
            w.writerow({f: r[f] for f in fields})


def all_bag_colorings(bag, k: int):
    return iproduct(range(1, k + 1), repeat=len(bag))

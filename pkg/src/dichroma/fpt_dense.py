"""Dense reference tables for the tree-decomposition dynamic program.

Where :mod:`dichroma.fpt` pushes states forward, this module evaluates the
node characterisations as predicates over *every* pair ``(f, H)`` with ``H``
an acyclic digraph on the bag.  It is exponential in the bag size on purpose
and is only meant for cross-checking on tiny instances.

A second oracle, :func:`true_tables`, ignores the characterisations entirely:
it enumerates every coloring of the processed subgraph ``G_t`` and computes
the reachability digraph by search.

All tables use the key format of :mod:`dichroma.fpt`.
"""

from __future__ import annotations

from itertools import combinations, product as iproduct

from .digraph import Digraph, iter_bits
from .fpt import close_rows, is_feasible, minimal_representation, rows_acyclic
from .treewidth import FORGET, INTRODUCE, JOIN, LEAF, NiceTreeDecomposition


def acyclic_digraphs(bag) -> list[tuple[int, ...]]:
    """Rows of every acyclic digraph on ``bag`` (each pair: no arc, one way,
    or the other way), not necessarily transitive."""
    bag = tuple(bag)
    pairs = list(combinations(range(len(bag)), 2))
    out = []
    for pattern in iproduct((0, 1, 2), repeat=len(pairs)):
        rows = [0] * len(bag)
        for (i, j), s in zip(pairs, pattern):
            if s == 1:
                rows[i] |= 1 << bag[j]
            elif s == 2:
                rows[j] |= 1 << bag[i]
        if rows_acyclic(bag, close_rows(bag, rows)):
            out.append(tuple(rows))
    return out


def _is_transitive(bag, rows) -> bool:
    return list(rows) == close_rows(bag, rows)


def _contains(big, small) -> bool:
    return all(a & b == b for a, b in zip(big, small))


def _drop(rows, p, v):
    clear = ~(1 << v)
    return tuple(r & clear for i, r in enumerate(rows) if i != p)


def dense_leaf(bag, k: int) -> set:
    (v,) = bag
    return {((c,), (0,)) for c in range(1, k + 1)}


def dense_forget(bag, v: int, child_bag, child: set, k: int, G: Digraph) -> set:
    """``c_t[f, H] = 1`` iff for some color ``c`` there is a positive child
    entry ``(f_c, H')`` with ``H_c`` inside ``H'`` and ``H = H'[X_t]``."""
    bag = tuple(bag)
    p = child_bag.index(v)
    by_colors: dict[tuple, list] = {}
    for colors, rows in child:
        by_colors.setdefault(colors, []).append(rows)
    out = set()
    for colors in iproduct(range(1, k + 1), repeat=len(bag)):
        for rows in acyclic_digraphs(bag):
            for c in range(1, k + 1):
                fc = colors[:p] + (c,) + colors[p:]
                hc = _h_c(G, child_bag, fc, p, v, rows)
                if any(_contains(h2, hc) and _drop(h2, p, v) == rows
                       for h2 in by_colors.get(fc, ())):
                    out.add((colors, rows))
                    break
    return out


def _h_c(G, child_bag, fc, p, v, rows):
    # H plus v plus the monochromatic arcs at v, closed
    full = list(rows[:p]) + [0] + list(rows[p:])
    for i, u in enumerate(child_bag):
        if u == v or fc[i] != fc[p]:
            continue
        if G.has_arc(v, u):
            full[p] |= 1 << u
        if G.has_arc(u, v):
            full[i] |= 1 << v
    return tuple(close_rows(child_bag, full))


def h_min(G: Digraph, bag, v: int, rows) -> tuple[int, ...]:
    """``H - v`` without the arcs from ``N^-_H(v)`` to ``N^+_H(v)`` that are
    not arcs of ``G``, closed transitively.  Rows over ``bag - v``."""
    p = bag.index(v)
    vbit = 1 << v
    into = {u for u, r in zip(bag, rows) if r & vbit}
    out_of = set(iter_bits(rows[p]))
    trimmed = []
    for u, r in zip(bag, rows):
        if u == v:
            continue
        r &= ~vbit
        if u in into:
            for w in out_of:
                if (r >> w) & 1 and not G.has_arc(u, w):
                    r &= ~(1 << w)
        trimmed.append(r)
    child_bag = tuple(u for u in bag if u != v)
    return tuple(close_rows(child_bag, trimmed))


def h_plus_min(G: Digraph, bag, v: int, rows):
    """Every digraph between ``H_min`` and ``H - v``."""
    p = bag.index(v)
    lo = h_min(G, bag, v, rows)
    hi = _drop(rows, p, v)
    child_bag = tuple(u for u in bag if u != v)
    extra = [(i, w) for i in range(len(child_bag)) for w in iter_bits(hi[i] & ~lo[i])]
    for chosen in iproduct((0, 1), repeat=len(extra)):
        out = list(lo)
        for (i, w), on in zip(extra, chosen):
            if on:
                out[i] |= 1 << w
        yield tuple(out)


def dense_introduce(bag, v: int, child: set, k: int, G: Digraph, *,
                    mono_witness: bool = False) -> set:
    """``c_t[f, H] = 1`` iff ``H`` is feasible, acyclic, transitive, contains
    ``H_f`` and some member of ``H+_min`` is positive below with ``f`` minus
    ``v``.

    ``mono_witness`` restricts feasibility witnesses to neighbours of ``v``'s
    color (see :func:`dichroma.fpt.is_feasible`)."""
    bag = tuple(bag)
    p = bag.index(v)
    out = set()
    for colors in iproduct(range(1, k + 1), repeat=len(bag)):
        hf = minimal_representation(G, bag, colors).rows()
        fprime = colors[:p] + colors[p + 1:]
        for rows in acyclic_digraphs(bag):
            if not _is_transitive(bag, rows) or not _contains(rows, hf):
                continue
            if not is_feasible(G, bag, v, rows, colors if mono_witness else None):
                continue
            if any((fprime, h) in child for h in h_plus_min(G, bag, v, rows)):
                out.add((colors, rows))
    return out


def dense_join(bag, left: set, right: set, k: int) -> set:
    """``c_t[f, H] = 1`` iff ``H`` is acyclic, transitive and the closure of
    ``H1 + H2`` for positive ``(f, H1)`` and ``(f, H2)`` below."""
    bag = tuple(bag)
    combos = set()
    rights: dict[tuple, list] = {}
    for colors, rows in right:
        rights.setdefault(colors, []).append(rows)
    for colors, r1 in left:
        for r2 in rights.get(colors, ()):
            combos.add((colors, tuple(close_rows(bag, [a | b for a, b in zip(r1, r2)]))))
    out = set()
    for colors in iproduct(range(1, k + 1), repeat=len(bag)):
        for rows in acyclic_digraphs(bag):
            if _is_transitive(bag, rows) and (colors, rows) in combos:
                out.add((colors, rows))
    return out


def run_dense(G: Digraph, nd: NiceTreeDecomposition, k: int, *,
              mono_witness: bool = False) -> dict[int, set]:
    tables: dict[int, set] = {}
    for t in nd.post_order():
        node = nd.nodes[t]
        if node.kind == LEAF:
            tables[t] = dense_leaf(node.bag, k)
        elif node.kind == INTRODUCE:
            tables[t] = dense_introduce(node.bag, node.vertex, tables[node.children[0]], k, G,
                                        mono_witness=mono_witness)
        elif node.kind == FORGET:
            (c,) = node.children
            tables[t] = dense_forget(node.bag, node.vertex, nd.nodes[c].bag, tables[c], k, G)
        elif node.kind == JOIN:
            left, right = node.children
            tables[t] = dense_join(node.bag, tables[left], tables[right], k)
    return tables


def dense_decide(G: Digraph, nd: NiceTreeDecomposition, k: int, **kw) -> bool:
    if nd.root is None:
        return True
    return bool(run_dense(G, nd, k, **kw)[nd.root])


# ---------------------------------------------------------------------------
# brute-force ground truth


def subtree_vertices(nd: NiceTreeDecomposition) -> dict[int, frozenset]:
    out: dict[int, frozenset] = {}
    for t in nd.post_order():
        node = nd.nodes[t]
        s = set(node.bag)
        for c in node.children:
            s |= out[c]
        out[t] = frozenset(s)
    return out


def mono_reach(G: Digraph, verts, color: dict, src: int) -> int:
    """Bitmask of vertices reachable from ``src`` by a dipath of length at
    least one inside ``verts`` using only vertices of ``src``'s color."""
    allowed = 0
    for u in verts:
        if color[u] == color[src]:
            allowed |= 1 << u
    seen = 0
    stack = [src]
    while stack:
        u = stack.pop()
        nxt = G.out_mask[u] & allowed & ~seen
        seen |= nxt
        stack.extend(iter_bits(nxt))
    return seen


def represented_key(G: Digraph, bag, verts, color: dict):
    bag_mask = sum(1 << u for u in bag)
    rows = tuple(mono_reach(G, verts, color, u) & bag_mask & ~(1 << u) for u in bag)
    return tuple(color[u] for u in bag), rows


def true_tables(G: Digraph, nd: NiceTreeDecomposition, k: int, *, acyclic_only: bool = True) -> dict[int, set]:
    """For every node, the keys ``(f, H)`` such that some ``k``-coloring of
    ``G_t`` extending ``f`` is represented by ``H``; with ``acyclic_only`` the
    coloring must also be acyclic on ``G_t``."""
    verts_of = subtree_vertices(nd)
    out = {}
    for t, verts in verts_of.items():
        bag = nd.nodes[t].bag
        vs = sorted(verts)
        keys = set()
        for cols in iproduct(range(1, k + 1), repeat=len(vs)):
            color = dict(zip(vs, cols))
            if acyclic_only and any((mono_reach(G, vs, color, u) >> u) & 1 for u in vs):
                continue
            keys.add(represented_key(G, bag, vs, color))
        out[t] = keys
    return out

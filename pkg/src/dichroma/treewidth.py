"""Tree decompositions: validation, elimination-order heuristics, exact width
for small graphs and conversion to nice form."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .digraph import UndirectedGraph, iter_bits
from .exact import BudgetExceeded, SolveBudget


class InvalidDecomposition(ValueError):
    pass


@dataclass
class TreeDecomposition:
    bags: list[frozenset[int]]
    edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def validate_decomposition(g: UndirectedGraph, td: TreeDecomposition) -> tuple[bool, str | None]:
    """Check the tree shape and the three decomposition conditions.

    Returns ``(True, None)`` or ``(False, report)``; the report names the
    first violated condition and a witness.
    """
    nb = len(td.bags)
    if nb == 0:
        return (True, None) if g.n == 0 else (False, "condition 1: no bags")
    if len(td.edges) != nb - 1:
        return False, f"tree: {nb} nodes need {nb - 1} edges, got {len(td.edges)}"
    adj = td.neighbours()
    for a, b in td.edges:
        if not (0 <= a < nb and 0 <= b < nb) or a == b:
            return False, f"tree: bad edge ({a},{b})"
    seen = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if b not in seen:
                seen.add(b)
                queue.append(b)
    if len(seen) != nb:
        return False, "tree: node graph is not connected"
    covered = set().union(*td.bags)
    if not covered <= set(range(g.n)):
        return False, f"bags mention non-vertices {sorted(covered - set(range(g.n)))}"
    missing = set(range(g.n)) - covered
    if missing:
        return False, f"condition 1: vertex {min(missing)} in no bag"
    for u, v in g.sorted_edges():
        if not any(u in b and v in b for b in td.bags):
            return False, f"condition 2: edge ({u},{v}) in no bag"
    for v in range(g.n):
        holders = [i for i, b in enumerate(td.bags) if v in b]
        start = holders[0]
        reach = {start}
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b in adj[a]:
                if b not in reach and v in td.bags[b]:
                    reach.add(b)
                    queue.append(b)
        if len(reach) != len(holders):
            return False, f"condition 3: bags holding vertex {v} are disconnected"
    return True, None


# ---------------------------------------------------------------------------
# elimination orders


def _fill_in(adj: list[int], v: int, alive: int) -> int:
    nbrs = adj[v] & alive
    missing = 0
    for a in iter_bits(nbrs):
        missing += (nbrs & ~adj[a] & ~(1 << a)).bit_count()
    return missing // 2


def elimination_order(g: UndirectedGraph, strategy: str = "min_fill") -> list[int]:
    """Greedy elimination order; ties go to the smallest vertex."""
    if strategy not in ("min_degree", "min_fill"):
        raise ValueError(f"unknown strategy {strategy!r}")
    adj = list(g.adj_mask)
    alive = (1 << g.n) - 1
    order = []
    while alive:
        best, best_key = -1, None
        for v in iter_bits(alive):
            if strategy == "min_degree":
                key = (adj[v] & alive).bit_count()
            else:
                key = (_fill_in(adj, v, alive), (adj[v] & alive).bit_count())
            if best_key is None or key < best_key:
                best, best_key = v, key
        nbrs = adj[best] & alive
        for a in iter_bits(nbrs):
            adj[a] |= nbrs & ~(1 << a)
        alive &= ~(1 << best)
        order.append(best)
    return order


def order_width(g: UndirectedGraph, order: list[int]) -> int:
    adj = list(g.adj_mask)
    alive = (1 << g.n) - 1
    width = -1
    for v in order:
        nbrs = adj[v] & alive & ~(1 << v)
        width = max(width, nbrs.bit_count())
        for a in iter_bits(nbrs):
            adj[a] |= nbrs & ~(1 << a)
        alive &= ~(1 << v)
    return width


def decomposition_from_order(g: UndirectedGraph, order: list[int]) -> TreeDecomposition:
    """Bag of ``v`` is ``v`` plus its later neighbours in the fill-in graph;
    its parent is the bag of the earliest-eliminated such neighbour (or of the
    next vertex in the order when there is none).  Bags contained in a
    neighbouring bag are then contracted away."""
    n = g.n
    if n == 0:
        return TreeDecomposition([], [])
    pos = {v: i for i, v in enumerate(order)}
    adj = list(g.adj_mask)
    alive = (1 << n) - 1
    bags = []
    parent = []
    for i, v in enumerate(order):
        nbrs = adj[v] & alive & ~(1 << v)
        bags.append(frozenset([v, *iter_bits(nbrs)]))
        later = iter_bits(nbrs)
        if later:
            parent.append(min(pos[a] for a in later))
        else:
            parent.append(i + 1 if i + 1 < n else -1)
        for a in iter_bits(nbrs):
            adj[a] |= nbrs & ~(1 << a)
        alive &= ~(1 << v)
    edges = [(i, p) for i, p in enumerate(parent) if p >= 0]
    return compress(TreeDecomposition(bags, edges))


def compress(td: TreeDecomposition) -> TreeDecomposition:
    """Contract tree edges whose one bag contains the other."""
    bags = list(td.bags)
    edges = [tuple(e) for e in td.edges]
    alive = set(range(len(bags)))
    changed = True
    while changed:
        changed = False
        for idx, (a, b) in enumerate(edges):
            if bags[a] <= bags[b]:
                keep, drop = b, a
            elif bags[b] <= bags[a]:
                keep, drop = a, b
            else:
                continue
            edges.pop(idx)
            edges = [(keep if x == drop else x, keep if y == drop else y) for x, y in edges]
            alive.discard(drop)
            changed = True
            break
    relabel = {old: new for new, old in enumerate(sorted(alive))}
    return TreeDecomposition([bags[i] for i in sorted(alive)],
                             sorted((relabel[a], relabel[b]) for a, b in edges))


def heuristic_decomposition(g: UndirectedGraph, strategy: str = "min_fill") -> TreeDecomposition:
    return decomposition_from_order(g, elimination_order(g, strategy))


def exact_treewidth_small(g: UndirectedGraph, budget: SolveBudget | None = None) -> tuple[int, TreeDecomposition]:
    """Treewidth by branch and bound over elimination orders.

    A prefix of the order is identified with the set ``S`` it eliminates; the
    degree of ``v`` when eliminated after ``S`` is the number of vertices
    outside ``S + v`` reachable from ``v`` through ``S``.  Prefix sets are
    memoised with the best width seen so far.
    """
    budget = budget or SolveBudget(max_nodes_expanded=5_000_000)
    n = g.n
    if n == 0:
        return -1, TreeDecomposition([], [])
    if n > budget.max_vertices:
        raise BudgetExceeded(f"{n} vertices exceed max_vertices={budget.max_vertices}")
    adj = g.adj_mask
    full = (1 << n) - 1
    best_order = min((elimination_order(g, s) for s in ("min_fill", "min_degree")),
                     key=lambda o: order_width(g, o))
    ub = order_width(g, best_order)
    memo: dict[int, int] = {}
    nodes = 0

    def q_size(s: int, v: int) -> int:
        seen = 1 << v
        frontier = seen
        out = 0
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= adj[u]
            nxt &= ~seen
            seen |= nxt
            out |= nxt & ~s
            frontier = nxt & s
        return out.bit_count()

    def search(s: int, width: int, prefix: list[int]):
        nonlocal ub, best_order, nodes
        nodes += 1
        if nodes > budget.max_nodes_expanded:
            raise BudgetExceeded("treewidth search budget exceeded")
        if s == full:
            if width < ub:
                ub = width
                best_order = list(prefix)
            return
        remaining = (full & ~s).bit_count()
        # no vertex left can have more than remaining - 1 neighbours
        if remaining - 1 <= width:
            if width < ub:
                ub = width
                best_order = prefix + iter_bits(full & ~s)
            return
        if memo.get(s, n + 1) <= width:
            return
        memo[s] = width
        for v in iter_bits(full & ~s):
            w = max(width, q_size(s, v))
            if w < ub:
                prefix.append(v)
                search(s | (1 << v), w, prefix)
                prefix.pop()

    search(0, -1, [])
    td = decomposition_from_order(g, best_order)
    return td.width, td


# ---------------------------------------------------------------------------
# nice decompositions

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: tuple[int, ...]
    vertex: int | None
    children: tuple[int, ...]


@dataclass
class NiceTreeDecomposition:
    nodes: list[NiceNode]
    root: int | None

    @property
    def width(self) -> int:
        return max((len(nd.bag) for nd in self.nodes), default=0) - 1

    def post_order(self) -> list[int]:
        if self.root is None:
            return []
        out = []
        stack = [(self.root, False)]
        while stack:
            t, done = stack.pop()
            if done:
                out.append(t)
                continue
            stack.append((t, True))
            for c in reversed(self.nodes[t].children):
                stack.append((c, False))
        return out

    def forget_order(self) -> list[int]:
        """Forgotten vertices in post-order of their forget nodes."""
        return [self.nodes[t].vertex for t in self.post_order()
                if self.nodes[t].kind == FORGET]

    def as_tree_decomposition(self) -> TreeDecomposition:
        bags = [frozenset(nd.bag) for nd in self.nodes]
        edges = [(t, c) for t, nd in enumerate(self.nodes) for c in nd.children]
        return TreeDecomposition(bags, edges)


def make_nice(td: TreeDecomposition, g: UndirectedGraph) -> NiceTreeDecomposition:
    """Nice decomposition of the same width with an empty root bag.

    The input tree is rooted at node 0.  Each child is connected to its
    parent through a chain that first forgets ``X_child - X_parent`` and then
    introduces ``X_parent - X_child``; nodes with several children become a
    left-deep chain of joins.
    """
    ok, report = validate_decomposition(g, td)
    if not ok:
        raise InvalidDecomposition(report)
    nodes: list[NiceNode] = []

    def add(kind, bag, vertex, children) -> int:
        nodes.append(NiceNode(kind, tuple(sorted(bag)), vertex, tuple(children)))
        return len(nodes) - 1

    if not td.bags:
        return NiceTreeDecomposition([], None)
    adj = td.neighbours()
    parent = {0: None}
    order = []
    stack = [0]
    while stack:
        a = stack.pop()
        order.append(a)
        for b in sorted(adj[a], reverse=True):
            if b not in parent:
                parent[b] = a
                stack.append(b)
    tops: dict[int, int | None] = {}
    for a in reversed(order):
        bag = set(td.bags[a])
        subs = []
        for b in sorted(x for x in adj[a] if parent.get(x) == a):
            top = tops[b]
            if top is None:
                continue
            cur = set(nodes[top].bag)
            for v in sorted(cur - bag):
                cur.discard(v)
                top = add(FORGET, cur, v, [top])
            for v in sorted(bag - cur):
                cur.add(v)
                top = add(INTRODUCE, cur, v, [top])
            subs.append(top)
        if not subs:
            if not bag:
                tops[a] = None
                continue
            verts = sorted(bag)
            cur = {verts[0]}
            top = add(LEAF, cur, None, [])
            for v in verts[1:]:
                cur.add(v)
                top = add(INTRODUCE, cur, v, [top])
            subs.append(top)
        top = subs[0]
        for other in subs[1:]:
            top = add(JOIN, bag, None, [top, other])
        tops[a] = top
    top = tops[0]
    cur = set(nodes[top].bag)
    for v in sorted(cur):
        cur.discard(v)
        top = add(FORGET, cur, v, [top])
    return NiceTreeDecomposition(nodes, top)


def validate_nice(nd: NiceTreeDecomposition, g: UndirectedGraph) -> tuple[bool, str | None]:
    if nd.root is None:
        return (True, None) if g.n == 0 else (False, "empty decomposition")
    if nd.nodes[nd.root].bag:
        return False, "root bag is not empty"
    reached = nd.post_order()
    if len(reached) != len(nd.nodes) or len(set(reached)) != len(nd.nodes):
        return False, "nodes are not a single rooted tree"
    for t, node in enumerate(nd.nodes):
        bag = set(node.bag)
        kids = [set(nd.nodes[c].bag) for c in node.children]
        if node.kind == LEAF:
            good = not kids and len(bag) == 1
        elif node.kind == INTRODUCE:
            good = len(kids) == 1 and node.vertex not in kids[0] and bag == kids[0] | {node.vertex}
        elif node.kind == FORGET:
            good = len(kids) == 1 and node.vertex in kids[0] and bag == kids[0] - {node.vertex}
        elif node.kind == JOIN:
            good = len(kids) == 2 and kids[0] == bag and kids[1] == bag
        else:
            good = False
        if not good:
            return False, f"node {t} is not a valid {node.kind} node"
    return validate_decomposition(g, nd.as_tree_decomposition())


def nice_decomposition(g: UndirectedGraph, strategy: str = "min_fill") -> NiceTreeDecomposition:
    return make_nice(heuristic_decomposition(g, strategy), g)


# ---------------------------------------------------------------------------
# PACE-style text (1-based bag ids and vertices) and the kinds sidecar


def format_pace(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, start=1):
        lines.append(" ".join(["b", str(i), *(str(v + 1) for v in sorted(bag))]))
    for a, b in td.edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def parse_pace(text: str) -> tuple[TreeDecomposition, int]:
    bags: dict[int, frozenset[int]] = {}
    edges = []
    header = None
    for raw in text.splitlines():
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "td":
                raise InvalidDecomposition(f"bad header {raw!r}")
            header = tuple(int(x) for x in parts[2:])
        elif parts[0] == "b":
            bags[int(parts[1])] = frozenset(int(v) - 1 for v in parts[2:])
        else:
            a, b = int(parts[0]), int(parts[1])
            edges.append((a - 1, b - 1))
    if header is None:
        raise InvalidDecomposition("missing 's td' header")
    nbags, _, n = header
    if sorted(bags) != list(range(1, nbags + 1)):
        raise InvalidDecomposition("bag ids must be 1..#bags")
    return TreeDecomposition([bags[i] for i in range(1, nbags + 1)], edges), n


def nice_kinds_json(nd: NiceTreeDecomposition) -> dict:
    return {
        "root": nd.root,
        "nodes": [{"kind": x.kind, "vertex": x.vertex, "children": list(x.children)}
                  for x in nd.nodes],
    }


def nice_from_parts(td: TreeDecomposition, kinds: dict) -> NiceTreeDecomposition:
    nodes = []
    for bag, meta in zip(td.bags, kinds["nodes"]):
        nodes.append(NiceNode(meta["kind"], tuple(sorted(bag)), meta["vertex"],
                              tuple(meta["children"])))
    if len(nodes) != len(td.bags):
        raise InvalidDecomposition("kinds sidecar does not match the bags")
    return NiceTreeDecomposition(nodes, kinds["root"])


def dumps_nice(nd: NiceTreeDecomposition, n: int) -> tuple[str, str]:
    return format_pace(nd.as_tree_decomposition(), n), json.dumps(nice_kinds_json(nd), indent=2)

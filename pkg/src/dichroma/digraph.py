"""Digraph and undirected graph value types, family generators and basic
structural primitives.

Vertices are always the dense integers ``0..n-1``.  Both graph types keep an
adjacency list (for neighbour iteration) and an integer bitmask per vertex
(for O(1) membership and cheap set algebra on small vertex sets).
"""

from __future__ import annotations

import random
from collections import deque
from typing import Iterable, Sequence


class GraphFormatError(ValueError):
    """Raised on malformed graph input (loops, duplicates, bad endpoints)."""


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def iter_bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    return list(_bits(mask))


class Digraph:
    """Loopless simple digraph on ``0..n-1``.  Immutable once built.

    Opposite arcs ``(u, v)`` and ``(v, u)`` may both be present.
    """

    __slots__ = ("n", "arcs", "out", "inn", "out_mask", "in_mask")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphFormatError("vertex count must be nonnegative")
        arcs = frozenset((int(u), int(v)) for u, v in arcs)
        out_mask = [0] * n
        in_mask = [0] * n
        for u, v in arcs:
            if u == v:
                raise GraphFormatError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"arc ({u},{v}) out of range for n={n}")
            out_mask[u] |= 1 << v
            in_mask[v] |= 1 << u
        self.n = n
        self.arcs = arcs
        self.out_mask = tuple(out_mask)
        self.in_mask = tuple(in_mask)
        self.out = tuple(tuple(iter_bits(m)) for m in out_mask)
        self.inn = tuple(tuple(iter_bits(m)) for m in in_mask)

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self):
        return f"Digraph(n={self.n}, m={len(self.arcs)})"

    def __len__(self):
        return self.n

    def has_arc(self, u: int, v: int) -> bool:
        return (self.out_mask[u] >> v) & 1 == 1

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def out_degree(self, v: int) -> int:
        return len(self.out[v])

    def in_degree(self, v: int) -> int:
        return len(self.inn[v])

    def reverse(self) -> Digraph:
        return Digraph(self.n, ((v, u) for u, v in self.arcs))


class UndirectedGraph:
    """Simple undirected graph on ``0..n-1``; edges are stored as ``(min, max)``."""

    __slots__ = ("n", "edges", "adj", "adj_mask")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphFormatError("vertex count must be nonnegative")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphFormatError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u},{v}) out of range for n={n}")
            norm.add((u, v) if u < v else (v, u))
        adj_mask = [0] * n
        for u, v in norm:
            adj_mask[u] |= 1 << v
            adj_mask[v] |= 1 << u
        self.n = n
        self.edges = frozenset(norm)
        self.adj_mask = tuple(adj_mask)
        self.adj = tuple(tuple(iter_bits(m)) for m in adj_mask)

    def __eq__(self, other):
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"UndirectedGraph(n={self.n}, m={len(self.edges)})"

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adj_mask[u] >> v) & 1 == 1

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


class VertexColoring:
    """A coloring with entries in ``1..k``."""

    __slots__ = ("k", "colors")

    def __init__(self, colors: Sequence[int], k: int | None = None):
        colors = tuple(int(c) for c in colors)
        if k is None:
            k = max(colors, default=0)
        if any(c < 1 or c > k for c in colors):
            raise ValueError(f"colors must lie in 1..{k}")
        self.k = k
        self.colors = colors

    def __len__(self):
        return len(self.colors)

    def __getitem__(self, v):
        return self.colors[v]

    def __iter__(self):
        return iter(self.colors)

    def __eq__(self, other):
        if not isinstance(other, VertexColoring):
            return NotImplemented
        return self.k == other.k and self.colors == other.colors

    def __repr__(self):
        return f"VertexColoring(k={self.k}, colors={list(self.colors)})"

    def used(self) -> set[int]:
        return set(self.colors)

    def classes(self) -> list[list[int]]:
        """Vertices of each color ``1..k`` (index 0 is color 1)."""
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.colors):
            out[c - 1].append(v)
        return out


# ---------------------------------------------------------------------------
# generators

FAMILIES = (
    "dipath",
    "dicycle",
    "complete_symmetric",
    "transitive_tournament",
    "erdos_renyi_digraph",
    "random_orientation",
)


def make_family(kind: str, n: int, p: float = 0.5, seed: int = 0) -> Digraph:
    """Build one of the standard digraph families on ``n`` vertices.

    The random kinds draw from :class:`random.Random` seeded with ``seed``;
    pairs are visited in lexicographic order, so the arc set is stable for a
    given ``(kind, n, p, seed)`` under CPython's Mersenne Twister.
    ``random_orientation`` includes each unordered pair with probability
    ``p`` and then picks a direction with a fair coin.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    if kind == "dipath":
        return Digraph(n, ((i, i + 1) for i in range(n - 1)))
    if kind == "dicycle":
        if n < 2:
            raise ValueError("a dicycle needs at least 2 vertices")
        return Digraph(n, ((i, (i + 1) % n) for i in range(n)))
    if kind == "complete_symmetric":
        return Digraph(n, ((u, v) for u in range(n) for v in range(n) if u != v))
    if kind == "transitive_tournament":
        return Digraph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))
    rng = random.Random(seed)
    if kind == "erdos_renyi_digraph":
        arcs = [(u, v) for u in range(n) for v in range(n)
                if u != v and rng.random() < p]
        return Digraph(n, arcs)
    if kind == "random_orientation":
        arcs = []
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < p:
                    arcs.append((u, v) if rng.random() < 0.5 else (v, u))
        return Digraph(n, arcs)
    raise ValueError(f"unknown family {kind!r}")


def dipath(n: int) -> Digraph:
    return make_family("dipath", n)


def dicycle(n: int) -> Digraph:
    return make_family("dicycle", n)


def complete_symmetric(n: int) -> Digraph:
    return make_family("complete_symmetric", n)


def transitive_tournament(n: int) -> Digraph:
    return make_family("transitive_tournament", n)


def path_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> UndirectedGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return UndirectedGraph(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def random_graph(n: int, p: float, seed: int = 0) -> UndirectedGraph:
    rng = random.Random(seed)
    return UndirectedGraph(n, ((u, v) for u in range(n) for v in range(u + 1, n)
                               if rng.random() < p))


def random_bipartite(n: int, p: float, seed: int = 0) -> UndirectedGraph:
    """Random bipartite graph: vertex ``v`` is on side ``v % 2``."""
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if (u - v) % 2 and rng.random() < p]
    return UndirectedGraph(n, edges)


# ---------------------------------------------------------------------------
# conversions


def symmetric_of(g: UndirectedGraph) -> Digraph:
    """Replace every edge by two opposite arcs."""
    arcs = []
    for u, v in g.edges:
        arcs.append((u, v))
        arcs.append((v, u))
    return Digraph(g.n, arcs)


def underlying(d: Digraph) -> UndirectedGraph:
    return UndirectedGraph(d.n, d.arcs)


def is_oriented(d: Digraph) -> bool:
    """True iff no pair of vertices carries both arcs."""
    return not any(d.in_mask[u] & d.out_mask[u] for u in range(d.n))


def induced_subdigraph(d: Digraph, s: Iterable[int]) -> tuple[Digraph, list[int]]:
    """Subdigraph induced by ``s`` relabelled to ``0..|s|-1``.

    Returns the digraph and the list mapping new labels to old ones.
    """
    verts = sorted(set(s))
    index = {v: i for i, v in enumerate(verts)}
    arcs = [(index[u], index[v]) for u, v in d.arcs if u in index and v in index]
    return Digraph(len(verts), arcs), verts


def arc_subdigraph(d: Digraph, keep: Iterable[tuple[int, int]]) -> Digraph:
    keep = set(keep)
    if not keep <= d.arcs:
        raise ValueError("not a subset of the arcs")
    return Digraph(d.n, keep)


# ---------------------------------------------------------------------------
# structure


def strong_components(d: Digraph) -> list[list[int]]:
    """Strongly connected components, each sorted, in reverse topological
    order of the condensation (sink components first).

    Iterative Tarjan; roots are tried in increasing vertex order, so output is
    deterministic.
    """
    n = d.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            succ = d.out[v]
            if i < len(succ):
                work[-1] = (v, i + 1)
                w = succ[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def acyclic_check(d: Digraph, s: Iterable[int] | None = None) -> list[int] | None:
    """Topological order of the subdigraph induced by ``s`` or ``None``.

    Kahn's algorithm with a min-heap-free FIFO seeded in increasing order, so
    a transitive tournament yields ``sorted(s)``.
    """
    members = list(range(d.n)) if s is None else sorted(set(s))
    mask = 0
    for v in members:
        mask |= 1 << v
    indeg = {v: (d.in_mask[v] & mask).bit_count() for v in members}
    queue = deque(v for v in members if indeg[v] == 0)
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in _bits(d.out_mask[v] & mask):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if len(order) != len(members):
        return None
    return order


def is_acyclic(d: Digraph) -> bool:
    return acyclic_check(d) is not None


def bipartition(g: UndirectedGraph) -> tuple[list[int], list[int]] | None:
    """2-coloring by BFS; each component's smallest vertex goes to side A."""
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    a = [v for v in range(g.n) if side[v] == 0]
    b = [v for v in range(g.n) if side[v] == 1]
    return a, b


def reachable_from(d: Digraph, v: int, mask: int | None = None) -> int:
    """Bitmask of vertices reachable from ``v`` (including ``v``), staying
    inside ``mask`` when given."""
    if mask is None:
        mask = (1 << d.n) - 1
    seen = 1 << v
    frontier = seen
    while frontier:
        nxt = 0
        for u in _bits(frontier):
            nxt |= d.out_mask[u]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def max_degree_bound(d: Digraph) -> int:
    """``1 + min(max out-degree, max in-degree)``, an upper bound on the
    dichromatic number."""
    if d.n == 0:
        return 0
    return 1 + min(max(map(len, d.out)), max(map(len, d.inn)))

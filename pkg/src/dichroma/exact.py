"""Exact dichromatic / chromatic numbers by backtracking, monochromatic-cycle
search and certificate handling."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .digraph import (
    Digraph,
    UndirectedGraph,
    VertexColoring,
    acyclic_check,
    iter_bits,
    max_degree_bound,
    strong_components,
    symmetric_of,
    underlying,
)


class BudgetExceeded(RuntimeError):
    """The search hit a limit before it could settle the question."""


@dataclass(frozen=True)
class SolveBudget:
    max_vertices: int = 400
    max_nodes_expanded: int = 200_000_000
    time_limit: float | None = None  # seconds

    def __post_init__(self):
        if self.max_vertices <= 0 or self.max_nodes_expanded <= 0:
            raise ValueError("budget limits must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time limit must be positive")


DEFAULT_BUDGET = SolveBudget()


@dataclass
class ColoringCertificate:
    coloring: VertexColoring
    class_orders: list[list[int]] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.coloring.k

    def to_json(self) -> dict:
        return {
            "k": self.coloring.k,
            "colors": list(self.coloring.colors),
            "class_orders": [list(o) for o in self.class_orders],
        }

    @classmethod
    def from_json(cls, obj) -> ColoringCertificate:
        return cls(VertexColoring(obj["colors"], int(obj["k"])),
                   [list(map(int, o)) for o in obj["class_orders"]])


def _as_colors(d: Digraph, f) -> tuple[int, ...]:
    colors = tuple(f.colors) if isinstance(f, VertexColoring) else tuple(f)
    if len(colors) != d.n:
        raise ValueError(f"coloring has length {len(colors)}, digraph has {d.n} vertices")
    return colors


def _cycle_in(d: Digraph, mask: int) -> list[int] | None:
    """Some dicycle inside the vertex set ``mask``, by iterative DFS."""
    state = {}  # 1 = on stack, 2 = done
    for root in iter_bits(mask):
        if root in state:
            continue
        path = [root]
        iters = [iter(iter_bits(d.out_mask[root] & mask))]
        state[root] = 1
        while iters:
            w = next(iters[-1], None)
            if w is None:
                state[path.pop()] = 2
                iters.pop()
                continue
            s = state.get(w)
            if s == 1:
                return path[path.index(w):]
            if s is None:
                state[w] = 1
                path.append(w)
                iters.append(iter(iter_bits(d.out_mask[w] & mask)))
    return None


def find_monochromatic_cycle(d: Digraph, f) -> list[int] | None:
    """A dicycle all of whose vertices share a color, or ``None`` when ``f``
    is an acyclic coloring."""
    colors = _as_colors(d, f)
    masks: dict[int, int] = {}
    for v, c in enumerate(colors):
        masks[c] = masks.get(c, 0) | (1 << v)
    for c in sorted(masks):
        cyc = _cycle_in(d, masks[c])
        if cyc is not None:
            return cyc
    return None


def class_orders_for(d: Digraph, f) -> list[list[int]]:
    """Topological order of each color class ``1..k``; raises if a class is
    cyclic."""
    colors = _as_colors(d, f)
    k = max(colors, default=0)
    if isinstance(f, VertexColoring):
        k = f.k
    orders = []
    for c in range(1, k + 1):
        order = acyclic_check(d, [v for v in range(d.n) if colors[v] == c])
        if order is None:
            raise ValueError(f"color class {c} is not acyclic")
        orders.append(order)
    return orders


def make_certificate(d: Digraph, f) -> ColoringCertificate:
    coloring = f if isinstance(f, VertexColoring) else VertexColoring(f)
    return ColoringCertificate(coloring, class_orders_for(d, coloring))


def verify_certificate(d: Digraph, cert: ColoringCertificate) -> tuple[bool, str, list[int] | None]:
    """Check a certificate; returns ``(ok, reason, monochromatic cycle)``."""
    colors = cert.coloring.colors
    if len(colors) != d.n:
        return False, f"coloring covers {len(colors)} vertices, digraph has {d.n}", None
    cyc = find_monochromatic_cycle(d, colors)
    if cyc is not None:
        return False, "monochromatic cycle", cyc
    if len(cert.class_orders) != cert.coloring.k:
        return False, "need one class order per color", None
    seen = set()
    for c, order in enumerate(cert.class_orders, start=1):
        pos = {}
        for i, v in enumerate(order):
            if not 0 <= v < d.n or colors[v] != c or v in seen:
                return False, f"class order {c} lists vertex {v} wrongly", None
            seen.add(v)
            pos[v] = i
        for u in order:
            for w in d.out[u]:
                if w in pos and pos[w] < pos[u]:
                    return False, f"class order {c} has backward arc ({u},{w})", None
    if len(seen) != d.n:
        return False, "class orders do not cover every vertex", None
    return True, "ok", None


def is_acyclic_coloring(d: Digraph, f) -> bool:
    return find_monochromatic_cycle(d, f) is None


def is_proper_coloring(g: UndirectedGraph, f) -> bool:
    colors = tuple(f)
    return all(colors[u] != colors[v] for u, v in g.edges)


# ---------------------------------------------------------------------------
# exact search


def _max_clique(adj: Sequence[int], cand: int) -> int:
    """Size of a maximum clique inside ``cand`` (bitmask graph)."""
    best = 0

    def grow(size: int, cand: int):
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + cand.bit_count() <= best:
            return
        while cand:
            if size + cand.bit_count() <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            grow(size + 1, cand & adj[v])

    grow(0, cand)
    return best


def digon_masks(d: Digraph) -> list[int]:
    """Per vertex, the neighbours joined to it by arcs in both directions."""
    return [d.out_mask[v] & d.in_mask[v] for v in range(d.n)]


def dichromatic_lower_bound(d: Digraph) -> int:
    """Max of the strong-component bound (2 if any component is nontrivial)
    and the largest clique of opposite-arc pairs."""
    if d.n == 0:
        return 0
    lb = 2 if any(len(c) > 1 for c in strong_components(d)) else 1
    return max(lb, _max_clique(digon_masks(d), (1 << d.n) - 1))


class _Search:
    """Backtracking over colors ``1..k``.

    ``order="dsatur"`` picks next the uncolored vertex with most distinct
    colors among its digon neighbours (ties: static order) and fails as soon
    as some vertex has every color blocked by digons; ``order="static"``
    walks the fixed order (underlying degree descending, then index).
    """

    def __init__(self, d: Digraph, budget: SolveBudget, check: str = "incremental",
                 order: str = "dsatur"):
        if check not in ("incremental", "full"):
            raise ValueError(check)
        if order not in ("dsatur", "static"):
            raise ValueError(order)
        self.d = d
        self.budget = budget
        self.full = check == "full"
        self.dynamic = order == "dsatur"
        ug = underlying(d)
        self.order = sorted(range(d.n), key=lambda v: (-ug.degree(v), v))
        self.rank = [0] * d.n
        for i, v in enumerate(self.order):
            self.rank[v] = i
        self.digon = digon_masks(d)
        self.scc_mask = [0] * d.n
        for comp in strong_components(d):
            m = 0
            for v in comp:
                m |= 1 << v
            for v in comp:
                self.scc_mask[v] = m
        self.nodes = 0
        self.deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit

    def closes_cycle(self, v: int, cmask: int) -> bool:
        """Would adding ``v`` to the color class ``cmask`` create a dicycle?"""
        d = self.d
        if self.full:
            return _cycle_in(d, cmask | (1 << v)) is not None
        region = cmask & self.scc_mask[v]
        targets = d.in_mask[v] & region
        if not targets:
            return False
        frontier = d.out_mask[v] & region
        seen = frontier
        while frontier:
            if frontier & targets:
                return True
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= d.out_mask[u]
            nxt &= region & ~seen
            seen |= nxt
            frontier = nxt
        return False

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes_expanded:
            raise BudgetExceeded(f"expanded more than {self.budget.max_nodes_expanded} nodes")
        if self.deadline is not None and not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"time limit {self.budget.time_limit}s exceeded")

    def run(self, k: int) -> list[int] | None:
        n = self.d.n
        colors = [0] * n
        cmask = [0] * (k + 1)
        # blocked[v]: bitmask of colors carried by digon neighbours of v
        blocked = [0] * n
        counts = [[0] * (k + 1) for _ in range(n)] if self.dynamic else None
        full_block = ((1 << (k + 1)) - 1) & ~1
        digon = self.digon
        rank = self.rank
        static = self.order

        def pick(i: int) -> int:
            if not self.dynamic:
                return static[i]
            best = -1
            best_key = None
            for v in static:
                if colors[v]:
                    continue
                key = (blocked[v].bit_count(), -rank[v])
                if best_key is None or key > best_key:
                    best, best_key = v, key
            return best

        def assign(v: int, c: int) -> bool:
            colors[v] = c
            cmask[c] |= 1 << v
            ok = True
            if self.dynamic:
                cbit = 1 << c
                for w in iter_bits(digon[v]):
                    cnt = counts[w]
                    cnt[c] += 1
                    if cnt[c] == 1:
                        blocked[w] |= cbit
                        if not colors[w] and blocked[w] == full_block:
                            ok = False
            return ok

        def unassign(v: int, c: int):
            colors[v] = 0
            cmask[c] &= ~(1 << v)
            if self.dynamic:
                cbit = 1 << c
                for w in iter_bits(digon[v]):
                    cnt = counts[w]
                    cnt[c] -= 1
                    if cnt[c] == 0:
                        blocked[w] &= ~cbit

        def place(i: int, used: int) -> bool:
            if i == n:
                return True
            self.tick()
            v = pick(i)
            # unused colors are interchangeable: open at most one new color
            for c in range(1, min(used + 1, k) + 1):
                if (blocked[v] >> c) & 1 or self.closes_cycle(v, cmask[c]):
                    continue
                ok = assign(v, c)
                if ok and place(i + 1, max(used, c)):
                    return True
                unassign(v, c)
            return False

        return colors if place(0, 0) else None


def decide_exact(d: Digraph, k: int, budget: SolveBudget = DEFAULT_BUDGET,
                 check: str = "incremental", order: str = "dsatur") -> list[int] | None:
    """An acyclic coloring with at most ``k`` colors, or ``None``."""
    if d.n > budget.max_vertices:
        raise BudgetExceeded(f"{d.n} vertices exceed max_vertices={budget.max_vertices}")
    if d.n == 0:
        return []
    if k < 1:
        return None
    return _Search(d, budget, check, order).run(k)


def dichromatic_exact(d: Digraph, budget: SolveBudget = DEFAULT_BUDGET,
                      check: str = "incremental", order: str = "dsatur",
                      lower_bound: str = "clique") -> tuple[int, ColoringCertificate]:
    """Dichromatic number of ``d`` with a verified certificate.

    Candidates run upward from a lower bound to ``1 + min(max outdeg, max
    indeg)``.  ``lower_bound="scc"`` starts at 1 or 2 only; ``"clique"`` also
    uses the largest clique of opposite-arc pairs.
    """
    if d.n > budget.max_vertices:
        raise BudgetExceeded(f"{d.n} vertices exceed max_vertices={budget.max_vertices}")
    if d.n == 0:
        return 0, ColoringCertificate(VertexColoring([], 0), [])
    search = _Search(d, budget, check, order)
    if lower_bound == "clique":
        lb = dichromatic_lower_bound(d)
    elif lower_bound == "scc":
        lb = 2 if any(len(c) > 1 for c in strong_components(d)) else 1
    else:
        raise ValueError(lower_bound)
    for k in range(lb, max_degree_bound(d) + 1):
        colors = search.run(k)
        if colors is not None:
            cert = make_certificate(d, VertexColoring(colors, k))
            return k, cert
    raise AssertionError("degree bound violated")  # pragma: no cover


def chromatic_exact(g: UndirectedGraph, budget: SolveBudget = DEFAULT_BUDGET) -> tuple[int, ColoringCertificate]:
    return dichromatic_exact(symmetric_of(g), budget)


def verify_acyclic_homomorphism(G: Digraph, H: Digraph, f: Sequence[int]) -> bool:
    """Arc-preserving map whose fibers induce acyclic subdigraphs of ``G``.

    Arcs whose endpoints share an image are allowed; that is what makes a
    k-coloring an acyclic homomorphism into the complete digraph on k vertices.
    """
    f = list(f)
    if len(f) != G.n:
        raise ValueError("map must be total on V(G)")
    for x in f:
        if not 0 <= x < H.n:
            raise ValueError(f"image {x} outside V(H)")
    for u, v in G.arcs:
        if f[u] != f[v] and not H.has_arc(f[u], f[v]):
            return False
    return find_monochromatic_cycle(G, f) is None

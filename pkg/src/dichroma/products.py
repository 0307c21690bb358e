"""Cartesian, direct, strong and lexicographic products of digraphs.

Product vertex ``(u, x)`` is flattened to ``u * nH + x``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .digraph import Digraph, UndirectedGraph, symmetric_of, underlying

DEFAULT_VERTEX_BUDGET = 100_000


class ProductKind(str, enum.Enum):
    CARTESIAN = "cartesian"
    DIRECT = "direct"
    STRONG = "strong"
    LEXICOGRAPHIC = "lexicographic"


class ProductTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ProductIndex:
    nG: int
    nH: int

    def encode(self, u: int, x: int) -> int:
        if not (0 <= u < self.nG and 0 <= x < self.nH):
            raise IndexError((u, x))
        return u * self.nH + x

    def decode(self, w: int) -> tuple[int, int]:
        if not 0 <= w < self.nG * self.nH:
            raise IndexError(w)
        return divmod(w, self.nH)

    def to_json(self) -> dict:
        return {"nG": self.nG, "nH": self.nH}

    @classmethod
    def from_json(cls, obj) -> ProductIndex:
        return cls(int(obj["nG"]), int(obj["nH"]))


def product_arc(kind: ProductKind, G: Digraph, H: Digraph, u, x, v, y) -> bool:
    """Arc predicate ``(u,x) -> (v,y)``, straight from the definitions."""
    g_arc = G.has_arc(u, v)
    h_arc = H.has_arc(x, y)
    if kind is ProductKind.CARTESIAN:
        return (u == v and h_arc) or (g_arc and x == y)
    if kind is ProductKind.DIRECT:
        return g_arc and h_arc
    if kind is ProductKind.STRONG:
        return (u == v and h_arc) or (g_arc and x == y) or (g_arc and h_arc)
    if kind is ProductKind.LEXICOGRAPHIC:
        return (u == v and h_arc) or g_arc
    raise ValueError(kind)


def product(kind, G: Digraph, H: Digraph, *, vertex_budget: int = DEFAULT_VERTEX_BUDGET):
    """The ``kind`` product of ``G`` and ``H`` together with its index map."""
    kind = ProductKind(kind)
    idx = ProductIndex(G.n, H.n)
    if G.n * H.n > vertex_budget:
        raise ProductTooLarge(f"{G.n}*{H.n} product vertices exceed budget {vertex_budget}")
    nH = H.n
    arcs = []
    # cartesian / strong / lexicographic share the "same first coordinate" arcs
    if kind is not ProductKind.DIRECT:
        for u in range(G.n):
            for x, y in H.arcs:
                arcs.append((u * nH + x, u * nH + y))
    if kind in (ProductKind.CARTESIAN, ProductKind.STRONG):
        for u, v in G.arcs:
            for x in range(nH):
                arcs.append((u * nH + x, v * nH + x))
    if kind in (ProductKind.DIRECT, ProductKind.STRONG):
        for u, v in G.arcs:
            for x, y in H.arcs:
                arcs.append((u * nH + x, v * nH + y))
    if kind is ProductKind.LEXICOGRAPHIC:
        for u, v in G.arcs:
            for x in range(nH):
                for y in range(nH):
                    arcs.append((u * nH + x, v * nH + y))
    return Digraph(G.n * H.n, arcs), idx


def undirected_product(kind, G: UndirectedGraph, H: UndirectedGraph, *,
                       vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> UndirectedGraph:
    d, _ = product(kind, symmetric_of(G), symmetric_of(H), vertex_budget=vertex_budget)
    return underlying(d)

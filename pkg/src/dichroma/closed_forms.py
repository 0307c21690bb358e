"""Explicit colorings of products and closed-form dichromatic numbers.

Every construction returns a :class:`VertexColoring` of the product digraph
built by :func:`dichroma.products.product` (vertex ``(u, x)`` is
``u * nH + x``), so results can be checked with the exact solver.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import ceil

from .digraph import (
    Digraph,
    UndirectedGraph,
    VertexColoring,
    bipartition,
    dicycle,
    is_acyclic,
    is_oriented,
    underlying,
)
from .exact import DEFAULT_BUDGET, SolveBudget, dichromatic_exact, find_monochromatic_cycle
from .products import ProductKind, product
from .treewidth import InvalidDecomposition, NiceTreeDecomposition, validate_nice


class NotAcyclicColoring(ValueError):
    pass


def _require_acyclic(d: Digraph, f: VertexColoring, name: str):
    if len(f) != d.n:
        raise ValueError(f"{name}: coloring length {len(f)} != {d.n}")
    cyc = find_monochromatic_cycle(d, f)
    if cyc is not None:
        raise NotAcyclicColoring(f"{name} has a monochromatic dicycle {cyc}")


def cartesian_max_coloring(G: Digraph, H: Digraph, f1: VertexColoring, f2: VertexColoring) -> VertexColoring:
    """``(u, x) -> (f1(u) + f2(x)) mod k`` with ``k = max(k1, k2)``, shifted
    back into ``1..k``."""
    _require_acyclic(G, f1, "f1")
    _require_acyclic(H, f2, "f2")
    k = max(f1.k, f2.k, 1)
    colors = [(f1[u] + f2[x]) % k + 1 for u in range(G.n) for x in range(H.n)]
    return VertexColoring(colors, k)


def direct_projection_coloring(G: Digraph, H: Digraph, f: VertexColoring) -> VertexColoring:
    """Color ``(u, x)`` by ``f(u)``."""
    _require_acyclic(G, f, "f")
    return VertexColoring([f[u] for u in range(G.n) for _ in range(H.n)], f.k)


def lex_pair_coloring(G: Digraph, H: Digraph, fG: VertexColoring, fH: VertexColoring) -> VertexColoring:
    """Color ``(u, x)`` by the pair ``(fG(u), fH(x))``, numbered row-major."""
    _require_acyclic(G, fG, "fG")
    _require_acyclic(H, fH, "fH")
    colors = [(fG[u] - 1) * fH.k + fH[x] for u in range(G.n) for x in range(H.n)]
    return VertexColoring(colors, fG.k * fH.k)


# ---------------------------------------------------------------------------
# dicycle lexicographic products


def lex_dicycle_value(n: int, k: int) -> int:
    """Dichromatic number of the lexicographic product of the n-dicycle with
    a digraph of dichromatic number ``k``: ``k + ceil(k / (n - 1))``."""
    if n < 2:
        raise ValueError("dicycle length must be at least 2")
    if k < 1:
        raise ValueError("k must be positive")
    return k + -(-k // (n - 1))


@dataclass(frozen=True)
class LexDicycleParams:
    n: int
    k: int
    k_prime: int
    s: int
    exclusion_sets: tuple[frozenset[int], ...]

    @classmethod
    def build(cls, n: int, k: int) -> LexDicycleParams:
        kp = lex_dicycle_value(n, k)
        s = kp - k
        # consecutive blocks of length s, wrapping around 1..k'
        sets = tuple(frozenset(((i * s + j) % kp) + 1 for j in range(s)) for i in range(n))
        params = cls(n, k, kp, s, sets)
        if frozenset().union(*sets) != frozenset(range(1, kp + 1)):
            raise AssertionError("exclusion sets do not cover every color")
        return params


def lex_dicycle_coloring(n: int, H: Digraph, fH: VertexColoring) -> VertexColoring:
    """Acyclic coloring of ``C_n[H]`` with ``lex_dicycle_value(n, fH.k)`` colors.

    Copy ``i`` of ``H`` avoids the colors of ``M_i`` by renaming ``fH``'s
    colors, in ascending order, onto the remaining ones.  Because the ``M_i``
    cover every color, no color appears in all copies, and that suffices for
    acyclicity.
    """
    _require_acyclic(H, fH, "fH")
    params = LexDicycleParams.build(n, fH.k)
    colors = []
    for i in range(n):
        allowed = [c for c in range(1, params.k_prime + 1) if c not in params.exclusion_sets[i]]
        colors.extend(allowed[fH[x] - 1] for x in range(H.n))
    return VertexColoring(colors, params.k_prime)


def missing_color_witness(n: int, nH: int, f: VertexColoring) -> dict[int, int]:
    """For each color, some copy of ``H`` in ``C_n[H]`` that does not use it.

    Raises ``ValueError`` if a color shows up in every copy.
    """
    used = [set(f.colors[i * nH:(i + 1) * nH]) for i in range(n)]
    out = {}
    for c in range(1, f.k + 1):
        for i in range(n):
            if c not in used[i]:
                out[c] = i
                break
        else:
            raise ValueError(f"color {c} appears in every copy")
    return out


# ---------------------------------------------------------------------------
# dicycle strong products


@dataclass(frozen=True)
class StrongDicycleValue:
    value: int
    closed_form: bool


def strong_dicycle_value(m: int, n: int, budget: SolveBudget = DEFAULT_BUDGET) -> StrongDicycleValue:
    """Dichromatic number of the strong product of two dicycles.

    Closed form except for ``C_m x C_2`` with ``m >= 4``, which is solved
    exactly and returned with ``closed_form=False``.
    """
    if m < 2 or n < 2:
        raise ValueError("dicycles need at least 2 vertices")
    m, n = max(m, n), min(m, n)
    if (m, n) == (2, 2):
        return StrongDicycleValue(4, True)
    if m == 3:
        return StrongDicycleValue(3, True)
    if n >= 3:
        return StrongDicycleValue(2, True)
    d, _ = product(ProductKind.STRONG, dicycle(m), dicycle(n))
    k, _ = dichromatic_exact(d, budget)
    return StrongDicycleValue(k, False)


class ClosedFormWarning(UserWarning):
    """A construction departed from the textbook formula."""


def strong_dicycle_coloring(m: int, n: int) -> VertexColoring:
    """Two-coloring of ``C_m x C_n`` (strong) for ``m >= 4``, ``n >= 3``.

    With 1-based ``(i, j)`` and ``n >= 4``: color 1 on ``(2,3), (3,2),
    (3,3)``, on row 1 from column 3 on and on column 1 from row 3 on; color 2
    elsewhere.

    For ``n = 3`` that rule makes row 3 a monochromatic triangle, so a
    different pattern is used (rows ``112`` up to row ``m - 3``, then ``121``,
    ``122``, ``221``) and a :class:`ClosedFormWarning` is issued.  That
    pattern is checked on every call.
    """
    if m < 4 or n < 3:
        raise ValueError("needs m >= 4 and n >= 3")
    if n == 3:
        warnings.warn("the row/column rule fails for n = 3 (row 3 is a monochromatic "
                      "dicycle); using the verified 112/121/122/221 pattern",
                      ClosedFormWarning, stacklevel=2)
        rows = ["112"] * (m - 3) + ["121", "122", "221"]
        f = VertexColoring([int(ch) for row in rows for ch in row], 2)
        d, _ = product(ProductKind.STRONG, dicycle(m), dicycle(3))
        cyc = find_monochromatic_cycle(d, f)
        if cyc is not None:  # pragma: no cover
            raise AssertionError(f"n = 3 pattern failed for m = {m}: {cyc}")
        return f
    return strong_dicycle_formula_coloring(m, n)


def strong_dicycle_formula_coloring(m: int, n: int) -> VertexColoring:
    """The row/column rule for any ``m, n >= 3``, with no fallback."""
    colors = []
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            one = ((i, j) in {(2, 3), (3, 2), (3, 3)}
                   or (i == 1 and j >= 3) or (j == 1 and i >= 3))
            colors.append(1 if one else 2)
    return VertexColoring(colors, 2)


def bipartite_odd_strong_coloring(H: UndirectedGraph, n: int) -> VertexColoring:
    """Proper 5-coloring of ``H x C_{2n+1}`` (undirected strong product) for
    bipartite ``H`` with an edge and ``n >= 2``.

    Cycle positions ``j = 1..2n+1``.  Side A gets 1, 2, 3 then alternates
    4, 5; side B gets 3, 4, 5 then alternates 1, 2.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not H.edges:
        raise ValueError("H must have at least one edge")
    parts = bipartition(H)
    if parts is None:
        raise ValueError("H is not bipartite")
    side_a = set(parts[0])
    length = 2 * n + 1
    a_head, b_head = (1, 2, 3), (3, 4, 5)
    colors = []
    for u in range(H.n):
        for j in range(1, length + 1):
            if j <= 3:
                c = a_head[j - 1] if u in side_a else b_head[j - 1]
            elif j % 2 == 0:
                c = 4 if u in side_a else 1
            else:
                c = 5 if u in side_a else 2
            colors.append(c)
    return VertexColoring(colors, 5)


def dag_product_value(kind, G: Digraph, H: Digraph, chi_G: int) -> int | None:
    """Value forced when ``H`` is acyclic: ``chi_G`` for the cartesian, strong
    and lexicographic products and 1 for the direct product; ``None`` when
    ``H`` has a dicycle."""
    kind = ProductKind(kind)
    if H.n == 0 or not is_acyclic(H):
        return None
    if kind is ProductKind.DIRECT:
        return 1 if G.n else 0
    return chi_G


# ---------------------------------------------------------------------------
# orientations of bounded treewidth


def orientation_bound(width: int) -> int:
    return ceil((width + 1) / 2)


def orientation_tw_coloring(D: Digraph, nd: NiceTreeDecomposition) -> VertexColoring:
    """Acyclic coloring of an oriented graph with at most
    ``ceil((w + 1) / 2)`` colors, ``w`` the width of ``nd``.

    Vertices are colored in reverse forget order.  When a vertex is colored,
    its colored neighbours all sit in the bag below its forget node, so there
    are at most ``w`` of them.  It takes the smallest color shared with at
    most one colored neighbour, opening a new color only if every color in use
    appears on two or more neighbours.
    """
    if not is_oriented(D):
        raise ValueError("digraph has a 2-cycle; expected an oriented graph")
    ok, report = validate_nice(nd, underlying(D))
    if not ok:
        raise InvalidDecomposition(report)
    colors = [0] * D.n
    used = 0
    for v in reversed(nd.forget_order()):
        count = [0] * (used + 2)
        for w in (*D.out[v], *D.inn[v]):
            count[colors[w]] += 1
        choice = next((c for c in range(1, used + 1) if count[c] <= 1), used + 1)
        used = max(used, choice)
        colors[v] = choice
    return VertexColoring(colors, used)

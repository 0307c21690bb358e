"""Property harness: every structural claim about products, the dynamic
program and the explicit colorings, checked over seeded random corpora.

Each check builds its own corpus from ``random.Random(f"{seed}:{name}")``,
so checks are independent of each other and of execution order, and a given
seed always yields the same instances and the same report (apart from the
elapsed times).
"""

from __future__ import annotations

import json
import random
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .closed_forms import (
    ClosedFormWarning,
    bipartite_odd_strong_coloring,
    cartesian_max_coloring,
    dag_product_value,
    direct_projection_coloring,
    lex_dicycle_coloring,
    lex_dicycle_value,
    lex_pair_coloring,
    missing_color_witness,
    orientation_bound,
    orientation_tw_coloring,
    strong_dicycle_coloring,
    strong_dicycle_formula_coloring,
    strong_dicycle_value,
)
from .digraph import (
    Digraph,
    complete_graph,
    complete_symmetric,
    cycle_graph,
    dicycle,
    is_acyclic,
    make_family,
    path_graph,
    random_bipartite,
    random_graph,
    symmetric_of,
    underlying,
)
from .exact import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    SolveBudget,
    chromatic_exact,
    dichromatic_exact,
    find_monochromatic_cycle,
    is_proper_coloring,
    make_certificate,
    verify_certificate,
)
from .fpt import (
    INTRODUCE,
    fpt_dichromatic,
    is_feasible,
    reconstruction_path,
    run_dp,
    meets_state_invariants,
)
from .fpt_dense import represented_key, run_dense, subtree_vertices, true_tables
from .products import ProductKind, product, undirected_product
from .treewidth import NiceTreeDecomposition, nice_decomposition

DEFAULT_SEED = 2024

# instance counts per check; the keys double as the valid ``sizes`` overrides
DEFAULT_SIZES = {
    "lex_dicycle_formula": 30,
    "product_pairs": 50,
    "direct_min_equality": 30,
    "bipartite_odd_strong": 20,
    "fpt_vs_exact": 200,
    "representation_soundness": 20,
    "orientation_treewidth": 50,
    "dense_vs_sparse": 10,
    "state_count_bound": 200,
    "open_questions": 20,
}

STRONG_DICYCLE_PAIRS = [(2, 2), (3, 2), (3, 3)] + [
    (m, n) for m in range(4, 9) for n in range(3, 7) if m * n <= 24]


@dataclass
class CheckResult:
    name: str
    claim: str
    instances: int = 0
    failures: int = 0
    elapsed: float = 0.0
    details: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    informational: bool = False

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, msg: str):
        self.failures += 1
        if len(self.details) < 20:
            self.details.append(msg)

    def to_json(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


class _Ctx:
    def __init__(self, seed: int, sizes: dict, budget: SolveBudget):
        self.seed = seed
        self.sizes = {**DEFAULT_SIZES, **(sizes or {})}
        self.budget = budget

    def rng(self, name: str) -> random.Random:
        return random.Random(f"{self.seed}:{name}")

    def chi(self, d: Digraph) -> int:
        return dichromatic_exact(d, self.budget)[0]


# ---------------------------------------------------------------------------
# corpora


def random_digraph(rng: random.Random, lo: int, hi: int, ps=(0.2, 0.35, 0.5)) -> Digraph:
    n = rng.randint(lo, hi)
    return make_family("erdos_renyi_digraph", n, rng.choice(ps), seed=rng.randrange(2 ** 31))


def random_dag(rng: random.Random, lo: int, hi: int) -> Digraph:
    n = rng.randint(lo, hi)
    p = rng.choice((0.3, 0.5, 0.8))
    return Digraph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_oriented(rng: random.Random, lo: int, hi: int, ps=(0.3, 0.5, 0.8)) -> Digraph:
    n = rng.randint(lo, hi)
    return make_family("random_orientation", n, rng.choice(ps), seed=rng.randrange(2 ** 31))


def fpt_corpus(rng: random.Random, count: int, max_n: int = 12, max_width: int = 4,
               min_n: int = 3) -> list[tuple[str, Digraph, NiceTreeDecomposition]]:
    """Seeded mix of random digraphs, orientations and symmetric digraphs of
    random graphs, keeping those whose heuristic width is at most
    ``max_width``.  Every fourth instance is symmetric."""
    out = []
    while len(out) < count:
        i = len(out)
        n = rng.randint(min_n, max_n)
        s = rng.randrange(2 ** 31)
        kind = ("erdos_renyi_digraph", "random_orientation", "erdos_renyi_digraph", "symmetric")[i % 4]
        if kind == "symmetric":
            p = rng.choice((0.25, 0.4, 0.55))
            G = symmetric_of(random_graph(n, p, seed=s))
        elif kind == "random_orientation":
            p = rng.choice((0.3, 0.5, 0.7))
            G = make_family(kind, n, p, seed=s)
        else:
            p = rng.choice((0.15, 0.25, 0.35))
            G = make_family(kind, n, p, seed=s)
        nd = nice_decomposition(underlying(G))
        if nd.width > max_width:
            continue
        out.append((f"{kind}(n={n},p={p},seed={s})", G, nd))
    return out


def _label(d: Digraph) -> str:
    return f"n={d.n} arcs={d.sorted_arcs()}"


# ---------------------------------------------------------------------------
# checks


def check_strong_dicycles(ctx: _Ctx) -> CheckResult:
    r = CheckResult("strong_dicycles",
                    "strong products of two dicycles: 4 for (2,2), 3 for m=3 and n in {2,3}, "
                    "2 for m>=4, n>=3; exact and tree-decomposition solvers both")
    for m, n in STRONG_DICYCLE_PAIRS:
        r.instances += 1
        d, _ = product(ProductKind.STRONG, dicycle(m), dicycle(n))
        want = strong_dicycle_value(m, n).value
        k_exact, cert = dichromatic_exact(d, ctx.budget)
        k_fpt, cert_fpt = fpt_dichromatic(d)
        r.data[f"{m}x{n}"] = {"exact": k_exact, "fpt": k_fpt, "closed_form": want}
        if not (k_exact == k_fpt == want):
            r.fail(f"C{m} x C{n}: exact {k_exact}, fpt {k_fpt}, expected {want}")
        for c in (cert, cert_fpt):
            if not verify_certificate(d, c)[0]:
                r.fail(f"C{m} x C{n}: certificate does not verify")
    return r


def check_strong_dicycle_values(ctx: _Ctx) -> CheckResult:
    r = CheckResult("strong_dicycle_values",
                    "closed-form (or computed) value and the explicit 2-coloring "
                    "agree with the exact solver for m*n <= 24")
    n3_formula = {}
    for m in range(2, 13):
        for n in range(2, m + 1):
            if m * n > 24:
                continue
            r.instances += 1
            d, _ = product(ProductKind.STRONG, dicycle(m), dicycle(n))
            val = strong_dicycle_value(m, n, ctx.budget)
            k = ctx.chi(d)
            if val.value != k:
                r.fail(f"({m},{n}): value {val.value} vs exact {k}")
            if not val.closed_form:
                r.data[f"computed {m}x{n}"] = val.value
            if m >= 4 and n >= 3:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", ClosedFormWarning)
                    f = strong_dicycle_coloring(m, n)
                if find_monochromatic_cycle(d, f) is not None or len(f.used()) != 2:
                    r.fail(f"({m},{n}): 2-coloring invalid")
                if n == 3:
                    cyc = find_monochromatic_cycle(d, strong_dicycle_formula_coloring(m, n))
                    n3_formula[f"{m}x3"] = cyc
    r.data["row_column_rule_at_n3"] = {k: ("fails: " + str(v) if v else "ok") for k, v in n3_formula.items()}
    return r


def check_lex_dicycle_formula(ctx: _Ctx) -> CheckResult:
    r = CheckResult("lex_dicycle_formula",
                    "lexicographic product of the n-dicycle with H has value "
                    "k + ceil(k/(n-1)), k the value of H; explicit coloring attains it")
    rng = ctx.rng(r.name)
    for _ in range(ctx.sizes["lex_dicycle_formula"]):
        H = random_digraph(rng, 1, 4, (0.3, 0.5, 0.7))
        k = ctx.chi(H)
        _, fH = dichromatic_exact(H, ctx.budget)
        for n in (2, 3, 4, 5):
            r.instances += 1
            d, _ = product(ProductKind.LEXICOGRAPHIC, dicycle(n), H)
            want = lex_dicycle_value(n, k)
            got = ctx.chi(d)
            if got != want:
                r.fail(f"n={n}, H {_label(H)}: exact {got}, formula {want}")
            f = lex_dicycle_coloring(n, H, fH.coloring)
            cert = make_certificate(d, f)
            if not verify_certificate(d, cert)[0] or len(f.used()) != want:
                r.fail(f"n={n}, H {_label(H)}: explicit coloring invalid or not using {want} colors")
            try:
                missing_color_witness(n, H.n, f)
            except ValueError as exc:
                r.fail(f"n={n}, H {_label(H)}: {exc}")
    return r


def _pairs(ctx: _Ctx, name: str):
    rng = ctx.rng(name)
    return [(random_digraph(rng, 1, 5), random_digraph(rng, 1, 5))
            for _ in range(ctx.sizes["product_pairs"])]


def check_cartesian_max(ctx: _Ctx) -> CheckResult:
    r = CheckResult("cartesian_max", "cartesian product value is the max of the factors'")
    for G, H in _pairs(ctx, r.name):
        r.instances += 1
        kG, cG = dichromatic_exact(G, ctx.budget)
        kH, cH = dichromatic_exact(H, ctx.budget)
        d, _ = product(ProductKind.CARTESIAN, G, H)
        k = ctx.chi(d)
        if k != max(kG, kH):
            r.fail(f"{_label(G)} / {_label(H)}: {k} != max({kG},{kH})")
        f = cartesian_max_coloring(G, H, cG.coloring, cH.coloring)
        if find_monochromatic_cycle(d, f) is not None or f.k != max(kG, kH):
            r.fail(f"{_label(G)} / {_label(H)}: sum-mod coloring invalid")
    return r


def check_direct_min_bound(ctx: _Ctx) -> CheckResult:
    r = CheckResult("direct_min_bound", "direct product value is at most the min of the factors'")
    for G, H in _pairs(ctx, r.name):
        r.instances += 1
        kG, cG = dichromatic_exact(G, ctx.budget)
        kH, _ = dichromatic_exact(H, ctx.budget)
        d, _ = product(ProductKind.DIRECT, G, H)
        k = ctx.chi(d)
        if k > min(kG, kH):
            r.fail(f"{_label(G)} / {_label(H)}: {k} > min({kG},{kH})")
        f = direct_projection_coloring(G, H, cG.coloring)
        if find_monochromatic_cycle(d, f) is not None:
            r.fail(f"{_label(G)} / {_label(H)}: projection coloring invalid")
    return r


def check_direct_min_equality(ctx: _Ctx) -> CheckResult:
    r = CheckResult("direct_min_equality",
                    "direct product value equals the min when the min is at most 2; "
                    "the direct product of two dicycles has value 2")
    rng = ctx.rng(r.name)
    done = 0
    while done < ctx.sizes["direct_min_equality"]:
        G, H = random_digraph(rng, 1, 5), random_digraph(rng, 1, 5)
        kG, kH = ctx.chi(G), ctx.chi(H)
        if min(kG, kH) > 2:
            continue
        done += 1
        r.instances += 1
        d, _ = product(ProductKind.DIRECT, G, H)
        k = ctx.chi(d)
        if k != min(kG, kH):
            r.fail(f"{_label(G)} / {_label(H)}: {k} != min({kG},{kH})")
    for m in range(2, 13):
        for n in range(2, 13):
            if m * n > 24:
                continue
            r.instances += 1
            d, _ = product(ProductKind.DIRECT, dicycle(m), dicycle(n))
            k = ctx.chi(d)
            if k != 2:
                r.fail(f"C{m} x C{n} (direct): {k} != 2")
    return r


def check_lex_product_bound(ctx: _Ctx) -> CheckResult:
    r = CheckResult("lex_product_bound",
                    "lexicographic product value is at most the product of the factors'")
    for G, H in _pairs(ctx, r.name):
        r.instances += 1
        kG, cG = dichromatic_exact(G, ctx.budget)
        kH, cH = dichromatic_exact(H, ctx.budget)
        d, _ = product(ProductKind.LEXICOGRAPHIC, G, H)
        k = ctx.chi(d)
        if k > kG * kH:
            r.fail(f"{_label(G)} / {_label(H)}: {k} > {kG}*{kH}")
        f = lex_pair_coloring(G, H, cG.coloring, cH.coloring)
        if find_monochromatic_cycle(d, f) is not None:
            r.fail(f"{_label(G)} / {_label(H)}: pair coloring invalid")
    return r


def check_lex_complete_reduction(ctx: _Ctx) -> CheckResult:
    r = CheckResult("lex_complete_reduction",
                    "G[H] has the same value as G[complete symmetric digraph on k vertices], "
                    "k the value of H")
    for G, H in _pairs(ctx, r.name):
        r.instances += 1
        kH = ctx.chi(H)
        d1, _ = product(ProductKind.LEXICOGRAPHIC, G, H)
        d2, _ = product(ProductKind.LEXICOGRAPHIC, G, complete_symmetric(kH))
        a, b = ctx.chi(d1), ctx.chi(d2)
        if a != b:
            r.fail(f"{_label(G)} / {_label(H)}: {a} != {b}")
    return r


def check_dag_factor(ctx: _Ctx) -> CheckResult:
    r = CheckResult("dag_factor",
                    "with an acyclic second factor: cartesian, strong and lexicographic "
                    "keep the first factor's value, direct gives 1")
    rng = ctx.rng(r.name)
    for _ in range(ctx.sizes["product_pairs"]):
        G, H = random_digraph(rng, 1, 5), random_dag(rng, 1, 5)
        kG = ctx.chi(G)
        for kind in ProductKind:
            r.instances += 1
            want = dag_product_value(kind, G, H, kG)
            d, _ = product(kind, G, H)
            got = ctx.chi(d)
            if want is None or got != want:
                r.fail(f"{kind.value} {_label(G)} / {_label(H)}: {got} vs {want}")
    # a factor with a dicycle gets no closed value
    r.instances += 1
    if dag_product_value("cartesian", dicycle(3), dicycle(2), 2) is not None:
        r.fail("value returned for a cyclic second factor")
    return r


def check_bipartite_odd_strong(ctx: _Ctx) -> CheckResult:
    r = CheckResult("bipartite_odd_strong",
                    "bipartite H with an edge: H strong C_{2n+1} has chromatic number 5 "
                    "for n >= 2; K2 strong C3 needs 6")
    for name, H in (("K2", complete_graph(2)), ("P3", path_graph(3)), ("C4", cycle_graph(4))):
        r.instances += 1
        g = undirected_product("strong", H, cycle_graph(5))
        k, _ = chromatic_exact(g, ctx.budget)
        if k != 5:
            r.fail(f"{name} x C5: {k} != 5")
    r.instances += 1
    k, _ = chromatic_exact(undirected_product("strong", complete_graph(2), cycle_graph(3)), ctx.budget)
    if k != 6:
        r.fail(f"K2 x C3: {k} != 6")
    rng = ctx.rng(r.name)
    done = 0
    while done < ctx.sizes["bipartite_odd_strong"]:
        nv = rng.randint(2, 8)
        H = random_bipartite(nv, rng.choice((0.3, 0.5, 0.8)), seed=rng.randrange(2 ** 31))
        if not H.edges:
            continue
        done += 1
        for n in (2, 3):
            r.instances += 1
            g = undirected_product("strong", H, cycle_graph(2 * n + 1))
            f = bipartite_odd_strong_coloring(H, n)
            if not is_proper_coloring(g, f) or len(f.used()) != 5:
                r.fail(f"H n={nv} edges={H.sorted_edges()} n={n}: 5-coloring invalid")
            if g.n <= 15:
                k, _ = chromatic_exact(g, ctx.budget)
                if k != 5:
                    r.fail(f"H edges={H.sorted_edges()} n={n}: chromatic number {k} != 5")
    return r


def check_fpt_vs_exact(ctx: _Ctx) -> CheckResult:
    r = CheckResult("fpt_vs_exact",
                    "the tree-decomposition program returns the exact value, with a "
                    "verified certificate (n <= 12, width <= 4, symmetric digraphs included)")
    corpus = fpt_corpus(ctx.rng("fpt_corpus"), ctx.sizes["fpt_vs_exact"])
    r.data["symmetric"] = sum(1 for lab, _, _ in corpus if lab.startswith("symmetric"))
    r.data["max_width"] = max(nd.width for _, _, nd in corpus)
    for lab, G, nd in corpus:
        r.instances += 1
        k_exact, _ = dichromatic_exact(G, ctx.budget)
        k_fpt, cert = fpt_dichromatic(G, nd)
        if k_exact != k_fpt:
            r.fail(f"{lab}: fpt {k_fpt} vs exact {k_exact}")
        if not verify_certificate(G, cert)[0] or cert.k != k_fpt:
            r.fail(f"{lab}: fpt certificate does not verify")
    return r


def check_representation_soundness(ctx: _Ctx) -> CheckResult:
    r = CheckResult("representation_soundness",
                    "every stored state is acyclic, transitive and contains the minimal "
                    "representation; introduce states are feasible; states on the "
                    "reconstruction path equal the searched reachability digraphs")
    corpus = fpt_corpus(ctx.rng(r.name), ctx.sizes["representation_soundness"], max_n=8)
    states = 0
    for lab, G, nd in corpus:
        r.instances += 1
        k, _ = dichromatic_exact(G, ctx.budget)
        verts = subtree_vertices(nd)
        # one k past the value as well, to exercise fuller tables
        for kk in range(1, k + 2):
            run = run_dp(G, nd, kk)
            for t, table in run.tables.items():
                node = nd.nodes[t]
                for colors, rows in table.states:
                    states += 1
                    if not meets_state_invariants(G, table.bag, colors, rows):
                        r.fail(f"{lab} k={kk} node {t}: necessary conditions violated")
                    if node.kind == INTRODUCE and not (
                            is_feasible(G, table.bag, node.vertex, rows)
                            and is_feasible(G, table.bag, node.vertex, rows, colors)):
                        r.fail(f"{lab} k={kk} node {t}: infeasible state")
            if run.decided:
                color = dict(enumerate(run.coloring))
                for t, key in reconstruction_path(nd, run.tables).items():
                    vs = sorted(verts[t])
                    want = represented_key(G, nd.nodes[t].bag, vs, color)
                    if want != key:
                        r.fail(f"{lab} k={kk} node {t}: stored {key} vs searched {want}")
            if run.decided != (kk >= k):
                r.fail(f"{lab} k={kk}: decision {run.decided}, exact value {k}")
    r.data["states_checked"] = states
    return r


def check_orientation_treewidth(ctx: _Ctx) -> CheckResult:
    r = CheckResult("orientation_treewidth",
                    "oriented graphs of width w take at most ceil((w+1)/2) colors; "
                    "the greedy forget-order coloring attains it")
    rng = ctx.rng(r.name)
    for i in range(ctx.sizes["orientation_treewidth"]):
        n = rng.randint(4, 14)
        p = (0.3, 0.6)[i % 2]
        D = make_family("random_orientation", n, p, seed=rng.randrange(2 ** 31))
        nd = nice_decomposition(underlying(D))
        r.instances += 1
        f = orientation_tw_coloring(D, nd)
        bound = orientation_bound(nd.width)
        if find_monochromatic_cycle(D, f) is not None or len(f.used()) > bound:
            r.fail(f"{_label(D)}: {len(f.used())} colors, bound {bound}")
    return r


def dense_corpus(rng: random.Random, count: int):
    out = []
    while len(out) < count:
        n = rng.randint(3, 6)
        G = make_family(("erdos_renyi_digraph", "random_orientation")[len(out) % 2], n,
                        rng.choice((0.3, 0.45, 0.6)), seed=rng.randrange(2 ** 31))
        nd = nice_decomposition(underlying(G))
        if nd.width <= 3 and G.arcs:
            out.append((_label(G), G, nd))
    return out


def check_dense_vs_sparse(ctx: _Ctx) -> CheckResult:
    r = CheckResult("dense_vs_sparse",
                    "the node characterisations evaluated densely over all (f, H) agree "
                    "with forward propagation on exact-representation states and on "
                    "every decision, k <= 3")
    extra = total = mono_mismatch = 0
    for lab, G, nd in dense_corpus(ctx.rng(r.name), ctx.sizes["dense_vs_sparse"]):
        for k in (1, 2, 3):
            r.instances += 1
            sparse = run_dp(G, nd, k, symmetry_breaking=False).tables
            dense = run_dense(G, nd, k)
            mono = run_dense(G, nd, k, mono_witness=True)
            truth = true_tables(G, nd, k)
            for t, table in sparse.items():
                s = set(table.states)
                total += len(s)
                bad = []
                if s != truth[t]:
                    bad.append("sparse differs from brute force")
                if dense[t] & truth[t] != s:
                    bad.append("dense differs on exact-representation states")
                if not s <= dense[t]:
                    bad.append("dense misses a sparse state")
                if bad:
                    r.fail(f"{lab} k={k} node {t}: " + "; ".join(bad))
                extra += len(dense[t] - s)
                mono_mismatch += mono[t] != s
            dec = bool(sparse[nd.root].states)
            if bool(dense[nd.root]) != dec or bool(mono[nd.root]) != dec:
                r.fail(f"{lab} k={k}: decisions differ")
    r.data["sparse_states"] = total
    r.data["dense_only_states"] = extra
    r.data["same_color_witness_table_mismatches"] = mono_mismatch
    return r


def check_state_count_bound(ctx: _Ctx) -> CheckResult:
    r = CheckResult("state_count_bound",
                    "per-node state counts stay within k^b * 3^(b(b-1)/2)")
    corpus = fpt_corpus(ctx.rng("fpt_corpus"), ctx.sizes["state_count_bound"])
    worst = 0.0
    for lab, G, nd in corpus:
        rows = []
        fpt_dichromatic(G, nd, on_run=lambda run: rows.extend(run.stats(nd)))
        for row in rows:
            r.instances += 1
            if row["states"] > row["bound"]:
                r.fail(f"{lab} k={row['k']} node {row['node']}: {row['states']} > {row['bound']}")
            worst = max(worst, row["states"] / row["bound"])
    r.data["max_fill_ratio"] = round(worst, 6)
    return r


def check_open_questions(ctx: _Ctx) -> CheckResult:
    """Data only: direct products of oriented graphs against the min, and
    dicycle strong/lexicographic products against the value of the other
    factor."""
    r = CheckResult("open_questions", "data only; nothing asserted", informational=True)
    rng = ctx.rng(r.name)
    eq = 0
    oriented = []
    for _ in range(ctx.sizes["open_questions"]):
        G, H = random_oriented(rng, 2, 5), random_oriented(rng, 2, 5)
        d, _ = product(ProductKind.DIRECT, G, H)
        k, kmin = ctx.chi(d), min(ctx.chi(G), ctx.chi(H))
        eq += k == kmin
        if k != kmin:
            oriented.append({"G": G.sorted_arcs(), "nG": G.n, "H": H.sorted_arcs(), "nH": H.n,
                             "product": k, "min": kmin})
    r.data["oriented_direct_equal_min"] = f"{eq}/{ctx.sizes['open_questions']}"
    r.data["oriented_direct_below_min"] = oriented
    rows = []
    tight = 0
    for _ in range(ctx.sizes["open_questions"]):
        H = random_digraph(rng, 1, 4, (0.3, 0.5, 0.7))
        kH = ctx.chi(H)
        for n in (2, 3, 4):
            strong = ctx.chi(product(ProductKind.STRONG, dicycle(n), H)[0])
            lex = ctx.chi(product(ProductKind.LEXICOGRAPHIC, H, dicycle(n))[0])
            bound = lex_dicycle_value(n, kH)
            tight += strong == bound
            rows.append({"kH": kH, "n": n, "strong": strong, "H_of_dicycle": lex, "bound": bound})
            r.instances += 1
    r.data["dicycle_factor_values"] = rows
    r.data["strong_attains_lex_bound"] = f"{tight}/{len(rows)}"
    return r


CHECKS = [
    check_strong_dicycles,
    check_strong_dicycle_values,
    check_lex_dicycle_formula,
    check_cartesian_max,
    check_direct_min_bound,
    check_direct_min_equality,
    check_lex_product_bound,
    check_lex_complete_reduction,
    check_dag_factor,
    check_bipartite_odd_strong,
    check_fpt_vs_exact,
    check_representation_soundness,
    check_orientation_treewidth,
    check_dense_vs_sparse,
    check_state_count_bound,
    check_open_questions,
]
CHECK_NAMES = [fn.__name__[len("check_"):] for fn in CHECKS]


def run_check(name: str, seed: int = DEFAULT_SEED, sizes: dict | None = None,
              budget: SolveBudget = DEFAULT_BUDGET) -> CheckResult:
    fn = CHECKS[CHECK_NAMES.index(name)]
    ctx = _Ctx(seed, sizes, budget)
    t0 = time.perf_counter()
    try:
        res = fn(ctx)
    except BudgetExceeded as exc:
        res = CheckResult(name, "budget exceeded")
        res.fail(f"budget exceeded: {exc}")
    res.elapsed = round(time.perf_counter() - t0, 3)
    return res


def check_theorems(seed: int = DEFAULT_SEED, sizes: dict | None = None, *,
                   only=None, jobs: int = 1, budget: SolveBudget = DEFAULT_BUDGET) -> dict:
    """Run the checks (all, or those named in ``only``) and return the report.
    With ``jobs > 1`` checks run in worker processes; the report order is
    the fixed order of :data:`CHECK_NAMES` either way."""
    names = [n for n in CHECK_NAMES if only is None or n in only]
    unknown = set(only or ()) - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            futures = [ex.submit(run_check, n, seed, sizes, budget) for n in names]
            results = [f.result() for f in futures]
    else:
        results = [run_check(n, seed, sizes, budget) for n in names]
    return {
        "seed": seed,
        "sizes": {**DEFAULT_SIZES, **(sizes or {})},
        "checks": [res.to_json() for res in results],
        "passed": all(res.passed for res in results),
    }


def format_table(report: dict) -> str:
    lines = [f"{'check':<26} {'instances':>9} {'failures':>8} {'seconds':>8}  status"]
    for c in report["checks"]:
        status = "info" if c["informational"] else ("PASS" if c["passed"] else "FAIL")
        lines.append(f"{c['name']:<26} {c['instances']:>9} {c['failures']:>8} {c['elapsed']:>8.2f}  {status}")
    lines.append("all checks passed" if report["passed"] else "SOME CHECKS FAILED")
    return "\n".join(lines)


def strip_timings(report: dict) -> dict:
    """The report without elapsed times, for determinism comparisons."""
    out = json.loads(json.dumps(report))
    for c in out["checks"]:
        c.pop("elapsed", None)
    return out
